//! Exact dense linear algebra over the rationals, for the small systems that
//! arise here (triangular change of basis, Fomin-Stanley membership solves,
//! duality matrix inversion). Results that are asserted integral are checked,
//! never rounded.

use crate::error::{Error, Result};
use num::rational::BigRational;
use num::{BigInt, One, Zero};

pub type Rat = BigRational;

pub fn rat(x: i64) -> Rat {
    BigRational::from_integer(BigInt::from(x))
}

pub fn rat_to_i64(x: &Rat) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::LinearSolve(format!("non-integral value {x}")));
    }
    i64::try_from(x.to_integer()).map_err(|_| Error::LinearSolve("value exceeds i64".into()))
}

/// Row-reduces `mat` (in place) augmented with `rhs` columns; returns the
/// pivot column per eliminated row.
fn eliminate(mat: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let rows = mat.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        // Pick the structurally simplest nonzero pivot to limit growth.
        let Some(p) = (row..rows)
            .filter(|&r| !mat[r][col].is_zero())
            .min_by_key(|&r| mat[r].iter().filter(|x| !x.is_zero()).count())
        else {
            continue;
        };
        mat.swap(row, p);
        let inv = mat[row][col].recip();
        for x in mat[row].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for r in 0..rows {
            if r != row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                let (head, tail) = mat.split_at_mut(r.max(row));
                let (src, dst) = if r > row {
                    (&head[row], &mut tail[0])
                } else {
                    (&tail[0], &mut head[r])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &f * s;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

/// Solves `M x = b` for each right-hand side column, requiring the solution
/// to exist and be unique (full column rank, consistent).
pub fn solve_unique(m: &[Vec<Rat>], rhs: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let nrhs = rhs.len();
    let mut aug: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row = m[r].clone();
            row.extend(rhs.iter().map(|b| b[r].clone()));
            row
        })
        .collect();
    let pivots = eliminate(&mut aug, cols);
    if pivots.len() != cols {
        return Err(Error::LinearSolve(format!(
            "system is underdetermined: rank {} < {} unknowns",
            pivots.len(),
            cols
        )));
    }
    // Consistency: rows beyond the rank must have zero RHS.
    for row in aug.iter().skip(pivots.len()) {
        if row.iter().any(|x| !x.is_zero()) {
            return Err(Error::LinearSolve("inconsistent system".into()));
        }
    }
    let mut out = vec![vec![Rat::zero(); cols]; nrhs];
    for (r, &pc) in pivots.iter().enumerate() {
        for k in 0..nrhs {
            out[k][pc] = aug[r][cols + k].clone();
        }
    }
    Ok(out)
}

/// Exact inverse of a square integer matrix; errors when singular.
pub fn invert(m: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>> {
    let n = m.len();
    let mr: Vec<Vec<Rat>> = m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let rhs: Vec<Vec<Rat>> = (0..n)
        .map(|k| (0..n).map(|r| if r == k { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    let cols = solve_unique(&mr, &rhs)?;
    // solve_unique returns columns of the inverse; transpose into rows.
    Ok((0..n)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect())
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    eliminate(&mut a, cols).len()
}

/// Determinant sign check helper for unimodularity assertions.
pub fn det(m: &[Vec<i64>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(col, p);
            d = -d;
        }
        d *= a[col][col].clone();
        let inv = a[col][col].recip();
        let pivot = a[col].clone();
        for line in a.iter_mut().skip(col + 1) {
            if !line[col].is_zero() {
                let f = line[col].clone() * &inv;
                for (x, s) in line.iter_mut().zip(&pivot).skip(col) {
                    *x -= &f * s;
                }
            }
        }
    }
    d
}
