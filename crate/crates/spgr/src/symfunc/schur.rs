//! Schur Q- and P-functions in the monomial basis.
//!
//! `schur_q` enumerates marked shifted tableaux; `schur_q_by_recursion`
//! recomputes the same functions from one-row pieces through the two-row
//! relation and the Pfaffian expansion, and the two are cross-checked in
//! tests. Non-strict shapes give zero.

use crate::error::Result;
use crate::symfunc::msym::MSym;
use crate::symfunc::partition::{partitions, Partition};
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

/// `Q_r = sum over partitions lambda of r of 2^len(lambda) m_lambda`
/// (the one-row Schur Q-function; `Q_0 = 1`).
pub fn q_one_row(r: u32) -> MSym {
    if r == 0 {
        return MSym::one();
    }
    MSym::from_terms(
        partitions(r)
            .into_iter()
            .map(|p| {
                let pow = 1i64 << p.len();
                (p, pow)
            }),
    )
}

/// One-row Schur P-function `P_r = Q_r / 2` for `r >= 1`.
pub fn p_one_row(r: u32) -> MSym {
    if r == 0 {
        return MSym::one();
    }
    q_one_row(r).div_exact(2).expect("Q_r has even coefficients")
}

static Q_CACHE: LazyLock<Mutex<HashMap<Partition, MSym>>> = LazyLock::new(Default::default);

/// `Q_lambda` for strict `lambda` via marked shifted tableaux; zero for
/// non-strict shapes.
pub fn schur_q(lambda: &Partition) -> MSym {
    if !lambda.is_strict() {
        return MSym::zero();
    }
    if let Some(hit) = Q_CACHE.lock().unwrap().get(lambda) {
        return hit.clone();
    }
    let out = schur_q_by_tableaux(lambda);
    Q_CACHE
        .lock()
        .unwrap()
        .insert(lambda.clone(), out.clone());
    out
}

/// `P_lambda = Q_lambda / 2^len(lambda)`, integral in the m basis.
pub fn schur_p(lambda: &Partition) -> MSym {
    let q = schur_q(lambda);
    q.div_exact(1i64 << lambda.len())
        .expect("Q_lambda is divisible by 2^len in the m basis")
}

/// Product of one-row P-functions `P_{lambda_1} P_{lambda_2} ...` for an
/// arbitrary partition.
pub fn p_product(lambda: &Partition) -> MSym {
    let mut out = MSym::one();
    for &part in lambda.parts() {
        out = out.mul(&p_one_row(part));
    }
    out
}

/// Expands an element of the Schur-P span by triangular elimination on
/// lexicographically leading monomials; errors on a nonzero residual that
/// cannot be reduced (input outside the span).
pub fn expand_in_schur_p(f: &MSym) -> Result<Vec<(Partition, i64)>> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let mu = rest.leading().expect("nonzero").clone();
        if !mu.is_strict() {
            return Err(crate::error::Error::Domain(format!(
                "leading monomial {mu} is not strict: not in the Schur-P span"
            )));
        }
        let c = rest.coeff(&mu);
        rest.add_scaled(&schur_p(&mu), -c);
        if rest.coeff(&mu) != 0 {
            return Err(crate::error::Error::Domain(format!(
                "elimination stalled at {mu}"
            )));
        }
        out.push((mu, c));
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

/// Marked shifted tableaux of shifted shape `lambda`: entries from the
/// ordered alphabet 1' < 1 < 2' < 2 < ..., rows and columns weakly
/// increasing, at most one `k'` per row and one `k` per column. The
/// coefficient of `m_mu` counts tableaux of content exactly `mu`.
fn schur_q_by_tableaux(lambda: &Partition) -> MSym {
    let d = lambda.size() as usize;
    if d == 0 {
        return MSym::one();
    }
    // Cells in row-major order with (row, col) in the shifted diagram.
    let mut cells = Vec::new();
    for (i, &part) in lambda.parts().iter().enumerate() {
        for j in i..i + part as usize {
            cells.push((i, j));
        }
    }
    let ncols = lambda.first() as usize + lambda.len();
    let mut grid = vec![vec![0u32; ncols]; lambda.len()];
    let mut content = vec![0u32; d + 1];
    let mut out = MSym::zero();

    // Entries are encoded 2v-1 for v' and 2v for v, so the alphabet order is
    // the numeric order on encodings.
    fn fill(
        cells: &[(usize, usize)],
        k: usize,
        d: usize,
        grid: &mut Vec<Vec<u32>>,
        content: &mut Vec<u32>,
        out: &mut MSym,
    ) {
        if k == cells.len() {
            // Record only contents that are partitions read off as the
            // leading segment (the representative monomial of the orbit).
            let mut parts = Vec::new();
            let mut seen_zero = false;
            for &c in content[1..].iter() {
                if c == 0 {
                    seen_zero = true;
                } else {
                    if seen_zero {
                        return;
                    }
                    parts.push(c);
                }
            }
            if parts.windows(2).any(|w| w[0] < w[1]) {
                return;
            }
            out.add_term(
                Partition::new(parts).expect("checked decreasing"),
                1,
            );
            return;
        }
        let (i, j) = cells[k];
        let left = if j > i { grid[i][j - 1] } else { 0 };
        let up = if i > 0 { grid[i - 1][j] } else { 0 };
        let lo = left.max(up).max(1);
        for e in lo..=(2 * d as u32) {
            let primed = e % 2 == 1;
            if e == left && primed {
                continue;
            }
            if e == up && !primed {
                continue;
            }
            let v = e.div_ceil(2) as usize;
            grid[i][j] = e;
            content[v] += 1;
            fill(cells, k + 1, d, grid, content, out);
            content[v] -= 1;
            grid[i][j] = 0;
        }
    }
    fill(&cells, 0, d, &mut grid, &mut content, &mut out);
    out
}

/// Independent route: the two-row relation
/// `Q_(r,s) = Q_r Q_s + 2 sum_{i=1..s} (-1)^i Q_{r+i} Q_{s-i}` extended to
/// longer strict shapes by the Pfaffian first-row expansion.
pub fn schur_q_by_recursion(lambda: &Partition) -> MSym {
    if !lambda.is_strict() {
        return MSym::zero();
    }
    let parts = lambda.parts();
    match parts.len() {
        0 => MSym::one(),
        1 => q_one_row(parts[0]),
        2 => q_two_rows(parts[0], parts[1]),
        _ => {
            let mut padded: Vec<u32> = parts.to_vec();
            if padded.len() % 2 == 1 {
                padded.push(0);
            }
            let mut out = MSym::zero();
            for j in 1..padded.len() {
                let pair = q_two_rows(padded[0], padded[j]);
                let rest: Vec<u32> = padded
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != 0 && t != j)
                    .map(|(_, &p)| p)
                    .filter(|&p| p != 0)
                    .collect();
                let sub = schur_q_by_recursion(&Partition::new(rest).expect("still strict"));
                let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
                out.add_scaled(&pair.mul(&sub), sign);
            }
            out
        }
    }
}

fn q_two_rows(r: u32, s: u32) -> MSym {
    if s == 0 {
        return q_one_row(r);
    }
    let mut out = q_one_row(r).mul(&q_one_row(s));
    for i in 1..=s {
        let term = q_one_row(r + i).mul(&q_one_row(s - i));
        let sign = if i % 2 == 0 { 2 } else { -2 };
        out.add_scaled(&term, sign);
    }
    out
}
