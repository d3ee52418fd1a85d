//! Affine Cartan data and exact arithmetic on the affine coroot lattice.
//!
//! `CartanData` holds a generalized Cartan matrix over the node set
//! `{0, 1, ..., n}`; only the type `C~n` instance ships a named constructor.
//! Coroot lattice vectors are integer coordinate vectors in the basis
//! `alpha_0^v, ..., alpha_n^v`, acted on by the simple reflections
//! `s_i(mu) = mu - alpha_i^v <mu, alpha_i>`.

use crate::error::{Error, Result};
use crate::words::Letter;
use num::rational::Ratio;
use num::Zero;

/// A Cartan datum `(I_af, A)` with `I_af = {0, ..., n}` and
/// `A[i][j] = <alpha_i^v, alpha_j>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    rank: usize,
    a: Vec<Vec<i64>>,
}

impl CartanData {
    /// Validates the generalized Cartan matrix axioms: `a_ii = 2`,
    /// `a_ij <= 0` off-diagonal, and `a_ij < 0` iff `a_ji < 0`.
    #[allow(clippy::needless_range_loop)]
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let m = a.len();
        if m == 0 || a.iter().any(|row| row.len() != m) {
            return Err(Error::BadCartanMatrix("matrix is not square".into()));
        }
        for i in 0..m {
            if a[i][i] != 2 {
                return Err(Error::BadCartanMatrix(format!("a[{i}][{i}] != 2")));
            }
            for j in 0..m {
                if i != j && a[i][j] > 0 {
                    return Err(Error::BadCartanMatrix(format!("a[{i}][{j}] > 0")));
                }
                if (a[i][j] < 0) != (a[j][i] < 0) {
                    return Err(Error::BadCartanMatrix(format!(
                        "a[{i}][{j}] and a[{j}][{i}] disagree on vanishing"
                    )));
                }
            }
        }
        Ok(CartanData { rank: m - 1, a })
    }

    /// The affine Cartan matrix of type `C~n` (`n >= 2`):
    /// `a_01 = -1`, `a_10 = -2`, `a_{n-1,n} = -2`, `a_{n,n-1} = -1`,
    /// `a_{i,i+1} = a_{i+1,i} = -1` for `1 <= i <= n-2`, zero otherwise.
    pub fn affine_c(n: usize) -> Self {
        assert!(n >= 2, "type C~n needs rank n >= 2");
        let m = n + 1;
        let mut a = vec![vec![0i64; m]; m];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        a[0][1] = -1;
        a[1][0] = -2;
        a[n - 1][n] = -2;
        a[n][n - 1] = -1;
        for i in 1..n.saturating_sub(1) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
        CartanData { rank: n, a }
    }

    /// The rank `n`; nodes are `0..=n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn node_count(&self) -> usize {
        self.rank + 1
    }

    /// `<alpha_i^v, alpha_j> = a[i][j]`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn check_letter(&self, i: usize) -> Result<()> {
        if i > self.rank {
            Err(Error::LetterOutOfRange {
                index: i,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// The canonical central element `K`, the primitive positive integer
    /// vector in the left kernel of the matrix (`K^T A = 0`). Errors unless
    /// the corank is exactly one, i.e. the datum is of affine type.
    pub fn central_element(&self) -> Result<CorootVector> {
        let m = self.node_count();
        // Solve k^T A = 0, i.e. A^T k = 0, over the rationals.
        let mut mat: Vec<Vec<Ratio<i64>>> = (0..m)
            .map(|r| (0..m).map(|c| Ratio::from_integer(self.a[c][r])).collect())
            .collect();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m {
            if let Some(p) = (row..m).find(|&r| !mat[r][col].is_zero()) {
                mat.swap(row, p);
                let inv = mat[row][col].recip();
                for x in mat[row].iter_mut() {
                    *x *= inv;
                }
                let pivot = mat[row].clone();
                for (r, line) in mat.iter_mut().enumerate() {
                    if r != row && !line[col].is_zero() {
                        let f = line[col];
                        for (x, s) in line.iter_mut().zip(&pivot) {
                            *x -= f * s;
                        }
                    }
                }
                pivot_cols.push(col);
                row += 1;
            }
        }
        if pivot_cols.len() != m - 1 {
            return Err(Error::BadCartanMatrix(format!(
                "corank {} != 1, not affine type",
                m - pivot_cols.len()
            )));
        }
        let free = (0..m).find(|c| !pivot_cols.contains(c)).unwrap();
        let mut sol = vec![Ratio::from_integer(0i64); m];
        sol[free] = Ratio::from_integer(1);
        for (r, &pc) in pivot_cols.iter().enumerate() {
            sol[pc] = -mat[r][free];
        }
        let lcm = sol
            .iter()
            .fold(1i64, |acc, x| num::integer::lcm(acc, *x.denom()));
        let mut ints: Vec<i64> = sol.iter().map(|x| (x * lcm).to_integer()).collect();
        let gcd = ints.iter().fold(0i64, |acc, &x| num::integer::gcd(acc, x));
        if gcd > 1 {
            for x in &mut ints {
                *x /= gcd;
            }
        }
        if ints.iter().all(|&x| x <= 0) {
            for x in &mut ints {
                *x = -*x;
            }
        }
        if ints.iter().any(|&x| x <= 0) {
            return Err(Error::BadCartanMatrix("kernel vector not positive".into()));
        }
        Ok(CorootVector::new(ints))
    }

    /// The highest-root coroot `theta^v = K - alpha_0^v`, derived rather than
    /// hard-coded.
    pub fn theta_coroot(&self) -> Result<CorootVector> {
        let mut k = self.central_element()?;
        k.coeffs[0] -= 1;
        Ok(k)
    }
}

/// Integer vector in the basis `alpha_0^v, ..., alpha_n^v` of the affine
/// coroot lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorootVector {
    coeffs: Vec<i64>,
}

impl CorootVector {
    pub fn new(coeffs: Vec<i64>) -> Self {
        CorootVector { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        CorootVector {
            coeffs: vec![0; len],
        }
    }

    /// The simple coroot `alpha_i^v`.
    pub fn simple(data: &CartanData, i: usize) -> Result<Self> {
        data.check_letter(i)?;
        let mut v = Self::zero(data.node_count());
        v.coeffs[i] = 1;
        Ok(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        CorootVector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, t: i64) -> Self {
        CorootVector {
            coeffs: self.coeffs.iter().map(|c| c * t).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Self, t: i64) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += t * b;
        }
    }

    pub fn has_negative(&self) -> bool {
        self.coeffs.iter().any(|&c| c < 0)
    }
}

impl std::fmt::Display for CorootVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            }
            if c.abs() != 1 {
                write!(f, "{} ", c.abs())?;
            }
            write!(f, "a{i}^v")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `s_i(mu) = mu - alpha_i^v <mu, alpha_i>` with
/// `<alpha_j^v, alpha_i> = a[j][i]`.
pub fn simple_reflect_coroot(data: &CartanData, i: usize, mu: &CorootVector) -> Result<CorootVector> {
    data.check_letter(i)?;
    let pairing: i64 = mu
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, &c)| c * data.entry(j, i))
        .sum();
    let mut out = mu.clone();
    out.coeffs[i] -= pairing;
    Ok(out)
}

/// Applies a word of simple reflections, leftmost letter applied last: the
/// word `s_{i_1} ... s_{i_m}` acts as the composite `s_{i_1} o ... o s_{i_m}`.
pub fn word_act_coroot(data: &CartanData, word: &[Letter], mu: &CorootVector) -> Result<CorootVector> {
    let mut cur = mu.clone();
    for &l in word.iter().rev() {
        cur = simple_reflect_coroot(data, l as usize, &cur)?;
    }
    Ok(cur)
}

/// Membership in `Z K`: for type `C~n`, `K` is the all-ones vector, so `mu`
/// is a multiple of `K` iff all coordinates are equal. Returns the common
/// coordinate when so.
pub fn is_multiple_of_k(_data: &CartanData, mu: &CorootVector) -> (bool, i64) {
    let first = mu.coeffs[0];
    if mu.coeffs.iter().all(|&c| c == first) {
        (true, first)
    } else {
        (false, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    // The expected-value table spells out every matrix region, including
    // the n = 2 overlaps.
    #[allow(clippy::if_same_then_else)]
    #[test]
    fn affine_c_matrix_cells() {
        for n in 2..=5 {
            let d = CartanData::affine_c(n);
            for i in 0..=n {
                for j in 0..=n {
                    let expect = if i == j {
                        2
                    } else if i == 0 && j == 1 {
                        -1
                    } else if i == 1 && j == 0 {
                        -2
                    } else if i == n - 1 && j == n {
                        -2
                    } else if i == n && j == n - 1 {
                        -1
                    } else if i.abs_diff(j) == 1 {
                        -1
                    } else {
                        0
                    };
                    assert_eq!(d.entry(i, j), expect, "n={n} cell ({i},{j})");
                }
            }
            CartanData::new(d.a.clone()).expect("valid GCM");
        }
    }

    #[test]
    fn central_element_is_all_ones() {
        for n in 2..=5 {
            let d = CartanData::affine_c(n);
            let k = d.central_element().unwrap();
            assert_eq!(k.coeffs(), vec![1; n + 1]);
            let theta = d.theta_coroot().unwrap();
            let mut expect = vec![1; n + 1];
            expect[0] = 0;
            assert_eq!(theta.coeffs(), expect);
        }
    }

    #[test]
    fn reflection_negates_own_coroot() {
        let d = CartanData::affine_c(3);
        for i in 0..=3 {
            let a = CorootVector::simple(&d, i).unwrap();
            let r = simple_reflect_coroot(&d, i, &a).unwrap();
            assert_eq!(r, a.scale(-1));
        }
    }

    // Hand application of the reflection rule: s_1(alpha_0^v) =
    // alpha_0^v + alpha_1^v since <alpha_0^v, alpha_1> = a[0][1] = -1.
    #[test]
    fn reflect_neighbor_n2() {
        let d = CartanData::affine_c(2);
        let a0 = CorootVector::simple(&d, 0).unwrap();
        let r = simple_reflect_coroot(&d, 1, &a0).unwrap();
        assert_eq!(r.coeffs(), &[1, 1, 0]);
    }

    #[test]
    fn cover_coroot_word_action() {
        // s_0 s_1 s_2 s_3 applied to alpha_2^v (rightmost letter first)
        // gives 2a0 + a1 + a2 + 2a3.
        let d = CartanData::affine_c(3);
        let a2 = CorootVector::simple(&d, 2).unwrap();
        let r = word_act_coroot(&d, &[0, 1, 2, 3], &a2).unwrap();
        assert_eq!(r.coeffs(), &[2, 1, 1, 2]);
    }

    #[test]
    fn word_action_identity_and_involution() {
        let d = CartanData::affine_c(2);
        let mu = CorootVector::new(vec![3, -1, 2]);
        assert_eq!(word_act_coroot(&d, &[], &mu).unwrap(), mu);
        for i in 0..=2u8 {
            assert_eq!(word_act_coroot(&d, &[i, i], &mu).unwrap(), mu);
        }
    }

    #[test]
    fn involution_on_random_vectors() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for n in [2usize, 3] {
            let d = CartanData::affine_c(n);
            for _ in 0..10_000 / 2 {
                let mu = CorootVector::new((0..=n).map(|_| rng.gen_range(-50..=50)).collect());
                for i in 0..=n {
                    let twice =
                        simple_reflect_coroot(&d, i, &simple_reflect_coroot(&d, i, &mu).unwrap())
                            .unwrap();
                    assert_eq!(twice, mu);
                }
            }
        }
    }

    #[test]
    fn braid_relations_on_basis() {
        // s_i s_j alternating m_ij times agree as operators, for the braid
        // exponents of type C~n.
        for n in [2usize, 3, 4] {
            let d = CartanData::affine_c(n);
            for i in 0..=n {
                for j in 0..=n {
                    if i == j {
                        continue;
                    }
                    let prod = d.entry(i, j) * d.entry(j, i);
                    let m = match prod {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        _ => continue,
                    };
                    let mut w1 = Vec::new();
                    let mut w2 = Vec::new();
                    for t in 0..m {
                        w1.push(if t % 2 == 0 { i as u8 } else { j as u8 });
                        w2.push(if t % 2 == 0 { j as u8 } else { i as u8 });
                    }
                    for b in 0..=n {
                        let e = CorootVector::simple(&d, b).unwrap();
                        assert_eq!(
                            word_act_coroot(&d, &w1, &e).unwrap(),
                            word_act_coroot(&d, &w2, &e).unwrap(),
                            "braid ({i},{j}) on basis {b}, n={n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn k_fixed_by_all_reflections() {
        for n in [2usize, 3, 4] {
            let d = CartanData::affine_c(n);
            let k = d.central_element().unwrap();
            for i in 0..=n {
                assert_eq!(simple_reflect_coroot(&d, i, &k).unwrap(), k);
            }
        }
    }

    #[test]
    fn multiple_of_k() {
        let d = CartanData::affine_c(2);
        assert_eq!(is_multiple_of_k(&d, &CorootVector::new(vec![1, 1, 1])), (true, 1));
        assert_eq!(is_multiple_of_k(&d, &CorootVector::zero(3)), (true, 0));
        assert!(!is_multiple_of_k(&d, &CorootVector::new(vec![1, 0, 0])).0);
    }

    #[test]
    fn out_of_range_index() {
        let d = CartanData::affine_c(2);
        let mu = CorootVector::zero(3);
        assert!(simple_reflect_coroot(&d, 3, &mu).is_err());
    }
}
