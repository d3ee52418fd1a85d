//! The ring map `theta` determined by `h_i -> Q_i`, the basis
//! `T_lambda = theta(m_lambda)`, the quotient that drops monomials with a
//! part exceeding `2n`, and the pairing that reads coefficients off the
//! `M_lambda` expansion.

use crate::error::{Error, Result};
use crate::linalg::{invert, rat_to_i64};
use crate::symfunc::msym::MSym;
use crate::symfunc::partition::{partitions, Partition};
use crate::symfunc::schur::q_one_row;
use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

/// `h_r = sum over partitions of r of m_lambda`.
pub fn h_one_row(r: u32) -> MSym {
    if r == 0 {
        return MSym::one();
    }
    MSym::from_terms(partitions(r).into_iter().map(|p| (p, 1)))
}

/// `h_lambda` as a product of one-row pieces, in the m basis.
pub fn h_product(lambda: &Partition) -> MSym {
    let mut out = MSym::one();
    for &part in lambda.parts() {
        out = out.mul(&h_one_row(part));
    }
    out
}

type HExpansion = HashMap<Partition, Vec<(Partition, i64)>>;

/// Per-degree change of basis m -> h, cached: row `lambda` of the returned
/// map expands `m_lambda` over `h_mu`.
static M_TO_H: LazyLock<Mutex<HashMap<u32, HExpansion>>> = LazyLock::new(Default::default);

fn m_to_h(degree: u32) -> HExpansion {
    if let Some(hit) = M_TO_H.lock().unwrap().get(&degree) {
        return hit.clone();
    }
    let lams = partitions(degree);
    // H[i][j] = coefficient of m_{lams[j]} in h_{lams[i]}; invert exactly.
    let h_rows: Vec<MSym> = lams.iter().map(h_product).collect();
    let mat: Vec<Vec<i64>> = h_rows
        .iter()
        .map(|h| lams.iter().map(|m| h.coeff(m)).collect())
        .collect();
    let inv = invert(&mat).expect("h-to-m change of basis is unimodular");
    // m_{lams[j]} = sum_i inv[i][j]... careful with orientation: with
    // h_i = sum_j H[i][j] m_j we get m_j = sum_i (H^-1)[j][i]... transpose.
    let mut out = HashMap::new();
    for (j, lam) in lams.iter().enumerate() {
        let mut row = Vec::new();
        for (i, mu) in lams.iter().enumerate() {
            let c = rat_to_i64(&inv[j][i]).expect("integer change of basis");
            if c != 0 {
                row.push((mu.clone(), c));
            }
        }
        out.insert(lam.clone(), row);
    }
    M_TO_H.lock().unwrap().insert(degree, out.clone());
    out
}

static Q_PRODUCTS: LazyLock<Mutex<HashMap<Partition, MSym>>> = LazyLock::new(Default::default);

fn q_product(lambda: &Partition) -> MSym {
    if let Some(hit) = Q_PRODUCTS.lock().unwrap().get(lambda) {
        return hit.clone();
    }
    let mut out = MSym::one();
    for &part in lambda.parts() {
        out = out.mul(&q_one_row(part));
    }
    Q_PRODUCTS
        .lock()
        .unwrap()
        .insert(lambda.clone(), out.clone());
    out
}

/// The ring map with `theta(h_i) = Q_i`, applied degree by degree through
/// the exact m -> h change of basis.
pub fn theta(f: &MSym) -> MSym {
    let mut out = MSym::zero();
    let mut by_degree: HashMap<u32, Vec<(Partition, i64)>> = HashMap::new();
    for (p, c) in f.terms() {
        by_degree.entry(p.size()).or_default().push((p.clone(), c));
    }
    for (degree, terms) in by_degree {
        if degree == 0 {
            for (_, c) in terms {
                out.add_scaled(&MSym::one(), c);
            }
            continue;
        }
        let basis = m_to_h(degree);
        for (lam, c) in terms {
            for (mu, hc) in &basis[&lam] {
                out.add_scaled(&q_product(mu), c * hc);
            }
        }
    }
    out
}

/// `T_lambda = theta(m_lambda)`.
pub fn t_lambda(lambda: &Partition) -> MSym {
    theta(&MSym::monomial(lambda.clone(), 1))
}

/// Representative of `f` in the quotient by the ideal of monomials with a
/// part `>= 2n+1`.
pub fn project_gamma_n(n: usize, f: &MSym) -> MSym {
    f.truncate_parts(2 * n as u32)
}

/// The pairing `[P_{lambda_1} P_{lambda_2} ..., f]`: the coefficient of
/// `M_lambda` in `f`, for odd `lambda` with parts at most `2n`.
pub fn pair_pproduct(n: usize, lambda: &Partition, f: &MSym) -> Result<i64> {
    if !lambda.is_odd() || lambda.first() > 2 * n as u32 {
        return Err(Error::InvalidPartition(
            lambda.parts().to_vec(),
            format!("pairing index must be odd with parts <= {}", 2 * n),
        ));
    }
    f.m_upper_coeff(lambda)
}
