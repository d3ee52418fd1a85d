//! Graded symmetric functions stored as partition -> integer coefficients on
//! the monomial basis `m_lambda`, with the rescaled view
//! `M_lambda = 2^len(lambda) m_lambda` on top.

use crate::error::{Error, Result};
use crate::symfunc::partition::Partition;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MSym {
    terms: BTreeMap<Partition, i64>,
}

impl MSym {
    pub fn zero() -> MSym {
        MSym::default()
    }

    pub fn one() -> MSym {
        MSym::monomial(Partition::empty(), 1)
    }

    pub fn monomial(lambda: Partition, coeff: i64) -> MSym {
        let mut out = MSym::zero();
        out.add_term(lambda, coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, i64)>) -> MSym {
        let mut out = MSym::zero();
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(lambda) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &MSym, scale: i64) {
        for (p, &c) in &other.terms {
            self.add_term(p.clone(), c * scale);
        }
    }

    pub fn coeff(&self, lambda: &Partition) -> i64 {
        self.terms.get(lambda).copied().unwrap_or(0)
    }

    /// Coefficient on the rescaled basis element `M_lambda`; errors when the
    /// `m` coefficient is not divisible by `2^len(lambda)`.
    pub fn m_upper_coeff(&self, lambda: &Partition) -> Result<i64> {
        let c = self.coeff(lambda);
        let pow = 1i64 << lambda.len();
        if c % pow != 0 {
            return Err(Error::Domain(format!(
                "coefficient {c} of m_{lambda} not divisible by 2^{}",
                lambda.len()
            )));
        }
        Ok(c / pow)
    }

    /// Builds `sum coeff * M_lambda` from M-view terms.
    pub fn from_m_upper_terms(terms: impl IntoIterator<Item = (Partition, i64)>) -> MSym {
        let mut out = MSym::zero();
        for (p, c) in terms {
            let pow = 1i64 << p.len();
            out.add_term(p, c * pow);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, i64)> + '_ {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Partition> + '_ {
        self.terms.keys()
    }

    /// Maximal degree present (None when zero).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut sizes = self.terms.keys().map(Partition::size);
        match sizes.next() {
            None => true,
            Some(d) => sizes.all(|s| s == d),
        }
    }

    /// Lexicographically greatest partition in the support.
    pub fn leading(&self) -> Option<&Partition> {
        self.terms.keys().next_back()
    }

    pub fn mul(&self, other: &MSym) -> MSym {
        let mut out = MSym::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                for (nu, mult) in monomial_product(a, b) {
                    out.add_term(nu, ca * cb * mult);
                }
            }
        }
        out
    }

    pub fn scale(&self, t: i64) -> MSym {
        let mut out = MSym::zero();
        out.add_scaled(self, t);
        out
    }

    /// Exact division of every coefficient.
    pub fn div_exact(&self, d: i64) -> Result<MSym> {
        let mut out = MSym::zero();
        for (p, c) in self.terms() {
            if c % d != 0 {
                return Err(Error::Domain(format!(
                    "coefficient {c} of m_{p} not divisible by {d}"
                )));
            }
            out.add_term(p.clone(), c / d);
        }
        Ok(out)
    }

    /// Drops every `m_lambda` with a part exceeding `max_part`.
    pub fn truncate_parts(&self, max_part: u32) -> MSym {
        MSym::from_terms(
            self.terms()
                .filter(|(p, _)| p.first() <= max_part)
                .map(|(p, c)| (p.clone(), c)),
        )
    }

    pub fn render(&self, basis: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        if self.terms.len() == 1 {
            if let Some((p, c)) = self.terms().next() {
                if p.is_empty() {
                    return c.to_string();
                }
            }
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if *c < 0 {
                    out.push_str("- ");
                }
            } else {
                out.push_str(if *c < 0 { " - " } else { " + " });
            }
            if c.abs() != 1 || p.is_empty() {
                out.push_str(&format!("{} ", c.abs()));
            }
            if !p.is_empty() {
                out.push_str(&format!("{}_{}", basis, p.render()));
            }
        }
        out
    }
}

/// `m_a * m_b = sum N^nu m_nu` where the coefficient of `m_nu` counts pairs
/// of compositions `alpha + beta = nu` with `alpha` a spread of `a` and
/// `beta` a spread of `b`.
fn monomial_product(a: &Partition, b: &Partition) -> Vec<(Partition, i64)> {
    let mut out: BTreeMap<Partition, i64> = BTreeMap::new();
    let slots = a.len() + b.len();
    if slots == 0 {
        return vec![(Partition::empty(), 1)];
    }
    // Enumerate placements of the parts of `a` into distinguishable slots of
    // each candidate nu; nu ranges over sums of interleavings. Equivalent
    // and simpler: enumerate spreads of `a` over `slots` positions, fill the
    // rest with a spread of `b`, and record the sorted column sums... The
    // direct route below enumerates distinct arrangements of `a`'s parts
    // (with zeros) and of `b`'s parts, summing componentwise.
    let arr_a = spreads(a, slots);
    let arr_b = spreads(b, slots);
    for va in &arr_a {
        for vb in &arr_b {
            let sum: Vec<u32> = va.iter().zip(vb).map(|(x, y)| x + y).collect();
            // Count the pair only against the representative (weakly
            // decreasing) monomial of its orbit; the count is then the
            // m-coefficient, since distinct (va, vb) with the same
            // decreasing sum are exactly the ways that monomial arises.
            if sum.windows(2).all(|w| w[0] >= w[1]) {
                *out.entry(Partition::from_unsorted(sum)).or_insert(0) += 1;
            }
        }
    }
    out.into_iter().collect()
}

/// Distinct arrangements of the parts of `p` (padded with zeros) over
/// `slots` positions.
fn spreads(p: &Partition, slots: usize) -> Vec<Vec<u32>> {
    let mut pool: Vec<u32> = p.parts().to_vec();
    pool.resize(slots, 0);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(slots);
    fn rec(pool: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pool.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut used = Vec::new();
        for i in 0..pool.len() {
            let v = pool[i];
            if used.contains(&v) {
                continue;
            }
            used.push(v);
            pool.remove(i);
            cur.push(v);
            rec(pool, cur, out);
            cur.pop();
            pool.insert(i, v);
        }
    }
    rec(&mut pool, &mut cur, &mut out);
    out
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Independent multiplication oracle: expand into `>= deg` variables and
    //! re-collect monomials.

    use super::*;

    /// Expansion of `f` into `nvars` variables as exponent-vector -> coeff.
    pub fn expand(f: &MSym, nvars: usize) -> BTreeMap<Vec<u32>, i64> {
        let mut out = BTreeMap::new();
        for (p, c) in f.terms() {
            assert!(p.len() <= nvars, "not enough variables");
            for s in spreads(p, nvars) {
                *out.entry(s).or_insert(0) += c;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn mul_via_expansion(a: &MSym, b: &MSym, nvars: usize) -> MSym {
        let ea = expand(a, nvars);
        let eb = expand(b, nvars);
        let mut prod: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (xa, ca) in &ea {
            for (xb, cb) in &eb {
                let sum: Vec<u32> = xa.iter().zip(xb).map(|(x, y)| x + y).collect();
                *prod.entry(sum).or_insert(0) += ca * cb;
            }
        }
        // Re-collect: keep only weakly decreasing exponent vectors.
        let mut out = MSym::zero();
        for (expo, c) in prod {
            if c != 0 && expo.windows(2).all(|w| w[0] >= w[1]) {
                out.add_term(Partition::from_unsorted(expo), c);
            }
        }
        out
    }
}
