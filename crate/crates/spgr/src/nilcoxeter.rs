//! The nilCoxeter algebra: free Z-module on basis elements `A_w` with
//! `A_v A_u = A_{vu}` when lengths add and zero otherwise. On top of it, the
//! affine Fomin-Stanley membership test (the coroot-sum criterion), the
//! special elements `pp_r` supported on `Z_r`, general Schubert elements
//! `pp_w` obtained by an exact linear solve, the homology Pieri rule, and
//! the coefficients `j_v^w`.

use crate::cartan::{is_multiple_of_k, CorootVector};
use crate::error::{Error, Result};
use crate::linalg::{rat, rat_to_i64, solve_unique, Rat};
use crate::weyl::{ElemId, GroupTable};
use crate::zee::ZeeIndex;
use num::Zero;
use std::collections::BTreeMap;

/// Finitely supported integer combination of basis elements `A_w`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NilCoxElem {
    terms: BTreeMap<ElemId, i64>,
}

impl NilCoxElem {
    pub fn zero() -> NilCoxElem {
        NilCoxElem::default()
    }

    pub fn basis(e: ElemId) -> NilCoxElem {
        NilCoxElem {
            terms: BTreeMap::from([(e, 1)]),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ElemId, i64)>) -> NilCoxElem {
        let mut out = NilCoxElem::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: ElemId, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add_scaled(&mut self, other: &NilCoxElem, scale: i64) {
        for (&e, &c) in &other.terms {
            self.add_term(e, c * scale);
        }
    }

    pub fn coeff(&self, e: ElemId) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in the deterministic element order.
    pub fn terms(&self) -> impl Iterator<Item = (ElemId, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn support(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.terms.keys().copied()
    }

    /// The common length of the support, when homogeneous.
    pub fn homogeneous_length(&self, table: &GroupTable) -> Option<usize> {
        let mut it = self.terms.keys();
        let first = table.length(*it.next()?);
        it.all(|&e| table.length(e) == first).then_some(first)
    }

    pub fn render(&self, table: &GroupTable) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            if i == 0 {
                if c < 0 {
                    out.push_str("- ");
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if c.abs() != 1 {
                out.push_str(&format!("{} ", c.abs()));
            }
            let word = table.word_string(e);
            if word.is_empty() {
                out.push_str("A_e");
            } else {
                out.push_str(&format!("A_{word}"));
            }
        }
        out
    }
}

/// Bilinear extension of `A_v A_u = A_{vu}` (lengths adding) else `0`.
pub fn multiply(table: &GroupTable, a: &NilCoxElem, b: &NilCoxElem) -> Result<NilCoxElem> {
    let mut out = NilCoxElem::zero();
    for (v, cv) in a.terms() {
        for (u, cu) in b.terms() {
            if let Some(p) = table.length_additive_product(v, u)? {
                out.add_term(p, cv * cu);
            }
        }
    }
    Ok(out)
}

/// The coroot-sum membership test for the affine Fomin-Stanley subalgebra:
/// a homogeneous `a = sum c_w A_w` lies in it iff for every `v` one length
/// down, the sum over covers `w` of `v` of `c_w alpha_vw^v` is a multiple
/// of `K`.
pub fn is_fomin_stanley(table: &GroupTable, a: &NilCoxElem) -> Result<bool> {
    if a.is_zero() {
        return Ok(true);
    }
    let r = a
        .homogeneous_length(table)
        .ok_or_else(|| Error::Domain("membership test needs a homogeneous element".into()))?;
    if r == 0 {
        return Ok(true);
    }
    if r > table.cap() {
        return Err(Error::CapExceeded { cap: table.cap() });
    }
    let dim = table.rank() + 1;
    for &v in table.layer(r - 1) {
        let mut sum = CorootVector::zero(dim);
        for w in table.covers_of(v)? {
            let c = a.coeff(w);
            if c != 0 {
                sum.add_scaled(&table.cover_coroot(v, w)?, c);
            }
        }
        if !is_multiple_of_k(table.cartan(), &sum).0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The special element `pp_r = sum over w in Z_r of 2^(c(w)-1) A_w`.
pub fn pp_generator(table: &GroupTable, zee: &ZeeIndex, r: usize) -> Result<NilCoxElem> {
    let n = table.rank();
    if r == 0 || r > 2 * n {
        return Err(Error::IndexOutOfRange { index: r, min: 1, max: 2 * n });
    }
    let mut out = NilCoxElem::zero();
    for &w in zee.layer(r) {
        let c = zee.component_count(w).expect("layer member");
        out.add_term(w, 1i64 << (c - 1));
    }
    Ok(out)
}

/// Solves for every Schubert element of length `r` at once: `pp_w` is the
/// unique Fomin-Stanley element of the form
/// `A_w + sum over non-Grassmannian u of the same length of c_u A_u`.
/// The membership conditions are linear in the `c_u`; with `K` the all-ones
/// vector they say that each cover-coroot sum has all coordinates equal.
/// Solved exactly over the rationals, solution asserted integral.
pub fn pp_schubert_layer(table: &GroupTable, r: usize) -> Result<BTreeMap<ElemId, NilCoxElem>> {
    if r > table.cap() {
        return Err(Error::CapExceeded { cap: table.cap() });
    }
    if r == 0 {
        return Ok(BTreeMap::from([(
            table.identity(),
            NilCoxElem::basis(table.identity()),
        )]));
    }
    let n = table.rank();
    let layer = table.layer(r);
    let grassmannian: Vec<ElemId> = layer
        .iter()
        .copied()
        .filter(|&e| table.is_grassmannian(e))
        .collect();
    let unknowns: Vec<ElemId> = layer
        .iter()
        .copied()
        .filter(|&e| !table.is_grassmannian(e))
        .collect();
    let col_of: BTreeMap<ElemId, usize> = unknowns
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    let grass_col: BTreeMap<ElemId, usize> = grassmannian
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();

    // One equation block per v in the layer below: n coordinate differences
    // of the cover-coroot sum must vanish.
    let mut mat: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Vec<Rat>> = vec![Vec::new(); grassmannian.len()];
    for &v in table.layer(r - 1) {
        let mut rows = vec![vec![Rat::zero(); unknowns.len()]; n];
        let mut rhs_rows = vec![vec![Rat::zero(); n]; grassmannian.len()];
        for w in table.covers_of(v)? {
            let coroot = table.cover_coroot(v, w)?;
            let coords = coroot.coeffs();
            if let Some(&col) = col_of.get(&w) {
                for k in 0..n {
                    rows[k][col] += rat(coords[k] - coords[k + 1]);
                }
            } else if let Some(&g) = grass_col.get(&w) {
                for (k, rr) in rhs_rows[g].iter_mut().enumerate() {
                    *rr -= rat(coords[k] - coords[k + 1]);
                }
            }
        }
        for k in 0..n {
            mat.push(std::mem::take(&mut rows[k]));
            for (g, rr) in rhs_rows.iter_mut().enumerate() {
                rhs[g].push(std::mem::take(&mut rr[k]));
            }
        }
    }
    let solutions = solve_unique(&mat, &rhs)
        .map_err(|e| Error::LinearSolve(format!("Schubert solve at length {r}: {e}")))?;
    let mut out = BTreeMap::new();
    for (g, &w) in grassmannian.iter().enumerate() {
        let mut elem = NilCoxElem::basis(w);
        for (col, &u) in unknowns.iter().enumerate() {
            elem.add_term(u, rat_to_i64(&solutions[g][col])?);
        }
        out.insert(w, elem);
    }
    Ok(out)
}

/// The Schubert element `pp_w` for Grassmannian `w`.
pub fn pp_schubert(table: &GroupTable, w: ElemId) -> Result<NilCoxElem> {
    if !table.is_grassmannian(w) {
        return Err(Error::NotGrassmannian {
            word: table.word_string(w),
        });
    }
    let layer = pp_schubert_layer(table, table.length(w))?;
    Ok(layer[&w].clone())
}

/// Expands a homogeneous Fomin-Stanley element in the `pp_w` basis by
/// reading off its Grassmannian support; the residual must vanish.
pub fn expand_in_pp_basis(table: &GroupTable, a: &NilCoxElem) -> Result<BTreeMap<ElemId, i64>> {
    if a.is_zero() {
        return Ok(BTreeMap::new());
    }
    let r = a
        .homogeneous_length(table)
        .ok_or_else(|| Error::Domain("expansion needs a homogeneous element".into()))?;
    let schuberts = pp_schubert_layer(table, r)?;
    let mut coeffs = BTreeMap::new();
    let mut residual = a.clone();
    for (&w, pp) in &schuberts {
        let c = a.coeff(w);
        if c != 0 {
            coeffs.insert(w, c);
            residual.add_scaled(pp, -c);
        }
    }
    if !residual.is_zero() {
        return Err(Error::Domain(format!(
            "element is not in the Fomin-Stanley span: residual {}",
            residual.render(table)
        )));
    }
    Ok(coeffs)
}

/// Homology Pieri rule: the product of the special class of degree `i` with
/// the class of `w` expands as `sum over v in Z_i with l(vw) = l(v) + l(w)`
/// and `vw` Grassmannian of `2^(c(v)-1)` times the class of `vw`.
pub fn pieri(
    table: &GroupTable,
    zee: &ZeeIndex,
    i: usize,
    w: ElemId,
) -> Result<BTreeMap<ElemId, i64>> {
    let n = table.rank();
    if i == 0 || i > 2 * n {
        return Err(Error::IndexOutOfRange { index: i, min: 1, max: 2 * n });
    }
    if !table.is_grassmannian(w) {
        return Err(Error::NotGrassmannian {
            word: table.word_string(w),
        });
    }
    let mut out: BTreeMap<ElemId, i64> = BTreeMap::new();
    for &v in zee.layer(i) {
        if let Some(vw) = table.length_additive_product(v, w)? {
            if table.is_grassmannian(vw) {
                let c = zee.component_count(v).expect("layer member");
                *out.entry(vw).or_insert(0) += 1i64 << (c - 1);
            }
        }
    }
    Ok(out)
}

/// `j_v^w`: the coefficient of `A_w` in `pp_v`, for `l(v) = l(w)`.
pub fn j_coefficient(table: &GroupTable, v: ElemId, w: ElemId) -> Result<i64> {
    if table.length(v) != table.length(w) {
        return Err(Error::LengthMismatch {
            left: table.length(v),
            right: table.length(w),
        });
    }
    Ok(pp_schubert(table, v)?.coeff(w))
}

/// Checks the even-degree relation
/// `pp_{2m} = 2(pp_1 pp_{2m-1} - pp_2 pp_{2m-2} + ...) + (-1)^(m-1) pp_m^2`.
pub fn even_relation_check(table: &GroupTable, zee: &ZeeIndex, m: usize) -> Result<bool> {
    let n = table.rank();
    if m == 0 || m > n {
        return Err(Error::IndexOutOfRange { index: m, min: 1, max: n });
    }
    let mut sum = NilCoxElem::zero();
    for j in 1..m {
        let prod = multiply(
            table,
            &pp_generator(table, zee, j)?,
            &pp_generator(table, zee, 2 * m - j)?,
        )?;
        let sign = if (j - 1).is_multiple_of(2) { 1 } else { -1 };
        sum.add_scaled(&prod, 2 * sign);
    }
    let ppm = pp_generator(table, zee, m)?;
    let square = multiply(table, &ppm, &ppm)?;
    sum.add_scaled(&square, if (m - 1).is_multiple_of(2) { 1 } else { -1 });
    Ok(sum == pp_generator(table, zee, 2 * m)?)
}
