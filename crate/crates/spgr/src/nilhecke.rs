//! The nilHecke algebra: the nilCoxeter algebra extended by polynomial
//! coefficients from `S = Sym(P)` in the finite fundamental-weight variables
//! `w_1, ..., w_n`, with the commutation rule
//! `A_i f = (s_i f) A_i + d_i(f)` (level-zero action and divided
//! difference). The recursively multiplied coproduct lives here as the
//! independent oracle for the closed-form coproduct; it is exponential in
//! length and meant for small lengths only.

use crate::cartan::CartanData;
use crate::error::Result;
use crate::nilcoxeter::NilCoxElem;
use crate::weyl::{ElemId, GroupTable};
use std::collections::BTreeMap;

/// Polynomial in `w_1..w_n` with integer coefficients, stored as exponent
/// vector -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SPoly {
    terms: BTreeMap<Vec<u16>, i64>,
    nvars: usize,
}

impl SPoly {
    pub fn zero(nvars: usize) -> SPoly {
        SPoly {
            terms: BTreeMap::new(),
            nvars,
        }
    }

    pub fn constant(nvars: usize, c: i64) -> SPoly {
        let mut out = SPoly::zero(nvars);
        out.add_term(vec![0; nvars], c);
        out
    }

    pub fn one(nvars: usize) -> SPoly {
        SPoly::constant(nvars, 1)
    }

    /// The linear form `sum coeffs[j] * w_{j+1}`.
    pub fn linear(coeffs: &[i64]) -> SPoly {
        let mut out = SPoly::zero(coeffs.len());
        for (j, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0u16; coeffs.len()];
            e[j] = 1;
            out.add_term(e, c);
        }
        out
    }

    pub fn var(nvars: usize, j: usize) -> SPoly {
        let mut coeffs = vec![0i64; nvars];
        coeffs[j] = 1;
        SPoly::linear(&coeffs)
    }

    pub fn add_term(&mut self, expo: Vec<u16>, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(expo) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SPoly, scale: i64) {
        for (e, &c) in &other.terms {
            self.add_term(e.clone(), c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &SPoly) -> SPoly {
        let mut out = SPoly::zero(self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, t: i64) -> SPoly {
        let mut out = SPoly::zero(self.nvars);
        out.add_scaled(self, t);
        out
    }

    /// Evaluation at 0: the constant term.
    pub fn eval0(&self) -> i64 {
        self.terms.get(&vec![0; self.nvars]).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }
}

/// Level-zero data for the affine Cartan datum, derived from the matrix and
/// the central element alone: `abar_i = sum_k a_{ki} w_k` over finite `k`
/// (so `abar_0 = -theta`), and `<alpha_0^v, w_j> = -K_j` with `K_j` the
/// finite coordinates of the central element.
pub struct LevelZero {
    n: usize,
    /// `<alpha_i^v, w_j>` for `i in 0..=n`, `j in 0..n`.
    pairings: Vec<Vec<i64>>,
    /// `abar_i` in the `w` coordinates.
    alpha_bar: Vec<Vec<i64>>,
}

impl LevelZero {
    pub fn new(cartan: &CartanData) -> Result<LevelZero> {
        let n = cartan.rank();
        let k = cartan.central_element()?;
        let mut pairings = Vec::with_capacity(n + 1);
        let mut alpha_bar = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let row: Vec<i64> = if i == 0 {
                (1..=n).map(|j| -k.coeffs()[j]).collect()
            } else {
                (1..=n).map(|j| if i == j { 1 } else { 0 }).collect()
            };
            pairings.push(row);
            alpha_bar.push((1..=n).map(|kk| cartan.entry(kk, i)).collect());
        }
        Ok(LevelZero { n, pairings, alpha_bar })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// `<alpha_i^v, lambda>` for a linear form in `w` coordinates.
    pub fn pair_linear(&self, i: usize, coeffs: &[i64]) -> i64 {
        self.pairings[i]
            .iter()
            .zip(coeffs)
            .map(|(p, c)| p * c)
            .sum()
    }

    /// Pairing of an affine coroot vector against a linear form.
    pub fn pair_coroot(&self, coroot: &crate::cartan::CorootVector, coeffs: &[i64]) -> i64 {
        coroot
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, &m)| m * self.pair_linear(i, coeffs))
            .sum()
    }

    pub fn alpha_bar(&self, i: usize) -> SPoly {
        SPoly::linear(&self.alpha_bar[i])
    }

    /// Level-zero reflection on a linear form:
    /// `s_i(c) = c - <alpha_i^v, c> abar_i`.
    pub fn reflect_linear(&self, i: usize, coeffs: &[i64]) -> Vec<i64> {
        let t = self.pair_linear(i, coeffs);
        coeffs
            .iter()
            .zip(&self.alpha_bar[i])
            .map(|(c, a)| c - t * a)
            .collect()
    }

    /// Ring endomorphism `s_i` on polynomials, substituting each variable by
    /// its reflected linear form.
    pub fn reflect_poly(&self, i: usize, f: &SPoly) -> SPoly {
        let images: Vec<SPoly> = (0..self.n)
            .map(|j| {
                let mut unit = vec![0i64; self.n];
                unit[j] = 1;
                SPoly::linear(&self.reflect_linear(i, &unit))
            })
            .collect();
        let mut out = SPoly::zero(self.n);
        for (e, &c) in &f.terms {
            let mut m = SPoly::constant(self.n, c);
            for (j, &pow) in e.iter().enumerate() {
                for _ in 0..pow {
                    m = m.mul(&images[j]);
                }
            }
            out.add_scaled(&m, 1);
        }
        out
    }

    /// Divided difference `d_i`: `<alpha_i^v, .>` on linear forms, extended
    /// by the twisted Leibniz rule `d_i(fg) = d_i(f) g + (s_i f) d_i(g)`.
    pub fn divided_difference(&self, i: usize, f: &SPoly) -> SPoly {
        let mut out = SPoly::zero(self.n);
        for (e, &c) in &f.terms {
            out.add_scaled(&self.dd_monomial(i, e), c);
        }
        out
    }

    fn dd_monomial(&self, i: usize, expo: &[u16]) -> SPoly {
        let Some(j) = expo.iter().position(|&x| x > 0) else {
            return SPoly::zero(self.n); // constants die
        };
        let mut rest = expo.to_vec();
        rest[j] -= 1;
        let mut unit = vec![0i64; self.n];
        unit[j] = 1;
        // d(w_j m) = <alpha_i^v, w_j> m + (s_i w_j) d(m)
        let mut out = SPoly::zero(self.n);
        let mut rest_poly = SPoly::zero(self.n);
        rest_poly.add_term(rest.clone(), 1);
        out.add_scaled(&rest_poly, self.pair_linear(i, &unit));
        let si_wj = SPoly::linear(&self.reflect_linear(i, &unit));
        out.add_scaled(&si_wj.mul(&self.dd_monomial(i, &rest)), 1);
        out
    }

    /// Level-zero action of a group element (applied via a reduced word,
    /// rightmost letter first).
    pub fn act_linear(&self, word: &[u8], coeffs: &[i64]) -> Vec<i64> {
        let mut cur = coeffs.to_vec();
        for &l in word.iter().rev() {
            cur = self.reflect_linear(l as usize, &cur);
        }
        cur
    }
}

/// Finitely supported map `WeylElement -> SPoly`, representing
/// `sum s_w A_w` with `S` acting on the left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilHeckeElem {
    terms: BTreeMap<ElemId, SPoly>,
    nvars: usize,
}

impl NilHeckeElem {
    pub fn zero(nvars: usize) -> NilHeckeElem {
        NilHeckeElem {
            terms: BTreeMap::new(),
            nvars,
        }
    }

    pub fn basis(nvars: usize, e: ElemId) -> NilHeckeElem {
        let mut out = NilHeckeElem::zero(nvars);
        out.add_term(e, SPoly::one(nvars));
        out
    }

    pub fn from_nilcox(nvars: usize, a: &NilCoxElem) -> NilHeckeElem {
        let mut out = NilHeckeElem::zero(nvars);
        for (e, c) in a.terms() {
            out.add_term(e, SPoly::constant(nvars, c));
        }
        out
    }

    pub fn add_term(&mut self, e: ElemId, f: SPoly) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Occupied(mut slot) => {
                slot.get_mut().add_scaled(&f, 1);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(f);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NilHeckeElem, scale: i64) {
        for (&e, f) in &other.terms {
            self.add_term(e, f.scale(scale));
        }
    }

    pub fn coeff(&self, e: ElemId) -> SPoly {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(|| SPoly::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (ElemId, &SPoly)> + '_ {
        self.terms.iter().map(|(&e, f)| (e, f))
    }
}

/// `A_v f`, moving the polynomial to the left through the commutation rule,
/// letter by letter along the least word of `v`.
pub fn move_poly_left(
    table: &GroupTable,
    lz: &LevelZero,
    v: ElemId,
    f: &SPoly,
) -> Result<NilHeckeElem> {
    let word = table.least_word(v).to_vec();
    move_poly_left_word(table, lz, &word, f)
}

fn move_poly_left_word(
    table: &GroupTable,
    lz: &LevelZero,
    word: &[u8],
    f: &SPoly,
) -> Result<NilHeckeElem> {
    let nv = lz.nvars();
    if word.is_empty() {
        let mut out = NilHeckeElem::zero(nv);
        out.add_term(table.identity(), f.clone());
        return Ok(out);
    }
    let i = word[0] as usize;
    let inner = move_poly_left_word(table, lz, &word[1..], f)?;
    let mut out = NilHeckeElem::zero(nv);
    for (y, h) in inner.terms() {
        // A_i (h A_y) = (s_i h) A_i A_y + d_i(h) A_y
        let reflected = lz.reflect_poly(i, h);
        let up = table.left_mul(i, y)?;
        if table.length(up) > table.length(y) {
            out.add_term(up, reflected);
        }
        out.add_term(y, lz.divided_difference(i, h));
    }
    Ok(out)
}

/// Product in the nilHecke algebra.
pub fn multiply(
    table: &GroupTable,
    lz: &LevelZero,
    a: &NilHeckeElem,
    b: &NilHeckeElem,
) -> Result<NilHeckeElem> {
    let mut out = NilHeckeElem::zero(lz.nvars());
    for (v, fv) in a.terms() {
        for (u, gu) in b.terms() {
            let moved = move_poly_left(table, lz, v, gu)?;
            for (y, h) in moved.terms() {
                if let Some(p) = table.length_additive_product(y, u)? {
                    out.add_term(p, fv.mul(h));
                }
            }
        }
    }
    Ok(out)
}

/// The closed commutation expansion for a linear form:
/// `A_x lam = (x . lam) A_x + sum over covers y of x of <alpha_yx^v, lam> A_y`.
pub fn commute_right(
    table: &GroupTable,
    lz: &LevelZero,
    x: ElemId,
    lambda: &[i64],
) -> Result<NilHeckeElem> {
    let nv = lz.nvars();
    let mut out = NilHeckeElem::zero(nv);
    out.add_term(
        x,
        SPoly::linear(&lz.act_linear(table.least_word(x), lambda)),
    );
    for &y in table.covers_below(x) {
        let coroot = table.cover_coroot(y, x)?;
        out.add_term(y, SPoly::constant(nv, lz.pair_coroot(&coroot, lambda)));
    }
    Ok(out)
}

/// Coefficient-wise evaluation at zero.
pub fn phi0(a: &NilHeckeElem) -> NilCoxElem {
    NilCoxElem::from_terms(a.terms().map(|(e, f)| (e, f.eval0())))
}

/// Element of `A tensor_S A` in the normal form `sum A_w (x) p A_v` with all
/// polynomial content in the right slot (equivalently the left, since
/// `s (x) 1 = 1 (x) s`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElem {
    terms: BTreeMap<(ElemId, ElemId), SPoly>,
    nvars: usize,
}

impl TensorElem {
    pub fn zero(nvars: usize) -> TensorElem {
        TensorElem {
            terms: BTreeMap::new(),
            nvars,
        }
    }

    pub fn identity(nvars: usize, table: &GroupTable) -> TensorElem {
        let mut out = TensorElem::zero(nvars);
        out.add_term((table.identity(), table.identity()), SPoly::one(nvars));
        out
    }

    pub fn add_term(&mut self, key: (ElemId, ElemId), f: SPoly) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Occupied(mut slot) => {
                slot.get_mut().add_scaled(&f, 1);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(f);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElem, scale: i64) {
        for (&k, f) in &other.terms {
            self.add_term(k, f.scale(scale));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((ElemId, ElemId), &SPoly)> + '_ {
        self.terms.iter().map(|(&k, f)| (k, f))
    }

    /// Product per the factorwise rule: left slots multiply in the
    /// nilCoxeter algebra, right slots in the nilHecke algebra with the
    /// incoming coefficient commuted through.
    pub fn mul(
        &self,
        table: &GroupTable,
        lz: &LevelZero,
        other: &TensorElem,
    ) -> Result<TensorElem> {
        let mut out = TensorElem::zero(self.nvars);
        for ((w, v), p) in self.terms() {
            for ((w2, v2), q) in other.terms() {
                let Some(left) = table.length_additive_product(w, w2)? else {
                    continue;
                };
                let moved = move_poly_left(table, lz, v, q)?;
                for (y, h) in moved.terms() {
                    if let Some(right) = table.length_additive_product(y, v2)? {
                        out.add_term((left, right), p.mul(h));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `Delta(A_i) = A_i (x) 1 + 1 (x) A_i - A_i (x) abar_i A_i`.
pub fn delta_simple(table: &GroupTable, lz: &LevelZero, i: usize) -> Result<TensorElem> {
    let s = table.simple(i)?;
    let id = table.identity();
    let mut out = TensorElem::zero(lz.nvars());
    out.add_term((s, id), SPoly::one(lz.nvars()));
    out.add_term((id, s), SPoly::one(lz.nvars()));
    out.add_term((s, s), lz.alpha_bar(i).scale(-1));
    Ok(out)
}

/// `Delta(A_w)` multiplied out along a reduced word; reduced-word
/// independence is checked in tests. Exponential in length; oracle use only.
pub fn delta_recursive(table: &GroupTable, lz: &LevelZero, w: ElemId) -> Result<TensorElem> {
    delta_word(table, lz, table.least_word(w))
}

pub fn delta_word(table: &GroupTable, lz: &LevelZero, word: &[u8]) -> Result<TensorElem> {
    let mut out = TensorElem::identity(lz.nvars(), table);
    for &l in word {
        let step = delta_simple(table, lz, l as usize)?;
        out = out.mul(table, lz, &step)?;
    }
    Ok(out)
}

/// Evaluate all tensor coefficients at zero.
pub fn phi0_tensor(t: &TensorElem) -> BTreeMap<(ElemId, ElemId), i64> {
    t.terms()
        .filter_map(|(k, f)| {
            let c = f.eval0();
            (c != 0).then_some((k, c))
        })
        .collect()
}
