//! Affine Stanley functions `Q^(n)_w`, the duality matrix between their
//! `M_lambda` coefficients and products of one-row Schur P-functions, and
//! the dual basis `P^(n)_w` in the Schur-P basis.

use crate::error::{Error, Result};
use crate::linalg::{invert, rat, rat_to_i64, solve_unique, Rat};
use crate::nilcoxeter::j_coefficient;
use crate::symfunc::msym::MSym;
use crate::symfunc::partition::{
    odd_partitions_bounded, partitions_bounded, rearrangements, Partition,
};
use crate::symfunc::schur::{expand_in_schur_p, p_product, q_one_row};
use crate::symfunc::theta::project_gamma_n;
use crate::weyl::{ElemId, GroupTable};
use crate::zee::{lee_partition, rho_word, ZeeIndex};
use std::collections::{BTreeMap, HashMap};

/// The `M_lambda` expansion of an affine Stanley function: a graded map
/// partition -> integer with every part at most `2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanleyExpansion {
    degree: u32,
    coeffs: BTreeMap<Partition, i64>,
}

impl StanleyExpansion {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, lambda: &Partition) -> i64 {
        self.coeffs.get(lambda).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, i64)> + '_ {
        self.coeffs.iter().map(|(p, &c)| (p, c))
    }

    /// As a symmetric function in the monomial basis.
    pub fn to_msym(&self) -> MSym {
        MSym::from_m_upper_terms(self.coeffs.iter().map(|(p, &c)| (p.clone(), c)))
    }

    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if p.is_empty() {
                out.push_str(&c.to_string());
            } else {
                if *c != 1 {
                    out.push_str(&format!("{c} "));
                }
                out.push_str(&format!("M_{}", p.render()));
            }
        }
        out
    }
}

/// Weighted count of length-additive factorizations of `w` into members of
/// `Z` with the prescribed length sequence, each factor weighted
/// `2^c(factor)`; identity factors correspond to omitted parts.
pub fn factorization_weight(
    table: &GroupTable,
    zee: &ZeeIndex,
    w: ElemId,
    parts: &[u32],
) -> i64 {
    let mut memo: HashMap<(ElemId, usize), i64> = HashMap::new();
    weight_rec(table, zee, w, parts, 0, &mut memo)
}

fn weight_rec(
    table: &GroupTable,
    zee: &ZeeIndex,
    cur: ElemId,
    parts: &[u32],
    idx: usize,
    memo: &mut HashMap<(ElemId, usize), i64>,
) -> i64 {
    if idx == parts.len() {
        return (cur == table.identity()) as i64;
    }
    if let Some(&hit) = memo.get(&(cur, idx)) {
        return hit;
    }
    let mut total = 0;
    for &v in zee.layer(parts[idx] as usize) {
        if let Some(rest) = left_quotient_additive(table, v, cur) {
            let c = zee.component_count(v).expect("layer member");
            total += (1i64 << c) * weight_rec(table, zee, rest, parts, idx + 1, memo);
        }
    }
    memo.insert((cur, idx), total);
    total
}

/// `v^{-1} w` when `l(v^{-1} w) = l(w) - l(v)` (peeling the least word of
/// `v` off the left of `w`), else `None`.
fn left_quotient_additive(table: &GroupTable, v: ElemId, w: ElemId) -> Option<ElemId> {
    let mut cur = w;
    for &l in table.least_word(v).to_vec().iter() {
        if !table.left_descends(cur, l as usize) {
            return None;
        }
        cur = table.left_mul(l as usize, cur).expect("descent stays in table");
    }
    Some(cur)
}

/// The affine Stanley function of `w` expanded over `M_lambda`,
/// `lambda_1 <= 2n`: the `M_lambda` coefficient is the weighted
/// factorization count divided by `2^len(lambda)` (always exact).
pub fn affine_stanley(table: &GroupTable, zee: &ZeeIndex, w: ElemId) -> Result<StanleyExpansion> {
    let n = table.rank();
    let degree = table.length(w) as u32;
    let mut coeffs = BTreeMap::new();
    for lambda in partitions_bounded(degree, 2 * n as u32) {
        let weight = factorization_weight(table, zee, w, lambda.parts());
        if weight == 0 {
            continue;
        }
        let pow = 1i64 << lambda.len();
        if weight % pow != 0 {
            return Err(Error::Domain(format!(
                "factorization weight {weight} for {lambda} not divisible by 2^{}",
                lambda.len()
            )));
        }
        coeffs.insert(lambda, weight / pow);
    }
    Ok(StanleyExpansion { degree, coeffs })
}

/// Symmetry of the generating function: for every partition shape and every
/// rearrangement of its parts, the weighted factorization counts agree.
pub fn stanley_symmetry_check(table: &GroupTable, zee: &ZeeIndex, w: ElemId) -> bool {
    let n = table.rank();
    let degree = table.length(w) as u32;
    for lambda in partitions_bounded(degree, 2 * n as u32) {
        let reference = factorization_weight(table, zee, w, lambda.parts());
        for alpha in rearrangements(&lambda) {
            if factorization_weight(table, zee, w, &alpha) != reference {
                return false;
            }
        }
    }
    true
}

/// The duality matrix at degree `d`: rows are the Grassmannian elements of
/// length `d` (sorted by their partition, descending), columns the odd
/// partitions of `d` with parts `< 2n` (descending lexicographic), entries
/// the `M` coefficients of the affine Stanley functions.
pub struct DualityMatrix {
    pub rows: Vec<(ElemId, Partition)>,
    pub cols: Vec<Partition>,
    pub entries: Vec<Vec<i64>>,
}

pub fn duality_matrix(table: &GroupTable, zee: &ZeeIndex, d: usize) -> Result<DualityMatrix> {
    let n = table.rank();
    if d > table.cap() {
        return Err(Error::CapExceeded { cap: table.cap() });
    }
    let mut rows: Vec<(ElemId, Partition)> = table
        .layer(d)
        .iter()
        .copied()
        .filter(|&e| table.is_grassmannian(e))
        .map(|e| lee_partition(table, e).map(|p| (e, p)))
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| b.1.cmp(&a.1));
    let cols = odd_partitions_bounded(d as u32, 2 * n as u32);
    if rows.len() != cols.len() {
        return Err(Error::Domain(format!(
            "duality matrix at degree {d} is not square: {} rows vs {} columns",
            rows.len(),
            cols.len()
        )));
    }
    let mut entries = Vec::with_capacity(rows.len());
    for (e, _) in &rows {
        let q = affine_stanley(table, zee, *e)?;
        entries.push(cols.iter().map(|c| q.coeff(c)).collect());
    }
    Ok(DualityMatrix { rows, cols, entries })
}

/// Lexicographic triangularity of the Stanley expansion over the full
/// column set: the coefficient at `lambda(w)` is 1 and every other nonzero
/// coefficient sits strictly below in lexicographic order.
pub fn check_triangularity(table: &GroupTable, zee: &ZeeIndex, d: usize) -> Result<bool> {
    for &w in table.layer(d) {
        if !table.is_grassmannian(w) {
            continue;
        }
        let lam = lee_partition(table, w)?;
        let q = affine_stanley(table, zee, w)?;
        if q.coeff(&lam) != 1 {
            return Ok(false);
        }
        for (mu, c) in q.terms() {
            if c != 0 && mu.lex_cmp(&lam) == std::cmp::Ordering::Greater {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All dual Schubert polynomials of degree `d` in the Schur-P basis: invert
/// the transposed duality matrix exactly, form the P-product combinations,
/// and re-expand.
pub fn dual_kschur_layer(
    table: &GroupTable,
    zee: &ZeeIndex,
    d: usize,
) -> Result<BTreeMap<ElemId, Vec<(Partition, i64)>>> {
    let dm = duality_matrix(table, zee, d)?;
    let k = dm.rows.len();
    if k == 0 {
        return Ok(BTreeMap::new());
    }
    // C = (D^T)^{-1}: row v of C gives the P-product coefficients of the
    // dual basis element for v.
    let dt: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| dm.entries[j][i]).collect())
        .collect();
    let c = invert(&dt).map_err(|e| Error::LinearSolve(format!("duality matrix: {e}")))?;
    let mut out = BTreeMap::new();
    for (vi, (v, _)) in dm.rows.iter().enumerate() {
        let mut f = MSym::zero();
        for (li, lam) in dm.cols.iter().enumerate() {
            let coeff = rat_to_i64(&c[vi][li])?;
            if coeff != 0 {
                f.add_scaled(&p_product(lam), coeff);
            }
        }
        out.insert(*v, expand_in_schur_p(&f)?);
    }
    Ok(out)
}

/// The dual Schubert polynomial of Grassmannian `w`, as Schur-P
/// coefficients.
pub fn dual_kschur(table: &GroupTable, zee: &ZeeIndex, w: ElemId) -> Result<Vec<(Partition, i64)>> {
    if !table.is_grassmannian(w) {
        return Err(Error::NotGrassmannian {
            word: table.word_string(w),
        });
    }
    let layer = dual_kschur_layer(table, zee, table.length(w))?;
    Ok(layer[&w].clone())
}

/// The coefficient of the Grassmannian-basis Stanley function of `v` in the
/// expansion of the Stanley function of `w` equals `j_v^w`.
pub fn q_equals_j(table: &GroupTable, zee: &ZeeIndex, v: ElemId, w: ElemId) -> Result<bool> {
    if table.length(v) != table.length(w) {
        return Err(Error::LengthMismatch {
            left: table.length(v),
            right: table.length(w),
        });
    }
    let d = table.length(w);
    let dm = duality_matrix(table, zee, d)?;
    let q = affine_stanley(table, zee, w)?;
    // Solve D^T c = q restricted to the odd columns.
    let k = dm.rows.len();
    let dt: Vec<Vec<Rat>> = (0..k)
        .map(|i| (0..k).map(|j| rat(dm.entries[j][i])).collect())
        .collect();
    let rhs = vec![dm.cols.iter().map(|c| rat(q.coeff(c))).collect::<Vec<_>>()];
    let sol = solve_unique(&dt, &rhs)?;
    let vi = dm
        .rows
        .iter()
        .position(|&(e, _)| e == v)
        .ok_or_else(|| Error::NotGrassmannian {
            word: table.word_string(v),
        })?;
    let coeff = rat_to_i64(&sol[0][vi])?;
    Ok(coeff == j_coefficient(table, v, w)?)
}

/// The unique-reduced-word element `c_r`: the length-`r` suffix of the
/// left-infinite repetition of the reduced word of `rho_{2n}`.
pub fn c_r_word(n: usize, r: usize) -> Result<Vec<u8>> {
    if r == 0 {
        return Ok(Vec::new());
    }
    let base = rho_word(n, 2 * n)?;
    let copies = r.div_ceil(base.len());
    let mut repeated = Vec::with_capacity(copies * base.len());
    for _ in 0..copies {
        repeated.extend_from_slice(&base);
    }
    Ok(repeated[repeated.len() - r..].to_vec())
}

/// Checks that the Stanley function of `c_r` is the projected one-row
/// Schur Q-function `Q_r`, the generator surjectivity statement.
pub fn check_cr_surjectivity(table: &GroupTable, zee: &ZeeIndex, r: usize) -> Result<bool> {
    let n = table.rank();
    let word = c_r_word(n, r)?;
    let e = table.from_word(&word)?;
    if table.length(e) != r || !table.is_grassmannian(e) {
        return Ok(false);
    }
    if table.reduced_words(e).len() != 1 {
        return Ok(false);
    }
    let q = affine_stanley(table, zee, e)?.to_msym();
    let expect = project_gamma_n(n, &q_one_row(r as u32));
    Ok(q == expect)
}

/// Pairing duality at degree `d`: the dual polynomials pair against the
/// Stanley functions as the identity matrix, computed through the
/// M-coefficient pairing.
pub fn check_pairing_duality(table: &GroupTable, zee: &ZeeIndex, d: usize) -> Result<bool> {
    use crate::symfunc::theta::pair_pproduct;
    let n = table.rank();
    let dm = duality_matrix(table, zee, d)?;
    let duals = dual_kschur_layer(table, zee, d)?;
    for (v, _) in &dm.rows {
        // Re-expand the dual element over P-products.
        let mut pv = MSym::zero();
        for (lam, c) in &duals[v] {
            pv.add_scaled(&crate::symfunc::schur::schur_p(lam), *c);
        }
        // Coefficient of each P-product basis element, by triangular
        // elimination against the products themselves.
        let pcoeffs = expand_in_pproducts(&pv, &dm.cols)?;
        for (w, _) in &dm.rows {
            let qw = affine_stanley(table, zee, *w)?.to_msym();
            let mut pairing = 0i64;
            for (lam, c) in dm.cols.iter().zip(&pcoeffs) {
                pairing += c * pair_pproduct(n, lam, &qw)?;
            }
            if (pairing != 0) != (v == w) || (v == w && pairing != 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Expands `f` over the products `P_{lambda_1} P_{lambda_2} ...` indexed by
/// the given odd partitions, by exact solve against their m-expansions.
fn expand_in_pproducts(f: &MSym, cols: &[Partition]) -> Result<Vec<i64>> {
    let products: Vec<MSym> = cols.iter().map(p_product).collect();
    // Collect every monomial in sight as coordinates.
    let mut support: Vec<Partition> = Vec::new();
    for g in products.iter().chain(std::iter::once(f)) {
        for (p, _) in g.terms() {
            if !support.contains(p) {
                support.push(p.clone());
            }
        }
    }
    let mat: Vec<Vec<Rat>> = support
        .iter()
        .map(|p| products.iter().map(|g| rat(g.coeff(p))).collect())
        .collect();
    let rhs = vec![support.iter().map(|p| rat(f.coeff(p))).collect::<Vec<_>>()];
    let sol = solve_unique(&mat, &rhs)?;
    sol[0].iter().map(rat_to_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanData;
    use crate::words::parse_word;
    use crate::zee::rho;

    fn setup(n: usize, cap: usize) -> (GroupTable, ZeeIndex) {
        let t = GroupTable::build(CartanData::affine_c(n), cap);
        let z = ZeeIndex::build(&t);
        (t, z)
    }

    fn elem(t: &GroupTable, s: &str) -> ElemId {
        t.from_word(&parse_word(s, t.rank()).unwrap()).unwrap()
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn stanley_of_identity() {
        let (t, z) = setup(2, 6);
        let q = affine_stanley(&t, &z, t.identity()).unwrap();
        assert_eq!(q.degree(), 0);
        assert_eq!(q.to_msym(), MSym::one());
        assert_eq!(q.render(), "1");
    }

    #[test]
    fn stanley_row_0210() {
        let (t, z) = setup(2, 6);
        let q = affine_stanley(&t, &z, elem(&t, "0210")).unwrap();
        assert_eq!(q.coeff(&p(&[4])), 0);
        assert_eq!(q.coeff(&p(&[3, 1])), 1);
        assert_eq!(q.coeff(&p(&[2, 2])), 2);
        assert_eq!(q.coeff(&p(&[2, 1, 1])), 2);
        assert_eq!(q.coeff(&p(&[1, 1, 1, 1])), 2);
    }

    #[test]
    fn stanley_row_103210() {
        let (t, z) = setup(3, 8);
        let q = affine_stanley(&t, &z, elem(&t, "103210")).unwrap();
        let expect = [
            (vec![4u32, 2], 1i64),
            (vec![4, 1, 1], 1),
            (vec![3, 3], 2),
            (vec![3, 2, 1], 3),
            (vec![3, 1, 1, 1], 3),
            (vec![2, 2, 2], 5),
            (vec![2, 2, 1, 1], 5),
            (vec![2, 1, 1, 1, 1], 5),
            (vec![1, 1, 1, 1, 1, 1], 5),
        ];
        for (parts, c) in expect {
            assert_eq!(q.coeff(&p(&parts)), c, "{parts:?}");
        }
        assert_eq!(q.coeff(&p(&[6])), 0);
        assert_eq!(q.coeff(&p(&[5, 1])), 0);
    }

    #[test]
    fn symmetry_examples() {
        let (t, z) = setup(2, 8);
        assert!(stanley_symmetry_check(&t, &z, rho(&t, 2).unwrap()));
        let w = elem(&t, "0210");
        assert_eq!(
            factorization_weight(&t, &z, w, &[1, 3]),
            factorization_weight(&t, &z, w, &[3, 1])
        );
        assert!(stanley_symmetry_check(&t, &z, w));
    }

    #[test]
    fn duality_matrix_degree_three() {
        let (t, z) = setup(2, 6);
        let dm = duality_matrix(&t, &z, 3).unwrap();
        // Rows sorted by partition descending: 210 <-> (3), 010 <-> (2,1).
        assert_eq!(dm.rows[0].0, elem(&t, "210"));
        assert_eq!(dm.rows[0].1, p(&[3]));
        assert_eq!(dm.rows[1].0, elem(&t, "010"));
        assert_eq!(dm.rows[1].1, p(&[2, 1]));
        assert_eq!(dm.cols, vec![p(&[3]), p(&[1, 1, 1])]);
        assert_eq!(dm.entries, vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn duality_matrix_degree_zero() {
        let (t, z) = setup(2, 6);
        let dm = duality_matrix(&t, &z, 0).unwrap();
        assert_eq!(dm.entries, vec![vec![1]]);
    }

    #[test]
    fn dual_kschur_examples_n2() {
        let (t, z) = setup(2, 8);
        assert_eq!(
            dual_kschur(&t, &z, elem(&t, "010")).unwrap(),
            vec![(p(&[2, 1]), 1)]
        );
        assert_eq!(
            dual_kschur(&t, &z, elem(&t, "010210")).unwrap(),
            vec![(p(&[5, 1]), 1), (p(&[4, 2]), 1), (p(&[3, 2, 1]), 1)]
        );
        assert!(dual_kschur(&t, &z, elem(&t, "20")).is_err());
    }

    #[test]
    fn dual_kschur_example_n3() {
        let (t, z) = setup(3, 8);
        assert_eq!(
            dual_kschur(&t, &z, elem(&t, "2103210")).unwrap(),
            vec![(p(&[5, 2]), 1), (p(&[4, 3]), 1)]
        );
    }

    #[test]
    fn q_equals_j_examples() {
        let (t, z) = setup(2, 6);
        let w = elem(&t, "20");
        assert!(q_equals_j(&t, &z, rho(&t, 2).unwrap(), w).unwrap());
        let g = elem(&t, "10");
        assert!(q_equals_j(&t, &z, g, g).unwrap());
        assert!(q_equals_j(&t, &z, g, elem(&t, "210")).is_err());
    }

    #[test]
    fn q_equals_j_exhaustive_small() {
        let (t, z) = setup(2, 6);
        for d in 1..=5usize {
            for &w in t.layer(d) {
                for &v in t.layer(d) {
                    if t.is_grassmannian(v) {
                        assert!(
                            q_equals_j(&t, &z, v, w).unwrap(),
                            "v={} w={}",
                            t.word_string(v),
                            t.word_string(w)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cr_words() {
        assert_eq!(c_r_word(2, 1).unwrap(), vec![0]);
        assert_eq!(c_r_word(2, 2).unwrap(), vec![1, 0]);
        assert_eq!(c_r_word(2, 5).unwrap(), vec![0, 1, 2, 1, 0]);
        assert_eq!(c_r_word(2, 7).unwrap(), vec![2, 1, 0, 1, 2, 1, 0]);
    }

    #[test]
    fn cr_surjectivity_small() {
        let (t, z) = setup(2, 8);
        for r in 1..=7usize {
            assert!(check_cr_surjectivity(&t, &z, r).unwrap(), "r={r}");
        }
    }

    #[test]
    fn triangularity_small() {
        let (t, z) = setup(2, 6);
        for d in 0..=6usize {
            assert!(check_triangularity(&t, &z, d).unwrap(), "d={d}");
        }
    }

    #[test]
    fn pairing_duality_small() {
        let (t, z) = setup(2, 6);
        for d in 1..=5usize {
            assert!(check_pairing_duality(&t, &z, d).unwrap(), "d={d}");
        }
    }
}
