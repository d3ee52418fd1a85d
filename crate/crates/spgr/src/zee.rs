//! The Bruhat ideal `Z` inside type `C~n`: elements possessing a reduced
//! word embedded in a cyclic rotation of the unique reduced word of
//! `rho_{2n}`, graded by length, together with supports and component
//! counts, the special elements `rho_i`, the N / reverse-N word
//! characterization, and the bijection between Grassmannian elements and
//! the partition family `P_C^n`.

use crate::cartan::{is_multiple_of_k, CorootVector};
use crate::error::{Error, Result};
use crate::symfunc::partition::Partition;
use crate::weyl::{ElemId, GroupTable};
use crate::words::{is_subword, Letter, Word};
use std::collections::{BTreeSet, HashMap};

/// Support of an element: the set of letters in any reduced word, decomposed
/// into maximal subintervals ("components").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    letters: Vec<usize>,
    components: Vec<(usize, usize)>,
}

impl Support {
    pub fn from_letters(letters: impl IntoIterator<Item = usize>) -> Support {
        let set: BTreeSet<usize> = letters.into_iter().collect();
        let letters: Vec<usize> = set.into_iter().collect();
        let mut components = Vec::new();
        let mut i = 0;
        while i < letters.len() {
            let start = letters[i];
            let mut end = start;
            while i + 1 < letters.len() && letters[i + 1] == end + 1 {
                end += 1;
                i += 1;
            }
            components.push((start, end));
            i += 1;
        }
        Support { letters, components }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Maximal intervals, in increasing order.
    pub fn components(&self) -> &[(usize, usize)] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// `Supp(w)` computed from the least reduced word (independent of the
/// choice of word).
pub fn support(table: &GroupTable, e: ElemId) -> Support {
    Support::from_letters(table.least_word(e).iter().map(|&l| l as usize))
}

pub fn component_count(table: &GroupTable, e: ElemId) -> usize {
    support(table, e).component_count()
}

/// The unique reduced word of the special element `rho_i`, `1 <= i <= 2n`.
pub fn rho_word(n: usize, i: usize) -> Result<Word> {
    if i == 0 || i > 2 * n {
        return Err(Error::IndexOutOfRange { index: i, min: 1, max: 2 * n });
    }
    let mut w: Word = Vec::with_capacity(i);
    if i <= n {
        w.extend((0..i).rev().map(|l| l as Letter));
    } else {
        w.extend((2 * n + 1 - i..=n).map(|l| l as Letter));
        w.extend((0..n).rev().map(|l| l as Letter));
    }
    Ok(w)
}

pub fn rho(table: &GroupTable, i: usize) -> Result<ElemId> {
    table.from_word(&rho_word(table.rank(), i)?)
}

/// The `2n` cyclic rotations of the reduced word of `rho_{2n}`.
pub fn rho_rotations(n: usize) -> Vec<Word> {
    let base = rho_word(n, 2 * n).expect("2n is in range");
    (0..base.len())
        .map(|s| base[s..].iter().chain(&base[..s]).copied().collect())
        .collect()
}

/// Saturated N word `N_{k,k-1}`: ascend `k..n`, descend `n-1..0`, ascend
/// `1..k-1`.
pub fn n_template(n: usize, k: usize) -> Word {
    let mut w: Word = (k..=n).map(|l| l as Letter).collect();
    w.extend((0..n).rev().map(|l| l as Letter));
    w.extend((1..k).map(|l| l as Letter));
    w
}

/// Saturated reverse-N word `N~_{k-1,k}`: descend `k-1..0`, ascend `1..n`,
/// descend `n-1..k`.
pub fn rev_n_template(n: usize, k: usize) -> Word {
    let mut w: Word = (0..k).rev().map(|l| l as Letter).collect();
    w.extend((1..=n).map(|l| l as Letter));
    w.extend((k..n).rev().map(|l| l as Letter));
    w
}

pub fn is_n_word(n: usize, u: &[Letter]) -> bool {
    (1..=n).any(|k| is_subword(u, &n_template(n, k)))
}

pub fn is_rev_n_word(n: usize, u: &[Letter]) -> bool {
    (1..=n).any(|k| is_subword(u, &rev_n_template(n, k)))
}

fn peaks(u: &[Letter]) -> usize {
    let m = u.len();
    if m == 0 {
        return 0;
    }
    if m == 1 {
        return 1;
    }
    (0..m)
        .filter(|&p| {
            if p == 0 {
                u[0] > u[1]
            } else if p == m - 1 {
                u[m - 2] < u[m - 1]
            } else {
                u[p - 1] < u[p] && u[p] > u[p + 1]
            }
        })
        .count()
}

fn valleys(u: &[Letter]) -> usize {
    let m = u.len();
    if m == 0 {
        return 0;
    }
    if m == 1 {
        return 1;
    }
    (0..m)
        .filter(|&p| {
            if p == 0 {
                u[0] < u[1]
            } else if p == m - 1 {
                u[m - 2] > u[m - 1]
            } else {
                u[p - 1] > u[p] && u[p] < u[p + 1]
            }
        })
        .count()
}

/// A word is a V when empty or with exactly one valley.
pub fn is_v_word(u: &[Letter]) -> bool {
    u.is_empty() || valleys(u) == 1
}

/// A word is a Lambda when empty or with exactly one peak.
pub fn is_lambda_word(u: &[Letter]) -> bool {
    u.is_empty() || peaks(u) == 1
}

/// The graded index of `Z`, with component counts and Grassmannian flags
/// cached. Immutable after construction.
pub struct ZeeIndex {
    by_length: Vec<Vec<ElemId>>,
    c: HashMap<ElemId, u32>,
}

impl ZeeIndex {
    pub fn build(table: &GroupTable) -> ZeeIndex {
        let n = table.rank();
        let mut members: BTreeSet<ElemId> = BTreeSet::new();
        for rotation in rho_rotations(n) {
            let len = rotation.len();
            for mask in 0u32..(1 << len) {
                let sub: Word = (0..len)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| rotation[i])
                    .collect();
                let e = table
                    .from_word(&sub)
                    .expect("rotation subwords have length <= 2n <= cap");
                if table.length(e) == sub.len() {
                    members.insert(e);
                }
            }
        }
        let mut by_length = vec![Vec::new(); 2 * n + 1];
        let mut c = HashMap::new();
        for e in members {
            by_length[table.length(e)].push(e);
            c.insert(e, component_count(table, e) as u32);
        }
        ZeeIndex { by_length, c }
    }

    pub fn contains(&self, e: ElemId) -> bool {
        self.c.contains_key(&e)
    }

    /// `Z_r`, in canonical element order. Empty for `r > 2n`.
    pub fn layer(&self, r: usize) -> &[ElemId] {
        self.by_length.get(r).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn max_length(&self) -> usize {
        self.by_length.len() - 1
    }

    /// Component count `c(w)` for a member.
    pub fn component_count(&self, e: ElemId) -> Option<u32> {
        self.c.get(&e).copied()
    }

    /// Covers of `v` that stay inside `Z`.
    pub fn covers_in_zee(&self, table: &GroupTable, v: ElemId) -> Result<Vec<ElemId>> {
        Ok(table
            .covers_of(v)?
            .into_iter()
            .filter(|w| self.contains(*w))
            .collect())
    }
}

/// `R^Z(w)`: the reduced words of `w` that are Ns or reverse-Ns. Errors when
/// `w` is not a member of `Z`; nonemptiness is equivalent to membership.
pub fn zee_words(table: &GroupTable, zee: &ZeeIndex, e: ElemId) -> Result<BTreeSet<Word>> {
    if !zee.contains(e) {
        return Err(Error::NotInZee {
            word: table.word_string(e),
        });
    }
    let n = table.rank();
    Ok(table
        .reduced_words(e)
        .into_iter()
        .filter(|u| is_n_word(n, u) || is_rev_n_word(n, u))
        .collect())
}

fn strip_right(table: &GroupTable, e: ElemId, word: &[Letter]) -> Option<ElemId> {
    let mut cur = e;
    for &l in word.iter().rev() {
        if !table.right_descends(cur, l as usize) {
            return None;
        }
        cur = table.right_mul(cur, l as usize).expect("descent stays in table");
    }
    Some(cur)
}

/// The partition `lambda(w)` of a Grassmannian element: repeatedly strip the
/// longest `rho_r` (`r` maximal with `w rho_r^{-1}` length-subtractive and
/// Grassmannian). The result lies in `P_C^n` with `|lambda(w)| = l(w)`.
pub fn lee_partition(table: &GroupTable, e: ElemId) -> Result<Partition> {
    if !table.is_grassmannian(e) {
        return Err(Error::NotGrassmannian {
            word: table.word_string(e),
        });
    }
    let n = table.rank();
    let mut cur = e;
    let mut parts: Vec<u32> = Vec::new();
    while cur != table.identity() {
        let found = (1..=(2 * n).min(table.length(cur)))
            .rev()
            .find_map(|r| {
                let rw = rho_word(n, r).expect("r in range");
                strip_right(table, cur, &rw)
                    .filter(|&q| table.is_grassmannian(q))
                    .map(|q| (r, q))
            });
        match found {
            Some((r, q)) => {
                parts.push(r as u32);
                cur = q;
            }
            None => {
                return Err(Error::Domain(format!(
                    "factorization failure at `{}`",
                    table.word_string(cur)
                )))
            }
        }
    }
    let lambda = Partition::new(parts)
        .map_err(|_| Error::Domain("greedy strip produced non-monotone parts".into()))?;
    if !lambda.in_pcn(n) {
        return Err(Error::Domain(format!("lambda(w) = {lambda} outside P_C^n")));
    }
    Ok(lambda)
}

/// Inverse of `lee_partition`: the product `rho_{lambda_l} ... rho_{lambda_1}`
/// (smallest part leftmost), which is length-additive for `lambda` in
/// `P_C^n`.
pub fn partition_to_grassmannian(table: &GroupTable, lambda: &Partition) -> Result<ElemId> {
    let n = table.rank();
    if !lambda.in_pcn(n) {
        return Err(Error::InvalidPartition(
            lambda.parts().to_vec(),
            format!("not in P_C^{n}"),
        ));
    }
    let mut cur = table.identity();
    for &part in lambda.parts().iter().rev() {
        let r = rho(table, part as usize)?;
        match table.length_additive_product(cur, r)? {
            Some(next) => cur = next,
            None => {
                return Err(Error::Domain(format!(
                    "rho-product for {lambda} is not length-additive"
                )))
            }
        }
    }
    Ok(cur)
}

/// The cover-sum identity: for `v` in `Z` with `l(v) < 2n`,
/// `sum over covers w of v inside Z of 2^(c(w)-1) alpha_vw^v  =  2^c(v) K`.
pub fn check_prop_p2(table: &GroupTable, zee: &ZeeIndex, v: ElemId) -> Result<bool> {
    let n = table.rank();
    if !zee.contains(v) {
        return Err(Error::NotInZee {
            word: table.word_string(v),
        });
    }
    if table.length(v) >= 2 * n {
        return Err(Error::IndexOutOfRange {
            index: table.length(v),
            min: 0,
            max: 2 * n - 1,
        });
    }
    let mut sum = CorootVector::zero(n + 1);
    for w in zee.covers_in_zee(table, v)? {
        let c = zee.component_count(w).expect("cover is a member");
        let coroot = table.cover_coroot(v, w)?;
        sum.add_scaled(&coroot, 1i64 << (c - 1));
    }
    let cv = zee.component_count(v).expect("v is a member");
    let (is_k, mult) = is_multiple_of_k(table.cartan(), &sum);
    Ok(is_k && mult == 1i64 << cv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanData;
    use crate::words::format_word;

    fn table(n: usize, cap: usize) -> GroupTable {
        GroupTable::build(CartanData::affine_c(n), cap)
    }

    #[test]
    fn rho_words() {
        assert_eq!(rho_word(2, 4).unwrap(), vec![1, 2, 1, 0]);
        assert_eq!(rho_word(5, 1).unwrap(), vec![0]);
        assert_eq!(rho_word(3, 3).unwrap(), vec![2, 1, 0]);
        assert_eq!(rho_word(3, 4).unwrap(), vec![3, 2, 1, 0]);
        assert_eq!(rho_word(3, 5).unwrap(), vec![2, 3, 2, 1, 0]);
        assert!(rho_word(2, 5).is_err());
        assert!(rho_word(2, 0).is_err());
    }

    #[test]
    fn rho_is_grassmannian_of_length_i() {
        let t = table(3, 8);
        for i in 1..=6 {
            let r = rho(&t, i).unwrap();
            assert_eq!(t.length(r), i);
            assert!(t.is_grassmannian(r));
        }
    }

    #[test]
    fn rho_two_n_has_unique_reduced_word() {
        let t = table(2, 6);
        let r = rho(&t, 4).unwrap();
        assert_eq!(t.reduced_words(r).len(), 1);
    }

    #[test]
    fn rotations_n2() {
        let rots: Vec<String> = rho_rotations(2)
            .iter()
            .map(|w| format_word(w, 2))
            .collect();
        assert_eq!(rots, vec!["1210", "2101", "1012", "0121"]);
    }

    #[test]
    fn rotations_are_n_or_rev_n_templates() {
        for n in [2usize, 3, 4] {
            let mut rots: BTreeSet<Word> = rho_rotations(n).into_iter().collect();
            for k in 1..=n {
                assert!(rots.remove(&n_template(n, k)), "N_{{{k},{}}}", k - 1);
                assert!(rots.remove(&rev_n_template(n, k)), "N~_{{{},{k}}}", k - 1);
            }
            assert!(rots.is_empty());
        }
    }

    #[test]
    fn zee_layer_one_is_all_simples() {
        let t = table(2, 6);
        let z = ZeeIndex::build(&t);
        assert_eq!(z.layer(1).len(), 3);
        assert_eq!(z.layer(0), &[t.identity()]);
        assert!(z.layer(5).is_empty());
    }

    #[test]
    fn zee_layer_two_by_brute_force() {
        // Independent enumeration: all reduced length-2 words embedded in a
        // rotation.
        let t = table(2, 6);
        let z = ZeeIndex::build(&t);
        let mut brute = BTreeSet::new();
        for a in 0..=2u8 {
            for b in 0..=2u8 {
                let w = vec![a, b];
                if t.is_reduced(&w).unwrap()
                    && rho_rotations(2).iter().any(|r| is_subword(&w, r))
                {
                    brute.insert(t.from_word(&w).unwrap());
                }
            }
        }
        assert_eq!(z.layer(2), brute.into_iter().collect::<Vec<_>>());
        assert_eq!(z.layer(2).len(), 5);
    }

    #[test]
    fn unique_grassmannian_in_each_layer() {
        for n in [2usize, 3] {
            let t = table(n, 2 * n);
            let z = ZeeIndex::build(&t);
            for r in 1..=2 * n {
                let grass: Vec<ElemId> = z
                    .layer(r)
                    .iter()
                    .copied()
                    .filter(|&e| t.is_grassmannian(e))
                    .collect();
                assert_eq!(grass, vec![rho(&t, r).unwrap()], "n={n} r={r}");
            }
        }
    }

    #[test]
    fn word_shape_predicates() {
        // Shapes from the rank-4 example: 234101 is a proper N, 20143 a
        // proper reverse N, 312 a V, 24321 a Lambda.
        assert!(is_n_word(4, &[2, 3, 4, 1, 0, 1]));
        assert!(!is_rev_n_word(4, &[2, 3, 4, 1, 0, 1]));
        assert!(is_rev_n_word(4, &[2, 0, 1, 4, 3]));
        assert!(!is_n_word(4, &[2, 0, 1, 4, 3]));
        assert!(is_v_word(&[3, 1, 2]));
        assert!(!is_lambda_word(&[3, 1, 2]));
        assert!(is_lambda_word(&[2, 4, 3, 2, 1]));
        assert!(is_v_word(&[5]) && is_lambda_word(&[5]));
        assert!(is_v_word(&[]) && is_lambda_word(&[]));
    }

    #[test]
    fn zee_words_examples() {
        let t = table(2, 6);
        let z = ZeeIndex::build(&t);
        for i in 0..=2usize {
            let s = t.simple(i).unwrap();
            let words = zee_words(&t, &z, s).unwrap();
            assert_eq!(words, BTreeSet::from([vec![i as u8]]));
        }
        let w = t.from_word(&[1, 2, 1]).unwrap();
        let words = zee_words(&t, &z, w).unwrap();
        // Of the two reduced words of s1 s2 s1, only 121 embeds in a
        // rotation; 212 is neither an N nor a reverse N for n = 2.
        assert_eq!(words, BTreeSet::from([vec![1, 2, 1]]));
        let out = t.from_word(&[0, 1, 0]).unwrap();
        assert!(!z.contains(out));
        assert!(zee_words(&t, &z, out).is_err());
    }

    #[test]
    fn membership_iff_some_zee_word() {
        for n in [2usize, 3] {
            let t = table(n, 2 * n);
            let z = ZeeIndex::build(&t);
            for r in 0..=2 * n {
                for &e in t.layer(r) {
                    let has_z_word = t
                        .reduced_words(e)
                        .iter()
                        .any(|u| is_n_word(n, u) || is_rev_n_word(n, u));
                    assert_eq!(z.contains(e), has_z_word, "n={n} w={}", t.word_string(e));
                }
            }
        }
    }

    #[test]
    fn zee_is_bruhat_downward_closed() {
        for n in [2usize, 3] {
            let t = table(n, 2 * n);
            let z = ZeeIndex::build(&t);
            for r in 1..=2 * n {
                for &w in z.layer(r) {
                    for &v in t.covers_below(w) {
                        assert!(z.contains(v), "n={n}: {} below {}", t.word_string(v), t.word_string(w));
                    }
                }
            }
        }
    }

    #[test]
    fn support_components() {
        let t = table(3, 6);
        let v = t.from_word(&[0, 2, 3, 2]).unwrap();
        let s = support(&t, v);
        assert_eq!(s.components(), &[(0, 0), (2, 3)]);
        assert_eq!(s.component_count(), 2);
        assert_eq!(support(&t, t.identity()).component_count(), 0);
        // Support decomposition of the rank-9 example word.
        let s = Support::from_letters([4usize, 6, 8, 9, 8, 5, 2, 1, 0, 2]);
        assert_eq!(s.components(), &[(0, 2), (4, 6), (8, 9)]);
    }

    #[test]
    fn lee_partition_examples() {
        let t = table(2, 8);
        let w = t.from_word(&[0, 2, 1, 0]).unwrap();
        assert_eq!(lee_partition(&t, w).unwrap().parts(), &[3, 1]);
        for r in 1..=4usize {
            let e = rho(&t, r).unwrap();
            assert_eq!(lee_partition(&t, e).unwrap().parts(), &[r as u32]);
        }
        assert!(lee_partition(&t, t.identity()).unwrap().is_empty());
        let non_grass = t.from_word(&[2, 0]).unwrap();
        assert!(lee_partition(&t, non_grass).is_err());
    }

    #[test]
    fn lee_partition_bijection() {
        for n in [2usize, 3] {
            let t = table(n, 8);
            for d in 0..=8u32 {
                for lambda in crate::symfunc::partition::pcn_partitions(n, d) {
                    let w = partition_to_grassmannian(&t, &lambda).unwrap();
                    assert!(t.is_grassmannian(w));
                    assert_eq!(t.length(w) as u32, d);
                    assert_eq!(lee_partition(&t, w).unwrap(), lambda, "n={n}");
                }
                // Counting: every Grassmannian of length d is hit.
                let grass = t.layer(d as usize).iter().filter(|&&e| t.is_grassmannian(e)).count();
                assert_eq!(
                    grass,
                    crate::symfunc::partition::pcn_partitions(n, d).len(),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn prop_p2_worked_example() {
        let t = table(3, 8);
        let z = ZeeIndex::build(&t);
        let v = t.from_word(&[0, 2, 3, 2]).unwrap();
        // Covers inside Z carry the listed reduced words.
        let covers = z.covers_in_zee(&t, v).unwrap();
        let expect: BTreeSet<ElemId> = [
            vec![1, 0, 2, 3, 2],
            vec![0, 1, 2, 3, 2],
            vec![2, 3, 2, 1, 0],
            vec![2, 3, 2, 0, 1],
        ]
        .into_iter()
        .map(|w| t.from_word(&w).unwrap())
        .collect();
        assert_eq!(covers.iter().copied().collect::<BTreeSet<_>>(), expect);
        assert!(check_prop_p2(&t, &z, v).unwrap());
    }

    #[test]
    fn prop_p2_identity_and_small_rank() {
        let t = table(2, 6);
        let z = ZeeIndex::build(&t);
        assert!(check_prop_p2(&t, &z, t.identity()).unwrap());
        for r in 0..4usize {
            for &v in z.layer(r) {
                assert!(check_prop_p2(&t, &z, v).unwrap(), "v={}", t.word_string(v));
            }
        }
        let top = z.layer(4)[0];
        assert!(check_prop_p2(&t, &z, top).is_err());
    }
}
