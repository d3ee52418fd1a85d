//! Verification suites: golden-table regressions against the shipped
//! reference data and the property checks. Each check yields a pass/fail
//! line; suites fan out over independent checks (and the heavy sweeps over
//! their elements) through the parallel shim.

use crate::coproduct;
use crate::error::{Error, Result};
use crate::golden;
use crate::nilcoxeter::{self, NilCoxElem};
use crate::nilhecke::{delta_recursive, phi0_tensor, LevelZero};
use crate::par::{self, Mode};
use crate::schubert;
use crate::weyl::ElemId;
use crate::words::parse_word;
use crate::zee;
use crate::Session;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    AppendixA,
    AppendixB,
    AppendixC,
    Properties,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "appendix-a" => Ok(Suite::AppendixA),
            "appendix-b" => Ok(Suite::AppendixB),
            "appendix-c" => Ok(Suite::AppendixC),
            "properties" => Ok(Suite::Properties),
            "all" => Ok(Suite::All),
            other => Err(Error::Domain(format!(
                "unknown suite `{other}` (expected appendix-a, appendix-b, appendix-c, properties, all)"
            ))),
        }
    }
}

type GoldenRow<'a> = (String, &'a BTreeMap<String, i64>);

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn from_flag(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> CheckResult {
        if ok {
            CheckResult::pass(name)
        } else {
            CheckResult::fail(name, detail)
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name
        )?;
        if !self.passed && !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Shared sessions for a suite run, built once per rank.
pub struct Runner {
    s2: Arc<Session>,
    s3: Arc<Session>,
    s4: Arc<Session>,
}

impl Default for Runner {
    fn default() -> Self {
        Self::new()
    }
}

impl Runner {
    pub fn new() -> Runner {
        Runner {
            s2: Arc::new(Session::with_cap(2, 9)),
            s3: Arc::new(Session::with_cap(3, 7)),
            s4: Arc::new(Session::with_cap(4, 8)),
        }
    }

    pub fn session(&self, n: usize) -> &Session {
        match n {
            2 => &self.s2,
            3 => &self.s3,
            4 => &self.s4,
            _ => panic!("no prebuilt session for n={n}"),
        }
    }

    pub fn run(&self, suite: Suite) -> Result<Vec<CheckResult>> {
        match suite {
            Suite::AppendixA => self.appendix_a(),
            Suite::AppendixB => self.appendix_table("qfun"),
            Suite::AppendixC => self.appendix_table("pfun"),
            Suite::Properties => self.properties(),
            Suite::All => {
                let mut out = self.appendix_a()?;
                out.extend(self.appendix_table("qfun")?);
                out.extend(self.appendix_table("pfun")?);
                out.extend(self.properties()?);
                Ok(out)
            }
        }
    }

    /// Special elements against the reference tables.
    fn appendix_a(&self) -> Result<Vec<CheckResult>> {
        let mut out = Vec::new();
        for n in [2usize, 3, 4] {
            let table = golden::load(&golden::table_name("pp", n))?;
            let session = self.session(n);
            for (row, cols) in &table.rows {
                let i: usize = row
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad pp row key {row}")))?;
                let name = format!("appendix-a n={n} pp_{i}");
                let expect = parse_nilcox(session, cols)?;
                let got = nilcoxeter::pp_generator(session.table(), session.zee(), i)?;
                out.push(CheckResult::from_flag(
                    name,
                    got == expect,
                    format!("computed {}", got.render(session.table())),
                ));
            }
        }
        Ok(out)
    }

    /// Stanley functions (`qfun`) or dual Schubert polynomials (`pfun`)
    /// against the reference tables, one check per (n, degree).
    fn appendix_table(&self, kind: &str) -> Result<Vec<CheckResult>> {
        let mut out = Vec::new();
        for n in [2usize, 3] {
            let table = golden::load(&golden::table_name(kind, n))?;
            let session = self.session(n);
            let mut by_degree: BTreeMap<usize, Vec<GoldenRow<'_>>> = BTreeMap::new();
            for (row, cols) in &table.rows {
                let word = parse_word(row, n)?;
                by_degree
                    .entry(word.len())
                    .or_default()
                    .push((row.clone(), cols));
            }
            let degrees: Vec<_> = by_degree.into_iter().collect();
            let kind_owned = kind.to_string();
            let results = par::map_collect(degrees, |(degree, rows)| {
                self.check_degree(session, &kind_owned, n, degree, &rows)
            });
            out.extend(results);
        }
        Ok(out)
    }

    fn check_degree(
        &self,
        session: &Session,
        kind: &str,
        n: usize,
        degree: usize,
        rows: &[GoldenRow<'_>],
    ) -> CheckResult {
        let name = format!("appendix-{} n={n} degree {degree} ({} rows)",
            if kind == "qfun" { "b" } else { "c" }, rows.len());
        let table = session.table();
        // The table rows must cover the Grassmannian layer exactly.
        let grass: Vec<ElemId> = table
            .layer(degree)
            .iter()
            .copied()
            .filter(|&e| table.is_grassmannian(e))
            .collect();
        if grass.len() != rows.len() {
            return CheckResult::fail(
                name,
                format!("{} rows but {} Grassmannian elements", rows.len(), grass.len()),
            );
        }
        for (row, cols) in rows {
            let w = match parse_word(row, n).and_then(|u| table.from_word(&u)) {
                Ok(w) => w,
                Err(e) => return CheckResult::fail(name, e.to_string()),
            };
            if !grass.contains(&w) {
                return CheckResult::fail(name, format!("row {row} is not Grassmannian"));
            }
            let got: BTreeMap<String, i64> = match kind {
                "qfun" => match schubert::affine_stanley(table, session.zee(), w) {
                    Ok(q) => q
                        .terms()
                        .map(|(p, c)| (p.render(), c))
                        .collect(),
                    Err(e) => return CheckResult::fail(name, e.to_string()),
                },
                _ => match schubert::dual_kschur(table, session.zee(), w) {
                    Ok(p) => p
                        .into_iter()
                        .map(|(p, c)| (p.render(), c))
                        .collect(),
                    Err(e) => return CheckResult::fail(name, e.to_string()),
                },
            };
            let expect: BTreeMap<String, i64> =
                cols.iter().map(|(k, &v)| (k.clone(), v)).collect();
            if got != expect {
                return CheckResult::fail(
                    name,
                    format!("row {row}: computed {got:?}, table {expect:?}"),
                );
            }
        }
        CheckResult::pass(name)
    }

    fn properties(&self) -> Result<Vec<CheckResult>> {
        type Check<'a> = Box<dyn Fn() -> CheckResult + Send + Sync + 'a>;
        let mut checks: Vec<Check> = Vec::new();

        checks.push(Box::new(golden_checksums_check));

        for n in [2usize, 3, 4] {
            checks.push(Box::new(move || self.prop_p2_check(n, Mode::Parallel)));
            checks.push(Box::new(move || self.generator_membership_check(n)));
        }
        for n in [2usize, 3] {
            checks.push(Box::new(move || self.t_phip_check(n)));
            checks.push(Box::new(move || self.generator_span_check(n, 7)));
            checks.push(Box::new(move || self.duality_pairing_check(n)));
            checks.push(Box::new(move || self.symmetry_check(n, Mode::Parallel)));
            checks.push(Box::new(move || self.even_relation_suite(n)));
            checks.push(Box::new(move || self.cr_surjectivity_check(n)));
            checks.push(Box::new(move || self.triangularity_check(n)));
        }
        checks.push(Box::new(|| self.coproduct_oracle_check_n2(Mode::Parallel)));
        checks.push(Box::new(|| self.coproduct_oracle_check_n3(Mode::Parallel)));
        checks.push(Box::new(|| self.pieri_consistency_check()));

        Ok(par::map_collect(checks, |c| c()))
    }

    /// Cover-sum identity over every short-enough member of `Z`.
    pub fn prop_p2_check(&self, n: usize, mode: Mode) -> CheckResult {
        let name = format!("properties prop-p2 n={n}");
        let session = self.session(n);
        let mut elems = Vec::new();
        for r in 0..2 * n {
            elems.extend(session.zee().layer(r).iter().copied());
        }
        let failures: Vec<String> = par::map_collect_mode(mode, elems, |v| {
            match zee::check_prop_p2(session.table(), session.zee(), v) {
                Ok(true) => None,
                Ok(false) => Some(session.table().word_string(v)),
                Err(e) => Some(format!("{}: {e}", session.table().word_string(v))),
            }
        })
        .into_iter()
        .flatten()
        .collect();
        CheckResult::from_flag(name, failures.is_empty(), format!("failed at {failures:?}"))
    }

    /// Coproduct identity for the special generators.
    pub fn t_phip_check(&self, n: usize) -> CheckResult {
        let name = format!("properties t-phip n={n}");
        let session = self.session(n);
        for r in 1..=2 * n {
            match coproduct::verify_t_phip(session.table(), session.zee(), r) {
                Ok(true) => {}
                Ok(false) => return CheckResult::fail(name, format!("fails at r={r}")),
                Err(e) => return CheckResult::fail(name, format!("r={r}: {e}")),
            }
        }
        CheckResult::pass(name)
    }

    /// Closed coproduct formula vs the tensor-module oracle, exhaustive for
    /// n=2 up to length 5.
    pub fn coproduct_oracle_check_n2(&self, mode: Mode) -> CheckResult {
        let session = self.session(2);
        let elems: Vec<ElemId> = (0..=5)
            .flat_map(|r| session.table().layer(r).to_vec())
            .collect();
        self.coproduct_oracle_on(
            "properties coproduct-oracle n=2 (lengths <= 5)",
            session,
            elems,
            mode,
        )
    }

    /// Same check on a deterministic 50-element sample at n=3.
    pub fn coproduct_oracle_check_n3(&self, mode: Mode) -> CheckResult {
        let session = self.session(3);
        let all: Vec<ElemId> = (1..=5)
            .flat_map(|r| session.table().layer(r).to_vec())
            .collect();
        let stride = all.len().div_ceil(50).max(1);
        let sample: Vec<ElemId> = all.into_iter().step_by(stride).take(50).collect();
        self.coproduct_oracle_on(
            "properties coproduct-oracle n=3 (50 samples)",
            session,
            sample,
            mode,
        )
    }

    fn coproduct_oracle_on(
        &self,
        name: &str,
        session: &Session,
        elems: Vec<ElemId>,
        mode: Mode,
    ) -> CheckResult {
        let lz = match LevelZero::new(session.table().cartan()) {
            Ok(lz) => lz,
            Err(e) => return CheckResult::fail(name, e.to_string()),
        };
        let table = session.table();
        let failures: Vec<String> = par::map_collect_mode(mode, elems, |w| {
            let closed = coproduct::phi0_delta_closed(table, w);
            let oracle = delta_recursive(table, &lz, w).map(|t| phi0_tensor(&t));
            match (closed, oracle) {
                (Ok(a), Ok(b)) if a == b => None,
                _ => Some(table.word_string(w)),
            }
        })
        .into_iter()
        .flatten()
        .collect();
        CheckResult::from_flag(name, failures.is_empty(), format!("failed at {failures:?}"))
    }

    /// Pieri rule vs multiplying out in the Schubert basis.
    pub fn pieri_consistency_check(&self) -> CheckResult {
        let name = "properties pieri-consistency n=2 (l(w) <= 5, all i)";
        let session = self.session(2);
        let table = session.table();
        let zee = session.zee();
        for d in 0..=5usize {
            let schuberts = match nilcoxeter::pp_schubert_layer(table, d) {
                Ok(s) => s,
                Err(e) => return CheckResult::fail(name, e.to_string()),
            };
            for (&w, ppw) in &schuberts {
                for i in 1..=4usize {
                    let direct = nilcoxeter::pieri(table, zee, i, w);
                    let via_product = nilcoxeter::pp_generator(table, zee, i)
                        .and_then(|ppi| nilcoxeter::multiply(table, &ppi, ppw))
                        .and_then(|prod| nilcoxeter::expand_in_pp_basis(table, &prod));
                    match (direct, via_product) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (a, b) => {
                            return CheckResult::fail(
                                name,
                                format!(
                                    "w={} i={i}: pieri {a:?} vs product {b:?}",
                                    table.word_string(w)
                                ),
                            )
                        }
                    }
                }
            }
        }
        CheckResult::pass(name)
    }

    /// Dual-basis pairing is the identity matrix, degree by degree.
    pub fn duality_pairing_check(&self, n: usize) -> CheckResult {
        let name = format!("properties duality-pairing n={n} (degrees <= 7)");
        let session = self.session(n);
        for d in 1..=7usize {
            match schubert::check_pairing_duality(session.table(), session.zee(), d) {
                Ok(true) => {}
                Ok(false) => return CheckResult::fail(name, format!("fails at degree {d}")),
                Err(e) => return CheckResult::fail(name, format!("degree {d}: {e}")),
            }
        }
        CheckResult::pass(name)
    }

    /// Symmetry of the Stanley generating function.
    pub fn symmetry_check(&self, n: usize, mode: Mode) -> CheckResult {
        let name = format!("properties stanley-symmetry n={n} (lengths <= 6)");
        let session = self.session(n);
        let table = session.table();
        let zee = session.zee();
        let elems: Vec<ElemId> = (0..=6).flat_map(|r| table.layer(r).to_vec()).collect();
        let failures: Vec<String> = par::map_collect_mode(mode, elems, |w| {
            (!schubert::stanley_symmetry_check(table, zee, w)).then(|| table.word_string(w))
        })
        .into_iter()
        .flatten()
        .collect();
        CheckResult::from_flag(name, failures.is_empty(), format!("failed at {failures:?}"))
    }

    /// Every special element passes the coroot-sum membership test, and its
    /// Grassmannian support is exactly the special Grassmannian element.
    pub fn generator_membership_check(&self, n: usize) -> CheckResult {
        let name = format!("properties fomin-stanley-generators n={n}");
        let session = self.session(n);
        let table = session.table();
        for r in 1..=2 * n {
            let pp = match nilcoxeter::pp_generator(table, session.zee(), r) {
                Ok(p) => p,
                Err(e) => return CheckResult::fail(name, format!("r={r}: {e}")),
            };
            match nilcoxeter::is_fomin_stanley(table, &pp) {
                Ok(true) => {}
                Ok(false) => return CheckResult::fail(name, format!("fails at r={r}")),
                Err(e) => return CheckResult::fail(name, format!("r={r}: {e}")),
            }
            let grass: Vec<(ElemId, i64)> = pp
                .terms()
                .filter(|&(e, _)| table.is_grassmannian(e))
                .collect();
            let rho_r = match zee::rho(table, r) {
                Ok(e) => e,
                Err(e) => return CheckResult::fail(name, format!("r={r}: {e}")),
            };
            if grass != vec![(rho_r, 1)] {
                return CheckResult::fail(name, format!("Grassmannian part wrong at r={r}"));
            }
        }
        CheckResult::pass(name)
    }

    /// The special elements generate the Fomin-Stanley subalgebra degree by
    /// degree: products of `pp_r` over partitions with parts `<= 2n` expand
    /// in the Schubert basis (membership) and span the full degree
    /// component (rank equals the number of Grassmannian elements).
    pub fn generator_span_check(&self, n: usize, max_degree: usize) -> CheckResult {
        let name = format!("properties generator-span n={n} (degrees <= {max_degree})");
        let session = self.session(n);
        let table = session.table();
        for d in 1..=max_degree {
            let grass: Vec<ElemId> = table
                .layer(d)
                .iter()
                .copied()
                .filter(|&e| table.is_grassmannian(e))
                .collect();
            let mut rows = Vec::new();
            for lambda in crate::symfunc::partition::partitions_bounded(d as u32, 2 * n as u32) {
                let mut prod = NilCoxElem::basis(table.identity());
                for &part in lambda.parts() {
                    let pp = match nilcoxeter::pp_generator(table, session.zee(), part as usize) {
                        Ok(p) => p,
                        Err(e) => return CheckResult::fail(name, e.to_string()),
                    };
                    prod = match nilcoxeter::multiply(table, &prod, &pp) {
                        Ok(p) => p,
                        Err(e) => return CheckResult::fail(name, e.to_string()),
                    };
                }
                match nilcoxeter::expand_in_pp_basis(table, &prod) {
                    Ok(exp) => rows.push(
                        grass
                            .iter()
                            .map(|g| crate::linalg::rat(exp.get(g).copied().unwrap_or(0)))
                            .collect::<Vec<_>>(),
                    ),
                    Err(e) => {
                        return CheckResult::fail(
                            name,
                            format!("product for {lambda} left the Schubert span: {e}"),
                        )
                    }
                }
            }
            let rank = crate::linalg::rank(&rows);
            if rank != grass.len() {
                return CheckResult::fail(
                    name,
                    format!("degree {d}: rank {rank} < dimension {}", grass.len()),
                );
            }
        }
        CheckResult::pass(name)
    }

    pub fn even_relation_suite(&self, n: usize) -> CheckResult {
        let name = format!("properties even-relations n={n}");
        let session = self.session(n);
        for m in 1..=n {
            match nilcoxeter::even_relation_check(session.table(), session.zee(), m) {
                Ok(true) => {}
                Ok(false) => return CheckResult::fail(name, format!("fails at m={m}")),
                Err(e) => return CheckResult::fail(name, format!("m={m}: {e}")),
            }
        }
        CheckResult::pass(name)
    }

    pub fn cr_surjectivity_check(&self, n: usize) -> CheckResult {
        let name = format!("properties cr-surjectivity n={n} (r <= 7)");
        let session = self.session(n);
        for r in 1..=7usize {
            match schubert::check_cr_surjectivity(session.table(), session.zee(), r) {
                Ok(true) => {}
                Ok(false) => return CheckResult::fail(name, format!("fails at r={r}")),
                Err(e) => return CheckResult::fail(name, format!("r={r}: {e}")),
            }
        }
        CheckResult::pass(name)
    }

    pub fn triangularity_check(&self, n: usize) -> CheckResult {
        let name = format!("properties stanley-triangularity n={n} (degrees <= 7)");
        let session = self.session(n);
        for d in 0..=7usize {
            match schubert::check_triangularity(session.table(), session.zee(), d) {
                Ok(true) => {}
                Ok(false) => return CheckResult::fail(name, format!("fails at degree {d}")),
                Err(e) => return CheckResult::fail(name, format!("degree {d}: {e}")),
            }
        }
        CheckResult::pass(name)
    }
}

fn golden_checksums_check() -> CheckResult {
    let name = "properties golden-checksums";
    match golden::verify_checksums() {
        Ok(list) => {
            let bad: Vec<String> = list
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|(n, _)| n)
                .collect();
            CheckResult::from_flag(name, bad.is_empty(), format!("drift in {bad:?}"))
        }
        Err(e) => CheckResult::fail(name, e.to_string()),
    }
}

/// Builds a nilCoxeter element from a golden row of word -> coefficient.
fn parse_nilcox(session: &Session, cols: &BTreeMap<String, i64>) -> Result<NilCoxElem> {
    let table = session.table();
    let mut out = NilCoxElem::zero();
    for (word, &c) in cols {
        let letters = parse_word(word, table.rank())?;
        if !table.is_reduced(&letters)? {
            return Err(Error::BadWord(format!("golden word {word} is not reduced")));
        }
        out.add_term(table.from_word(&letters)?, c);
    }
    Ok(out)
}

/// Compares a computed map against a golden row (used by the corrupted-entry
/// self-test).
pub fn diff_rows(
    got: &BTreeMap<String, i64>,
    expect: &BTreeMap<String, i64>,
) -> Vec<(String, i64, i64)> {
    let mut out = Vec::new();
    for key in got.keys().chain(expect.keys()) {
        let g = got.get(key).copied().unwrap_or(0);
        let e = expect.get(key).copied().unwrap_or(0);
        if g != e && !out.iter().any(|(k, _, _)| k == key) {
            out.push((key.clone(), g, e));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!(Suite::from_str("appendix-a").unwrap(), Suite::AppendixA);
        assert_eq!(Suite::from_str("all").unwrap(), Suite::All);
        assert!(Suite::from_str("bogus").is_err());
    }

    #[test]
    fn corrupted_golden_entry_is_caught() {
        // Harness self-test: corrupt exactly one entry and expect exactly
        // one differing key.
        let table: golden::GoldenTable =
            serde_json::from_str(&golden::load_raw("qfun_n2.json").unwrap()).unwrap();
        let mut corrupted = table.clone();
        let row = corrupted.rows.get_mut("0210").unwrap();
        *row.get_mut("22").unwrap() += 1;
        let diffs = diff_rows(&corrupted.rows["0210"], &table.rows["0210"]);
        assert_eq!(diffs.len(), 1);
        assert_eq!(diffs[0].0, "22");
        let clean = diff_rows(&corrupted.rows["1210"], &table.rows["1210"]);
        assert!(clean.is_empty());
    }
}
