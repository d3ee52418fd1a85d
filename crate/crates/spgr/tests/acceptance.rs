//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Everything is exact integer arithmetic; there are no tolerances to
//! tune.

use spgr::par::Mode;
use spgr::verify::{CheckResult, Runner, Suite};
use std::sync::LazyLock;

static RUNNER: LazyLock<Runner> = LazyLock::new(Runner::new);

fn report(criterion: &str, results: Vec<CheckResult>) {
    let ok = results.iter().all(|r| r.passed);
    println!(
        "criterion {criterion}: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    for r in &results {
        if !r.passed {
            println!("  {r}");
        }
    }
    assert!(ok, "criterion {criterion} failed");
}

#[test]
fn criterion_01_special_element_tables() {
    // n=2 (i=1..4), n=3 (i=1..6), n=4 (i=1..4); exact.
    let results = RUNNER.run(Suite::AppendixA).unwrap();
    assert_eq!(results.len(), 4 + 6 + 4);
    report("1 (special element tables)", results);
}

#[test]
fn criterion_02_stanley_function_tables() {
    // All rows, degrees 1..7, n=2 and n=3; exact.
    let results = RUNNER.run(Suite::AppendixB).unwrap();
    assert_eq!(results.len(), 7 + 7);
    report("2 (Stanley function tables)", results);
}

#[test]
fn criterion_03_dual_schubert_tables() {
    // n=2 degrees 1..7, n=3 degrees 0..7; exact.
    let results = RUNNER.run(Suite::AppendixC).unwrap();
    assert_eq!(results.len(), 7 + 8);
    report("3 (dual Schubert tables)", results);
}

#[test]
fn criterion_04_cover_sum_identity() {
    // Sum over covers in Z of 2^(c(w)-1) alpha_vw^v = 2^c(v) K for every
    // v in Z with l(v) < 2n, n in {2,3,4}.
    let results = (2..=4)
        .map(|n| RUNNER.prop_p2_check(n, Mode::Parallel))
        .collect();
    report("4 (cover-sum identity)", results);
}

#[test]
fn criterion_05_generator_coproduct() {
    // Evaluated coproduct of pp_r has the special shape for all r <= 2n,
    // n in {2,3}.
    let results = (2..=3).map(|n| RUNNER.t_phip_check(n)).collect();
    report("5 (generator coproduct identity)", results);
}

#[test]
fn criterion_06_coproduct_oracle_equivalence() {
    // Closed formula == recursive tensor computation: exhaustive for n=2
    // up to length 5 and on 50 sampled elements for n=3.
    let results = vec![
        RUNNER.coproduct_oracle_check_n2(Mode::Parallel),
        RUNNER.coproduct_oracle_check_n3(Mode::Parallel),
    ];
    report("6 (coproduct oracle equivalence)", results);
}

#[test]
fn criterion_07_pieri_consistency() {
    // Pieri rule == Schubert-basis expansion of pp_i pp_w for all
    // Grassmannian w with l(w) <= 5 and all i, n=2.
    report(
        "7 (Pieri consistency)",
        vec![RUNNER.pieri_consistency_check()],
    );
}

#[test]
fn criterion_08_duality_pairing() {
    // Dual polynomials pair with the Stanley functions as the identity for
    // equal-length Grassmannian pairs up to degree 7, n in {2,3}.
    let results = (2..=3).map(|n| RUNNER.duality_pairing_check(n)).collect();
    report("8 (duality pairing)", results);
}

#[test]
fn criterion_09_stanley_symmetry() {
    // Generating-function symmetry for all elements up to length 6,
    // n in {2,3}.
    let results = (2..=3)
        .map(|n| RUNNER.symmetry_check(n, Mode::Parallel))
        .collect();
    report("9 (Stanley symmetry)", results);
}

#[test]
fn criterion_10_even_degree_relations() {
    // pp_{2m} relation for all m <= n, n in {2,3}.
    let results = (2..=3).map(|n| RUNNER.even_relation_suite(n)).collect();
    report("10 (even-degree relations)", results);
}
