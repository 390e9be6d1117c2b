//! One test per acceptance criterion. Each writes a PASS/FAIL line with its
//! runtime and budget to stderr, bypassing output capture.

use std::io::Write;
use std::time::{Duration, Instant};

use hodgeform::verify::{
    check_ord_profile, desk_suite, fixture, run_suite, Expectation, ProfileTarget, Report, Status,
};
use hodgeform::Field;

const SEED: u64 = 1;

fn report_line(id: usize, title: &str, pass: bool, elapsed: Duration, budget: Duration, detail: &str) {
    let line = format!(
        "criterion {id:>2} {} {title}: {:.2} s (budget {} s){detail}\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}

/// Runs the desk-suite claims of one group over Q.
fn group(id: usize, title: &str, budget_secs: u64) {
    let field = Field::Rational;
    let claims: Vec<_> = desk_suite(field, SEED).into_iter().filter(|c| c.group == id.to_string()).collect();
    assert!(!claims.is_empty());
    let start = Instant::now();
    let report = run_suite(&claims, field, SEED).expect("checks run");
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_secs);
    let failures: Vec<String> = report
        .outcomes
        .iter()
        .filter(|o| o.outcome.status != Status::Verified)
        .map(|o| format!("{} on {}: {:?}", o.outcome.claim, o.outcome.fixture, o.outcome.status))
        .collect();
    let pass = failures.is_empty() && elapsed <= budget;
    let detail = if failures.is_empty() { format!(", {} checks", claims.len()) } else { format!(", {}", failures.join("; ")) };
    report_line(id, title, pass, elapsed, budget, &detail);
    assert!(failures.is_empty(), "{failures:?}");
    assert!(elapsed <= budget, "took {elapsed:?}");
}

#[test]
fn criterion_01_degree_normalization() {
    group(1, "deg(x_F) = e_F/[F] on every facet", 5);
}

#[test]
fn criterion_02_dual_oracle() {
    group(2, "Cramer rewriting equals the Karu-Xiao formula", 60);
}

#[test]
fn criterion_03_top_degree_valuations() {
    group(3, "ord of deg(l^d) is -1 on facets and 0 elsewhere", 300);
}

#[test]
fn criterion_04_middle_degree() {
    group(4, "middle Gram determinant over prod [F] is a scalar times a square", 600);
}

#[test]
fn criterion_05_degree_one_gram() {
    group(5, "D_1 square class on the suspension and a stacked sphere", 600);
}

#[test]
fn criterion_06_binary_hilbert_functions() {
    group(6, "Hilbert functions over GF(2^10), random and split systems", 120);
}

#[test]
fn criterion_07_anisotropy() {
    group(7, "x3 nonzero with x3^2 = 0 for a punctured system", 1);
}

#[test]
fn criterion_08_gorenstein_dimensions() {
    group(8, "Gorenstein quotient dimensions match the Betti-number formula", 120);
}

#[test]
fn criterion_09_properties() {
    group(9, "basis invariance, symmetry, locality, flips, stellar blocks", 300);
}

#[test]
fn criterion_10_negative_control() {
    let budget = Duration::from_secs(60);
    let start = Instant::now();
    let fx = fixture("corrupted_octahedron").unwrap();
    let outcome = check_ord_profile(
        &fx,
        Field::Rational,
        SEED,
        ProfileTarget::Gram { q: 1 },
        Expectation::Parity { facet: 1, other: 0 },
        false,
    )
    .unwrap();
    let elapsed = start.elapsed();
    let witness = outcome.witness.clone().expect("falsified outcomes carry a witness");
    let report = Report {
        schema_version: hodgeform::verify::SCHEMA_VERSION,
        field: "0".into(),
        seed: SEED,
        outcomes: vec![hodgeform::verify::GroupedOutcome { group: "10".into(), outcome: outcome.clone() }],
    };
    let pass = outcome.status == Status::Falsified && witness.subset.is_some() && report.exit_code() == 2;
    let detail = format!(", witness {:?} with ord {:?}, exit code {}", witness.subset, witness.ord, report.exit_code());
    report_line(10, "corrupted orientation is falsified", pass, elapsed, budget, &detail);
    assert!(pass);
    let subset = witness.subset.unwrap();
    assert!(fx.complex.is_facet(&subset));
    assert_eq!(witness.ord.unwrap().rem_euclid(2), 0);
}
