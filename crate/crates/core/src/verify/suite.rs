use rayon::prelude::*;
use serde::Serialize;

use super::checks::*;
use super::fixtures::fixture;
use super::formulas::check_fixture_formulas;
use super::properties::*;
use super::{CheckOutcome, Status};
use crate::error::Result;
use crate::field::Field;

pub const SCHEMA_VERSION: u32 = 1;

type Runner = Box<dyn Fn() -> Result<CheckOutcome> + Send + Sync>;

/// One entry of a suite: the acceptance group it belongs to and how to run it.
pub struct Claim {
    pub group: String,
    pub run: Runner,
}

impl Claim {
    fn new(group: &str, run: impl Fn() -> Result<CheckOutcome> + Send + Sync + 'static) -> Claim {
        Claim { group: group.to_string(), run: Box::new(run) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupedOutcome {
    pub group: String,
    #[serde(flatten)]
    pub outcome: CheckOutcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub field: String,
    pub seed: u64,
    pub outcomes: Vec<GroupedOutcome>,
}

impl Report {
    pub fn count(&self, s: Status) -> usize {
        self.outcomes.iter().filter(|o| o.outcome.status == s).count()
    }

    /// 0 when everything verified, 2 when something was falsified,
    /// 3 when something was inconclusive and nothing falsified.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Falsified) > 0 {
            2
        } else if self.count(Status::Inconclusive) > 0 {
            3
        } else {
            0
        }
    }

    /// The report with runtimes zeroed, for comparing reruns.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for o in &mut r.outcomes {
            o.outcome.runtime_ms = 0;
        }
        r
    }
}

/// Runs claims on the current rayon pool; outcomes keep the claim order.
pub fn run_suite(claims: &[Claim], field: Field, seed: u64) -> Result<Report> {
    let outcomes = claims
        .par_iter()
        .map(|c| Ok(GroupedOutcome { group: c.group.clone(), outcome: (c.run)()? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report { schema_version: SCHEMA_VERSION, field: field.to_string(), seed, outcomes })
}

/// The desk-scale suite. Groups "1" to "9" follow the acceptance list;
/// checks that fix their own field (characteristic 2 examples) ignore
/// `field`.
pub fn desk_suite(field: Field, seed: u64) -> Vec<Claim> {
    let mut v = Vec::new();
    let gf = Field::binary(10).expect("GF(2^10)");
    let exact_deg = Expectation::Exact { facet: -1, other: 0 };
    let parity = Expectation::Parity { facet: 1, other: 0 };

    for name in ["simplex_boundary:2", "simplex_boundary:3", "simplex_boundary:4", "sigma:2", "sigma:3", "octahedron"] {
        v.push(Claim::new("1", move || check_degree_normalization(&fixture(name)?, field, seed)));
    }
    for name in ["sigma:2", "sigma:3", "octahedron"] {
        v.push(Claim::new("2", move || check_dual_oracle(&fixture(name)?, field, seed)));
    }
    for (name, exact) in [
        ("simplex_boundary:2", true),
        ("simplex_boundary:3", true),
        ("sigma:2", true),
        ("sigma:3", true),
        ("octahedron", false),
        ("stacked:3:2", false),
    ] {
        v.push(Claim::new("3", move || {
            check_ord_profile(&fixture(name)?, field, seed, ProfileTarget::PowerDegree, exact_deg, exact)
        }));
    }
    v.push(Claim::new("3", move || {
        check_ord_profile(&fixture("rp2_suspension")?, gf, seed, ProfileTarget::PowerDegree, exact_deg, false)
    }));
    for name in ["sigma:2", "simplex_boundary:4", "cycle:4", "pentagon", "stacked:4:1"] {
        v.push(Claim::new("4", move || check_middledegree(&fixture(name)?, field, seed)));
    }
    v.push(Claim::new("5", move || check_sigma_display(3, 1, field, seed)));
    v.push(Claim::new("5", move || {
        check_ord_profile(&fixture("stacked:3:1")?, field, seed, ProfileTarget::Gram { q: 1 }, parity, true)
    }));
    v.push(Claim::new("6", move || check_example_hilbert(seed)));
    v.push(Claim::new("7", move || check_anisotropy(field, seed)));
    for name in [
        "simplex_boundary:3",
        "simplex_boundary:4",
        "sigma:2",
        "sigma:3",
        "sigma:4",
        "octahedron",
        "cycle:4",
        "pentagon",
        "stacked:3:2",
        "stacked:4:1",
    ] {
        v.push(Claim::new("8", move || check_novik_swartz(&fixture(name)?, field, seed)));
    }
    v.push(Claim::new("8", move || check_novik_swartz(&fixture("rp2")?, gf, seed)));
    for (name, q) in [("sigma:3", 1), ("octahedron", 1), ("pentagon", 1), ("stacked:4:1", 2)] {
        v.push(Claim::new("9", move || check_basis_invariance(&fixture(name)?, field, seed, q, 5)));
    }
    for name in ["sigma:3", "octahedron"] {
        v.push(Claim::new("9", move || check_gram_symmetry(&fixture(name)?, field, seed, 1)));
        v.push(Claim::new("9", move || check_flip_antisymmetry(&fixture(name)?, field, seed)));
    }
    v.push(Claim::new("9", move || check_locality(&fixture("octahedron")?, field, seed)));
    for (name, q) in [("octahedron", 1), ("sigma:3", 1), ("simplex_boundary:4", 2)] {
        v.push(Claim::new("9", move || check_stellar_block(&fixture(name)?, field, seed, q)));
    }
    for name in ["simplex_boundary:2", "simplex_boundary:3", "s0", "sigma:2", "sigma:3", "stacked:4:1"] {
        v.push(Claim::new("formulas", move || check_fixture_formulas(name, field, seed)));
    }
    for (name, q, sub) in [("sigma:3", 1, true), ("octahedron", 1, true), ("pentagon", 1, false), ("simplex_boundary:3", 1, false)] {
        v.push(Claim::new("strong_lefschetz", move || check_strongg(&fixture(name)?, field, seed, q, sub)));
    }
    v
}
