//! Checkers for the valuation statements about Gram determinants and degree
//! maps, the closed-form fixtures, and the desk suite that runs them.

mod checks;
mod fixtures;
mod formulas;
mod properties;
mod suite;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub use checks::{
    check_anisotropy, check_example_hilbert, check_middledegree, check_novik_swartz, check_ord_profile,
    check_sigma_display, check_strongg, Expectation, ProfileTarget,
};
pub use fixtures::{fixture, fixture_names, Fixture};
pub use formulas::check_fixture_formulas;
pub use properties::{
    check_basis_invariance, check_degree_normalization, check_dual_oracle, check_flip_antisymmetry,
    check_gram_symmetry, check_locality, check_stellar_block,
};
pub use suite::{desk_suite, run_suite, Claim, GroupedOutcome, Report, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Falsified,
    Inconclusive,
}

/// What a falsified check points at: a size-d subset and the valuation
/// found there when the claim is about valuations, otherwise a description.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ord: Option<i64>,
    pub detail: String,
}

impl Witness {
    pub fn at(subset: &[usize], ord: i64, detail: impl Into<String>) -> Witness {
        Witness { subset: Some(subset.to_vec()), ord: Some(ord), detail: detail.into() }
    }

    pub fn note(detail: impl Into<String>) -> Witness {
        Witness { subset: None, ord: None, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub claim: String,
    pub fixture: String,
    pub status: Status,
    pub evidence: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub runtime_ms: u64,
}

impl CheckOutcome {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

/// Evidence accumulated while a check runs.
pub(crate) struct Recorder {
    evidence: BTreeMap<String, Value>,
}

impl Recorder {
    pub(crate) fn put(&mut self, key: &str, value: impl Serialize) {
        self.evidence.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }
}

pub(crate) type Verdict = (Status, Option<Witness>);

pub(crate) fn verified() -> Result<Verdict> {
    Ok((Status::Verified, None))
}

pub(crate) fn falsified(w: Witness) -> Result<Verdict> {
    Ok((Status::Falsified, Some(w)))
}

pub(crate) fn decide(ok: bool, witness: impl FnOnce() -> Witness) -> Result<Verdict> {
    if ok {
        verified()
    } else {
        falsified(witness())
    }
}

/// Runs a check body. Resource exhaustion becomes an inconclusive outcome;
/// other errors are passed through.
pub(crate) fn run_check(
    claim: &str,
    fixture: &str,
    body: impl FnOnce(&mut Recorder) -> Result<Verdict>,
) -> Result<CheckOutcome> {
    let start = Instant::now();
    let mut rec = Recorder { evidence: BTreeMap::new() };
    let (status, witness) = match body(&mut rec) {
        Ok(v) => v,
        Err(e @ (Error::Budget(_) | Error::PrecisionExhausted | Error::Unsupported(_))) => {
            rec.put("reason", e.to_string());
            (Status::Inconclusive, None)
        }
        Err(e) => return Err(e),
    };
    Ok(CheckOutcome {
        claim: claim.to_string(),
        fixture: fixture.to_string(),
        status,
        evidence: rec.evidence,
        witness,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// Term ceiling for exact numerators before a check gives up as inconclusive.
pub const DEFAULT_TERM_BUDGET: usize = 2_000_000;

pub(crate) fn within_budget(terms: usize) -> Result<()> {
    if terms > DEFAULT_TERM_BUDGET {
        return Err(Error::Budget(terms));
    }
    Ok(())
}
