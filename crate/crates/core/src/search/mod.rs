//! Brute-force checks over small families: union-closed enumeration, the
//! `k = 2` frequency bound, the minimal-cover involution, and the counting
//! forms of the three lemmas behind the trace-count programs.

mod corpus;
mod covers;
mod enumerate;
mod lemmas;
mod nagel;

pub use corpus::{check_lemma_corpus, random_union_closed, CorpusSpec};
pub use covers::{
    cover_theorem_exhaustive, cover_theorem_sampled, verify_cover_theorem, COVER_SAMPLE_SEED,
    COVER_SAMPLE_SIZE,
};
pub use enumerate::{
    enumerate_union_closed, for_each_in_partition, for_each_union_closed, partitions,
    EnumerationSpec, Partition, MAX_ENUMERATION_N,
};
pub use lemmas::spot_check_lemmas;
pub use nagel::verify_nagel_k2;

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::rational::format_rat;
use crate::setfam::{io, FamilyError, SetFamily};

/// Witness families kept per report; the total is in `witness_count`.
pub const WITNESS_LIMIT: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("n = {n} exceeds the exhaustive limit {max}")]
    TooLarge { n: u8, max: u8 },
    #[error("invalid search parameters: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: String,
    pub family: SetFamily,
    pub detail: String,
}

/// Outcome of a batch of checks. Reports from independent partitions merge
/// with [`VerificationReport::merge`]; merging in a fixed order gives the
/// same report regardless of how the work was split.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub families_checked: u64,
    /// Smallest `f_2` seen, for frequency searches.
    pub min_f2: Option<BigRational>,
    /// The first [`WITNESS_LIMIT`] families attaining `min_f2`.
    pub witnesses: Vec<SetFamily>,
    pub witness_count: u64,
    /// How many times each named check was applied.
    pub checks: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&mut self, check: &str) {
        self.count_many(check, 1);
    }

    pub fn count_many(&mut self, check: &str, times: u64) {
        if times > 0 {
            *self.checks.entry(check.to_string()).or_default() += times;
        }
    }

    pub fn checks_of(&self, check: &str) -> u64 {
        self.checks.get(check).copied().unwrap_or(0)
    }

    pub fn violation(&mut self, check: &str, family: &SetFamily, detail: String) {
        self.violations.push(Violation {
            check: check.to_string(),
            family: family.clone(),
            detail,
        });
    }

    /// Records `f2` for `family`, keeping the minimum and its witnesses.
    pub fn observe_f2(&mut self, f2: BigRational, family: &SetFamily) {
        let single = VerificationReport {
            min_f2: Some(f2),
            witnesses: vec![family.clone()],
            witness_count: 1,
            ..Default::default()
        };
        let this = std::mem::take(self);
        *self = this.merge(single);
    }

    /// `self` followed by `other`.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.families_checked += other.families_checked;
        for (k, v) in other.checks {
            *self.checks.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations);
        match (&self.min_f2, &other.min_f2) {
            (_, None) => {}
            (None, Some(_)) => {
                self.min_f2 = other.min_f2;
                self.witnesses = other.witnesses;
                self.witness_count = other.witness_count;
            }
            (Some(a), Some(b)) if b < a => {
                self.min_f2 = other.min_f2;
                self.witnesses = other.witnesses;
                self.witness_count = other.witness_count;
            }
            (Some(a), Some(b)) if a == b => {
                self.witness_count += other.witness_count;
                self.witnesses.extend(other.witnesses);
                self.witnesses.truncate(WITNESS_LIMIT);
            }
            _ => {}
        }
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "passed": self.passed(),
            "families_checked": self.families_checked,
            "min_f2": self.min_f2.as_ref().map(format_rat),
            "witness_count": self.witness_count,
            "witnesses": self.witnesses.iter().map(io::to_json_value).collect::<Vec<_>>(),
            "checks": self.checks,
            "violations": self.violations.iter().map(|v| json!({
                "check": v.check,
                "family": io::to_json_value(&v.family),
                "detail": v.detail,
            })).collect::<Vec<_>>(),
        })
    }
}
