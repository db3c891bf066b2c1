use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::lemmas::spot_check_lemmas;
use super::{SearchError, VerificationReport};
use crate::setfam::{
    flexible_pairs, minimal_two_good_sets, union_closure, Element, Mask, SetFamily,
};

/// Parameters of the random union-closed corpus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorpusSpec {
    /// Ground set sizes are drawn uniformly from this range.
    pub n_min: u8,
    pub n_max: u8,
    /// Generator counts are drawn uniformly from this range.
    pub generators_min: usize,
    pub generators_max: usize,
    /// Chance of adding `∅` to a closure.
    pub empty_probability: f64,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            n_min: 4,
            n_max: 8,
            generators_min: 3,
            generators_max: 10,
            empty_probability: 0.5,
            seed: 2024,
        }
    }
}

impl CorpusSpec {
    fn validate(&self) -> Result<(), SearchError> {
        let ok = 2 <= self.n_min
            && self.n_min <= self.n_max
            && self.n_max <= 16
            && 1 <= self.generators_min
            && self.generators_min <= self.generators_max
            && (0.0..=1.0).contains(&self.empty_probability);
        if ok {
            Ok(())
        } else {
            Err(SearchError::InvalidSpec(format!(
                "bad corpus parameters {self:?}"
            )))
        }
    }
}

/// Union closure of uniformly drawn nonempty generators, relabelled so that
/// element 1 is a most frequent element.
pub fn random_union_closed<R: Rng>(rng: &mut R, spec: &CorpusSpec) -> SetFamily {
    let n = rng.gen_range(spec.n_min..=spec.n_max);
    let g = rng.gen_range(spec.generators_min..=spec.generators_max);
    let top = (1u64 << n) - 1;
    let gens: Vec<Mask> = (0..g).map(|_| Mask(rng.gen_range(1..=top))).collect();
    let mut family = union_closure(n, &gens).expect("at least one generator");
    if rng.gen_bool(spec.empty_probability) {
        family = family.with_empty();
    }
    family.normalize().0
}

/// Spot checks every minimal 2-good `S` with `|S| >= 2` that has a flexible
/// pair; `None` when there is no such `S`.
fn check_instance(family: &SetFamily) -> Option<Result<VerificationReport, SearchError>> {
    let candidates: Vec<Mask> = minimal_two_good_sets(family, Element::ONE)
        .into_iter()
        .filter(|s| s.len() >= 2)
        .filter(|s| flexible_pairs(family, *s).is_ok_and(|p| !p.is_empty()))
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let mut report = VerificationReport::default();
    for s in candidates {
        match spot_check_lemmas(family, s) {
            Ok(r) => report = report.merge(r),
            Err(e) => return Some(Err(e)),
        }
    }
    report.count("instances");
    Some(Ok(report))
}

/// Draws families until `instances` of them qualify (a minimal 2-good set of
/// size at least 2 with a flexible pair) and merges their spot-check reports.
/// Candidates are drawn sequentially from the seed and checked in parallel
/// batches, so the result depends only on `spec` and `instances`.
pub fn check_lemma_corpus(
    spec: &CorpusSpec,
    instances: usize,
) -> Result<VerificationReport, SearchError> {
    spec.validate()?;
    const BATCH: usize = 256;
    const MAX_DRAWS: usize = 1_000_000;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut report = VerificationReport::default();
    let mut found = 0usize;
    let mut drawn = 0usize;
    while found < instances {
        if drawn >= MAX_DRAWS {
            return Err(SearchError::InvalidSpec(format!(
                "only {found} qualifying instances in {drawn} draws"
            )));
        }
        let batch: Vec<SetFamily> = (0..BATCH)
            .map(|_| random_union_closed(&mut rng, spec))
            .collect();
        drawn += BATCH;
        let results: Vec<_> = batch.par_iter().map(check_instance).collect();
        for result in results.into_iter().flatten() {
            if found == instances {
                break;
            }
            report = report.merge(result?);
            found += 1;
        }
    }
    report.count_many("draws", drawn as u64);
    Ok(report)
}
