use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SearchError, VerificationReport};
use crate::setfam::{minimal_covers, Mask, SetFamily};

/// Families sampled on the largest ground set.
pub const COVER_SAMPLE_SIZE: usize = 100_000;
pub const COVER_SAMPLE_SEED: u64 = 0x6d63_6d63;

/// Largest ground set checked exhaustively.
const EXHAUSTIVE_MAX_N: u8 = 4;

/// For an antichain `F` of nonempty sets: `MC(F)` is an antichain and
/// `MC(MC(F)) = F`.
fn check_antichain(family: &SetFamily, report: &mut VerificationReport) {
    report.families_checked += 1;
    let mc = match minimal_covers(family) {
        Ok(mc) => mc,
        Err(e) => {
            report.violation("involution", family, e.to_string());
            return;
        }
    };
    report.count("mc_is_antichain");
    if !mc.is_antichain() {
        report.violation("mc_is_antichain", family, format!("MC = {:?}", mc.sets()));
    }
    report.count("involution");
    match minimal_covers(&mc) {
        Ok(back) if back == *family => {}
        Ok(back) => report.violation("involution", family, format!("MC(MC) = {:?}", back.sets())),
        Err(e) => report.violation("involution", family, e.to_string()),
    }
}

/// For any family `F` of nonempty sets: `MC(F) = MC(minimal_elements(F))`.
fn check_reduction(family: &SetFamily, report: &mut VerificationReport) {
    report.families_checked += 1;
    report.count("minimal_elements_invariance");
    let full = minimal_covers(family);
    let reduced = minimal_covers(&family.minimal_elements());
    if full != reduced {
        report.violation(
            "minimal_elements_invariance",
            family,
            format!("{full:?} vs {reduced:?}"),
        );
    }
}

/// Every nonempty family of nonempty subsets of `{1..n}`: the antichains get
/// the involution checks and all of them get the reduction check.
pub fn cover_theorem_exhaustive(n: u8) -> Result<VerificationReport, SearchError> {
    if n == 0 || n > EXHAUSTIVE_MAX_N {
        return Err(SearchError::TooLarge {
            n,
            max: EXHAUSTIVE_MAX_N,
        });
    }
    let subsets: Vec<Mask> = (1..1u64 << n).map(Mask).collect();
    let mut report = VerificationReport::default();
    for pick in 1u64..1 << subsets.len() {
        let sets = subsets
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> i & 1 == 1)
            .map(|(_, m)| *m);
        let family = SetFamily::new(n, sets)?;
        if family.is_antichain() {
            check_antichain(&family, &mut report);
            report.count("antichains");
        }
        check_reduction(&family, &mut report);
    }
    Ok(report)
}

/// `samples` random families of nonempty subsets of `{1..n}` with a random
/// density; each gets the reduction check and its minimal elements get the
/// involution checks.
pub fn cover_theorem_sampled(
    n: u8,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport, SearchError> {
    if n == 0 || n > 6 {
        return Err(SearchError::InvalidSpec(format!(
            "sampling needs 1 <= n <= 6, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport::default();
    let universe = (1u64 << n) - 1;
    for _ in 0..samples {
        let density: f64 = rng.gen_range(0.02..0.5);
        let mut sets: Vec<Mask> = (1..=universe)
            .filter(|_| rng.gen_bool(density))
            .map(Mask)
            .collect();
        if sets.is_empty() {
            sets.push(Mask(rng.gen_range(1..=universe)));
        }
        let family = SetFamily::new(n, sets)?;
        check_reduction(&family, &mut report);
        check_antichain(&family.minimal_elements(), &mut report);
        report.count("antichains");
    }
    Ok(report)
}

/// Exhaustive checks for `n = 1..=min(n_max, 4)`, plus
/// [`COVER_SAMPLE_SIZE`] samples on `n = 5` when `n_max >= 5`.
pub fn verify_cover_theorem(n_max: u8) -> Result<VerificationReport, SearchError> {
    if n_max == 0 || n_max > 5 {
        return Err(SearchError::TooLarge { n: n_max, max: 5 });
    }
    let mut report = VerificationReport::default();
    for n in 1..=n_max.min(EXHAUSTIVE_MAX_N) {
        report = report.merge(cover_theorem_exhaustive(n)?);
    }
    if n_max == 5 {
        report = report.merge(cover_theorem_sampled(
            5,
            COVER_SAMPLE_SIZE,
            COVER_SAMPLE_SEED,
        )?);
    }
    Ok(report)
}
