use super::{SearchError, VerificationReport};
use crate::setfam::{
    covered_set, covered_set_by_trace, flexible_pairs, incidence, is_minimal_two_good, is_two_good,
    minimal_two_good_sets, trace_counts, Element, FamilyError, Mask, SetFamily,
};

/// Thresholds of the three middleway counts for `|S| = s`. For `s < 3` the
/// last one is negative in exact arithmetic and is clamped to zero.
fn middleway_thresholds(s: u32) -> [usize; 3] {
    let pow = |k: i64| if k >= 0 { 1i64 << k } else { 0 };
    let s = s as i64;
    [pow(s - 2), pow(s - 2) - 1, pow(s - 3) - 1].map(|t| t.max(0) as usize)
}

/// Checks the counting statements of the three lemmas for every flexible
/// pair `(a, x)` of `S`:
///
/// * smallway, first part: `q_T >= 2` when `a ∈ T` and `T ∩ C = ∅`;
/// * smallway, second part: `q_T >= 2` when `|T ∩ C| >= 2`, provided no
///   `S + x - b - c` with `b, c ∈ C` is 2-good;
/// * largeway: `x` lies in at least
///   `2^s - 2^{s-1-|C|} + Σ_{c∈C} q_{c} - |C|` members;
/// * middleway: when `C = {b}` and `S` has the largest incidence among the
///   minimal 2-good sets of its size, `b` is at least as frequent as `x`, and
///   at least `2^{s-2}`, `2^{s-2} - 1`, `2^{s-3} - 1` members contain `b`,
///   avoid `x`, and meet `S` in at least 2, 3, 4 elements.
pub fn spot_check_lemmas(family: &SetFamily, s: Mask) -> Result<VerificationReport, SearchError> {
    if !family.is_union_closed() {
        return Err(SearchError::InvalidSpec(
            "the family is not union-closed".into(),
        ));
    }
    if !s.is_subset_of(family.ground()) || !is_minimal_two_good(family, s) {
        return Err(
            FamilyError::Precondition(format!("S = {s} is not a minimal 2-good set")).into(),
        );
    }
    let size = s.len();
    let counts = trace_counts(family, s);
    let max_incidence = minimal_two_good_sets(family, Element::ONE)
        .into_iter()
        .filter(|t| t.len() == size)
        .map(|t| incidence(family, t))
        .max()
        .unwrap_or(0);
    let incidence_maximal = incidence(family, s) == max_incidence;

    let mut report = VerificationReport {
        families_checked: 1,
        ..Default::default()
    };
    for w in flexible_pairs(family, s)? {
        let (a, x) = (w.a, w.x);
        report.count("flexible_pairs");
        let covered = covered_set(family, s, x)?;
        let c_mask = Mask::from_elements(covered.iter().map(|e| e.0));
        let tag = |what: &str| format!("S = {s}, a = {a}, x = {x}, C = {c_mask}: {what}");

        report.count("covered_by_trace");
        if covered_set_by_trace(family, s, x)? != covered {
            report.violation("covered_by_trace", family, tag("trace form disagrees"));
        }
        if c_mask.contains(a) {
            report.violation("flexible_not_covered", family, tag("a is covered"));
            continue;
        }

        for t in s.submasks() {
            if t.contains(a) && !t.meets(c_mask) {
                report.count("smallway_first");
                if counts.get(t) < 2 {
                    report.violation(
                        "smallway_first",
                        family,
                        tag(&format!("q_{t} = {}", counts.get(t))),
                    );
                }
            }
        }

        if covered.len() >= 2 {
            let sx = s.with(x);
            let g_bc = covered.iter().enumerate().all(|(i, &b)| {
                covered[i + 1..]
                    .iter()
                    .all(|&c| !is_two_good(family, sx.without(b).without(c), Element::ONE))
            });
            if g_bc {
                for t in s.submasks().filter(|t| t.intersect(c_mask).len() >= 2) {
                    report.count("smallway_second");
                    if counts.get(t) < 2 {
                        report.violation(
                            "smallway_second",
                            family,
                            tag(&format!("q_{t} = {}", counts.get(t))),
                        );
                    }
                }
            } else {
                report.count("smallway_second_skipped");
            }
        }

        report.count("largeway");
        let c = covered.len() as u32;
        let singles: usize = covered.iter().map(|e| counts.get(e.mask())).sum();
        let bound = (1usize << size) - (1usize << (size - 1 - c)) + singles - covered.len();
        let fx = family.frequency(x);
        if fx < bound {
            report.violation(
                "largeway",
                family,
                tag(&format!("frequency(x) = {fx} < {bound}")),
            );
        }

        if covered.len() == 1 && incidence_maximal {
            let b = covered[0];
            report.count("middleway");
            let (fb, fx) = (family.frequency(b), family.frequency(x));
            if fb < fx {
                report.violation(
                    "middleway",
                    family,
                    tag(&format!("frequency(b) = {fb} < {fx}")),
                );
            }
            let thresholds = middleway_thresholds(size);
            for (j, need) in (2u32..=4).zip(thresholds) {
                let have = family
                    .sets()
                    .iter()
                    .filter(|f| f.contains(b) && !f.contains(x) && f.intersect(s).len() >= j)
                    .count();
                if have < need {
                    report.violation(
                        "middleway",
                        family,
                        tag(&format!(
                            "{have} members meet S in >= {j} with b, not x; need {need}"
                        )),
                    );
                }
            }
        }
    }
    Ok(report)
}
