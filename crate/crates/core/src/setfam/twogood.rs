use serde::Serialize;

use super::covers::minimal_transversals;
use super::{Element, FamilyError, Mask, SetFamily};

/// `S` avoids `distinguished` and meets every member other than `∅` and
/// `{distinguished}`.
pub fn is_two_good(family: &SetFamily, s: Mask, distinguished: Element) -> bool {
    if s.contains(distinguished) {
        return false;
    }
    let excluded = distinguished.mask();
    family
        .sets()
        .iter()
        .filter(|a| !a.is_empty() && **a != excluded)
        .all(|a| a.meets(s))
}

/// 2-good with respect to element 1, and no single element can be dropped.
///
/// Checking single-element removals suffices because 2-goodness is upward
/// closed among sets avoiding 1.
pub fn is_minimal_two_good(family: &SetFamily, s: Mask) -> bool {
    is_two_good(family, s, Element::ONE)
        && s.elements()
            .all(|y| !is_two_good(family, s.without(y), Element::ONE))
}

/// All minimal 2-good sets for the distinguished element, sorted by mask.
///
/// A set avoiding `distinguished` meets `A` iff it meets `A - distinguished`,
/// so these are exactly the minimal transversals of the hypergraph whose edges
/// are `A - distinguished` for the non-excluded members. With no such members
/// the only minimal 2-good set is `∅`.
pub fn minimal_two_good_sets(family: &SetFamily, distinguished: Element) -> Vec<Mask> {
    let excluded = distinguished.mask();
    let edges: Vec<Mask> = family
        .sets()
        .iter()
        .filter(|a| !a.is_empty() && **a != excluded)
        .map(|a| a.without(distinguished))
        .collect();
    minimal_transversals(&edges)
}

/// `Σ_{A ∈ F} |A ∩ S|`.
pub fn incidence(family: &SetFamily, s: Mask) -> usize {
    family
        .sets()
        .iter()
        .map(|a| a.intersect(s).len() as usize)
        .sum()
}

/// `q_T = #{A ∈ F : A ∩ S = T}` for every `T ⊆ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCounts {
    base: Mask,
    counts: Vec<usize>,
}

impl TraceCounts {
    pub fn base(&self) -> Mask {
        self.base
    }

    /// `q_T`; `t` must be a subset of the base.
    pub fn get(&self, t: Mask) -> usize {
        debug_assert!(t.is_subset_of(self.base), "{t} is not inside {}", self.base);
        self.counts[t.to_local(self.base)]
    }

    /// `(T, q_T)` in ascending local order.
    pub fn iter(&self) -> impl Iterator<Item = (Mask, usize)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(local, &q)| (Mask::from_local(local, self.base), q))
    }

    /// `Σ_T q_T`, which is `|F|`.
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `Σ_T q_T · |T|`, which is the incidence over the base.
    pub fn weighted_total(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .map(|(local, q)| q * local.count_ones() as usize)
            .sum()
    }
}

pub fn trace_counts(family: &SetFamily, s: Mask) -> TraceCounts {
    let mut counts = vec![0usize; 1 << s.len()];
    for a in family.sets() {
        counts[a.to_local(s)] += 1;
    }
    TraceCounts { base: s, counts }
}

fn check_extension(family: &SetFamily, s: Mask, x: Element) -> Result<(), FamilyError> {
    if x.0 == 0 || x.0 > family.n() {
        return Err(FamilyError::BadElement {
            element: x.0,
            n: family.n(),
        });
    }
    if x == Element::ONE || s.contains(x) {
        return Err(FamilyError::Precondition(format!(
            "x = {x} must differ from 1 and lie outside S = {s}"
        )));
    }
    if !is_two_good(family, s, Element::ONE) {
        return Err(FamilyError::Precondition(format!("S = {s} is not 2-good")));
    }
    Ok(())
}

/// Elements `y ∈ S` covered by `x`: `S + x - y` is still 2-good.
pub fn covered_set(family: &SetFamily, s: Mask, x: Element) -> Result<Vec<Element>, FamilyError> {
    check_extension(family, s, x)?;
    let sx = s.with(x);
    Ok(s.elements()
        .filter(|&y| is_two_good(family, sx.without(y), Element::ONE))
        .collect())
}

/// Same set as [`covered_set`], computed from traces: `y` is covered iff
/// every member meeting `S` exactly in `{y}` contains `x`.
pub fn covered_set_by_trace(
    family: &SetFamily,
    s: Mask,
    x: Element,
) -> Result<Vec<Element>, FamilyError> {
    check_extension(family, s, x)?;
    Ok(s.elements()
        .filter(|&y| {
            family
                .sets()
                .iter()
                .filter(|a| a.intersect(s) == y.mask())
                .all(|a| a.contains(x))
        })
        .collect())
}

/// `a ∈ S` is `x`-flexible, witnessed by `fa ∩ (S+x) = {a}` and
/// `fa_prime ∩ (S+x) = {a, x}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlexibleWitness {
    pub a: Element,
    pub x: Element,
    pub fa: Mask,
    pub fa_prime: Mask,
}

/// Every flexible pair `(a, x)` with `x ∉ S ∪ {1}`, ordered by `(a, x)`.
/// Each witness uses the smallest qualifying masks.
pub fn flexible_pairs(family: &SetFamily, s: Mask) -> Result<Vec<FlexibleWitness>, FamilyError> {
    if !is_two_good(family, s, Element::ONE) {
        return Err(FamilyError::Precondition(format!("S = {s} is not 2-good")));
    }
    let outside = family.ground().minus(s).without(Element::ONE);
    let mut out = Vec::new();
    for a in s.elements() {
        for x in outside.elements() {
            let sx = s.with(x);
            // sets are sorted, so the first hit is the smallest mask
            let find = |trace: Mask| {
                family
                    .sets()
                    .iter()
                    .copied()
                    .find(|f| f.intersect(sx) == trace)
            };
            if let (Some(fa), Some(fa_prime)) = (find(a.mask()), find(a.mask().with(x))) {
                out.push(FlexibleWitness { a, x, fa, fa_prime });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfam::union_closure;

    fn fam(n: u8, lists: &[&[u8]]) -> SetFamily {
        SetFamily::from_lists(n, lists).unwrap()
    }

    fn m(e: &[u8]) -> Mask {
        Mask::from_elements(e.iter().copied())
    }

    /// Literal definition checked over every subset of `{2..n}`.
    fn minimal_two_good_oracle(f: &SetFamily) -> Vec<Mask> {
        let pool = f.ground().without(Element::ONE);
        let good: Vec<Mask> = pool
            .submasks()
            .filter(|s| {
                f.sets()
                    .iter()
                    .filter(|a| !a.is_empty() && **a != m(&[1]))
                    .all(|a| a.meets(*s))
            })
            .collect();
        let mut out: Vec<Mask> = good
            .iter()
            .copied()
            .filter(|s| !good.iter().any(|t| t.is_proper_subset_of(*s)))
            .collect();
        out.sort();
        out
    }

    /// The covered-set fixture: closure of {2,5},{3},{4},{1} with S = {2,3,4}.
    fn covered_fixture() -> SetFamily {
        union_closure(5, &[m(&[2, 5]), m(&[3]), m(&[4]), m(&[1])]).unwrap()
    }

    #[test]
    fn two_good_examples() {
        let f = fam(2, &[&[], &[1], &[2], &[1, 2]]);
        assert!(is_two_good(&f, m(&[2]), Element::ONE));
        assert!(is_two_good(
            &fam(1, &[&[], &[1]]),
            Mask::EMPTY,
            Element::ONE
        ));
        assert!(!is_two_good(&f, m(&[1, 2]), Element::ONE));
        // non-default distinguished element
        assert!(is_two_good(&f, m(&[1]), Element(2)));
    }

    #[test]
    fn minimal_two_good_examples() {
        let f = fam(2, &[&[], &[1], &[2], &[1, 2]]);
        assert_eq!(minimal_two_good_sets(&f, Element::ONE), vec![m(&[2])]);
        assert_eq!(minimal_two_good_oracle(&f), vec![m(&[2])]);

        let f = fam(1, &[&[], &[1]]);
        assert_eq!(minimal_two_good_sets(&f, Element::ONE), vec![Mask::EMPTY]);

        // {1},{2},{3} closed: every nontrivial set meets {2,3}; no singleton
        // other than 1 meets both {2} and {3}
        let f = union_closure(3, &[m(&[1]), m(&[2]), m(&[3])]).unwrap();
        let oracle = minimal_two_good_oracle(&f);
        assert_eq!(oracle, vec![m(&[2, 3])]);
        assert_eq!(minimal_two_good_sets(&f, Element::ONE), oracle);

        // with {2,3} joined into a single generator, both singletons work
        let f = union_closure(3, &[m(&[1]), m(&[2, 3])]).unwrap();
        let oracle = minimal_two_good_oracle(&f);
        assert_eq!(oracle, vec![m(&[2]), m(&[3])]);
        assert_eq!(minimal_two_good_sets(&f, Element::ONE), oracle);
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(incidence(&fam(2, &[&[], &[1], &[1, 2]]), m(&[2])), 1);
        assert_eq!(incidence(&fam(3, &[&[1, 2], &[2, 3]]), Mask::EMPTY), 0);
        assert_eq!(incidence(&fam(3, &[&[1, 2], &[2, 3]]), m(&[2])), 2);
    }

    #[test]
    fn trace_count_examples() {
        let q = trace_counts(&fam(2, &[&[], &[1], &[2], &[1, 2]]), m(&[2]));
        assert_eq!(
            q.iter().collect::<Vec<_>>(),
            vec![(Mask::EMPTY, 2), (m(&[2]), 2)]
        );

        let q = trace_counts(&fam(2, &[&[]]), m(&[2]));
        assert_eq!((q.get(Mask::EMPTY), q.get(m(&[2]))), (1, 0));

        let f = fam(3, &[&[1, 2], &[2, 3]]);
        let q = trace_counts(&f, m(&[2, 3]));
        assert_eq!(q.get(m(&[2])), 1);
        assert_eq!(q.get(m(&[2, 3])), 1);
        assert_eq!(q.get(Mask::EMPTY), 0);
        assert_eq!(q.get(m(&[3])), 0);
        assert_eq!(q.total(), 2);
        assert_eq!(q.weighted_total(), incidence(&f, m(&[2, 3])));
    }

    #[test]
    fn covered_fixture_both_characterizations() {
        let f = covered_fixture();
        let s = m(&[2, 3, 4]);
        assert!(is_minimal_two_good(&f, s));
        let c = covered_set(&f, s, Element(5)).unwrap();
        assert_eq!(c, vec![Element(2)]);
        assert_eq!(covered_set_by_trace(&f, s, Element(5)).unwrap(), c);
    }

    #[test]
    fn witness_blocks_coverage() {
        // {3} meets S+5 exactly in {3}, so 3 cannot be covered
        let f = covered_fixture();
        let c = covered_set(&f, m(&[2, 3, 4]), Element(5)).unwrap();
        assert!(!c.contains(&Element(3)));
    }

    #[test]
    fn absent_x_covers_nothing() {
        let f = union_closure(5, &[m(&[2]), m(&[3]), m(&[4]), m(&[1])]).unwrap();
        let s = m(&[2, 3, 4]);
        assert!(covered_set(&f, s, Element(5)).unwrap().is_empty());
        assert!(covered_set_by_trace(&f, s, Element(5)).unwrap().is_empty());
    }

    #[test]
    fn covered_set_preconditions() {
        let f = covered_fixture();
        let s = m(&[2, 3, 4]);
        assert!(covered_set(&f, s, Element(1)).is_err());
        assert!(covered_set(&f, s, Element(3)).is_err());
        assert!(covered_set(&f, s, Element(9)).is_err());
        assert!(covered_set(&f, m(&[2, 3]), Element(5)).is_err());
    }

    #[test]
    fn flexible_minimal_configuration() {
        // sets meeting S = {2} in {2} are exactly {2} and {2,3}
        let f = fam(3, &[&[], &[1], &[2], &[2, 3]]);
        let w = flexible_pairs(&f, m(&[2])).unwrap();
        assert_eq!(
            w,
            vec![FlexibleWitness {
                a: Element(2),
                x: Element(3),
                fa: m(&[2]),
                fa_prime: m(&[2, 3]),
            }]
        );
    }

    #[test]
    fn flexible_needs_a_difference_outside_one() {
        // {2} and {1,2} differ only at 1: no witness
        let f = fam(3, &[&[], &[1], &[2], &[1, 2]]);
        assert!(flexible_pairs(&f, m(&[2])).unwrap().is_empty());
        // {1,2,3} differs from {2} at 3 as well
        let f = fam(3, &[&[], &[1], &[2], &[1, 2], &[1, 2, 3]]);
        let w = flexible_pairs(&f, m(&[2])).unwrap();
        assert_eq!(
            w,
            vec![FlexibleWitness {
                a: Element(2),
                x: Element(3),
                fa: m(&[2]),
                fa_prime: m(&[1, 2, 3]),
            }]
        );
    }

    #[test]
    fn covered_fixture_flexible_scan() {
        let f = covered_fixture();
        let s = m(&[2, 3, 4]);
        let w = flexible_pairs(&f, s).unwrap();
        // exhaustive scan of (a, x, A, B) quadruples
        let mut expected = Vec::new();
        for a in s.elements() {
            for x in f.ground().minus(s).without(Element::ONE).elements() {
                let sx = s.with(x);
                let hit = f.sets().iter().any(|p| p.intersect(sx) == a.mask())
                    && f.sets().iter().any(|p| p.intersect(sx) == a.mask().with(x));
                if hit {
                    expected.push((a, x));
                }
            }
        }
        assert_eq!(w.iter().map(|w| (w.a, w.x)).collect::<Vec<_>>(), expected);
        // {3,5} and {4,5} never arise, and {2} alone is never a member
        assert!(w.is_empty());

        // adding {3,5} as a generator makes 3 flexible for x = 5
        let g = union_closure(5, &[m(&[2, 5]), m(&[3]), m(&[3, 5]), m(&[4]), m(&[1])]).unwrap();
        let w = flexible_pairs(&g, s).unwrap();
        assert_eq!(
            w,
            vec![FlexibleWitness {
                a: Element(3),
                x: Element(5),
                fa: m(&[3]),
                fa_prime: m(&[3, 5]),
            }]
        );
    }
}
