use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Element, FamilyError, Mask, MAX_GROUND};

/// A finite family of distinct subsets of `{1..n}`.
///
/// Sets are kept sorted by mask value, which gives every family a canonical
/// order independent of how it was built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: u8,
    sets: Vec<Mask>,
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = Mask>>(n: u8, sets: I) -> Result<Self, FamilyError> {
        if n > MAX_GROUND {
            return Err(FamilyError::GroundTooLarge(n));
        }
        let ground = Mask::ground(n);
        let mut sets: Vec<Mask> = sets.into_iter().collect();
        for s in &sets {
            if !s.is_subset_of(ground) {
                return Err(FamilyError::ElementOutOfRange { set: *s, n });
            }
        }
        sets.sort_unstable();
        if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
            return Err(FamilyError::DuplicateSet(w[0]));
        }
        Ok(SetFamily { n, sets })
    }

    /// Builds from element lists, e.g. `&[&[], &[1], &[1, 2]]`.
    pub fn from_lists(n: u8, lists: &[&[u8]]) -> Result<Self, FamilyError> {
        for list in lists {
            if let Some(&e) = list.iter().find(|&&e| e == 0 || e > n) {
                return Err(FamilyError::BadElement { element: e, n });
            }
        }
        Self::new(
            n,
            lists.iter().map(|l| Mask::from_elements(l.iter().copied())),
        )
    }

    /// Ground-set size.
    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn sets(&self) -> &[Mask] {
        &self.sets
    }

    /// `m = |F|`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: Mask) -> bool {
        self.sets.binary_search(&set).is_ok()
    }

    pub fn ground(&self) -> Mask {
        Mask::ground(self.n)
    }

    /// Union of all members.
    pub fn support(&self) -> Mask {
        self.sets.iter().fold(Mask::EMPTY, |acc, s| acc.union(*s))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (1..=self.n).map(Element)
    }

    /// Returns a copy with `set` added (no-op if present).
    pub fn with_set(&self, set: Mask) -> Result<Self, FamilyError> {
        if self.contains(set) {
            return Ok(self.clone());
        }
        Self::new(self.n, self.sets.iter().copied().chain([set]))
    }

    /// Returns a copy containing `∅`.
    pub fn with_empty(&self) -> Self {
        self.with_set(Mask::EMPTY)
            .expect("empty set is always in range")
    }

    pub fn is_union_closed(&self) -> bool {
        self.sets.iter().enumerate().all(|(i, a)| {
            self.sets[i + 1..]
                .iter()
                .all(|b| self.contains(a.union(*b)))
        })
    }

    /// Number of members containing each element `1..=n`, indexed by `e - 1`.
    pub fn element_frequencies(&self) -> Vec<(Element, usize)> {
        self.elements().map(|e| (e, self.frequency(e))).collect()
    }

    pub fn frequency(&self, e: Element) -> usize {
        self.sets.iter().filter(|s| s.contains(e)).count()
    }

    /// The `k`-th most frequent element (ties by smallest id), its count,
    /// and `count / |F|`.
    pub fn kth_frequency(&self, k: usize) -> Result<(Element, usize, BigRational), FamilyError> {
        if k == 0 || k > self.n as usize {
            return Err(FamilyError::RankOutOfRange { k, n: self.n });
        }
        if self.sets.is_empty() {
            return Err(FamilyError::EmptyFamily);
        }
        let mut freqs = self.element_frequencies();
        freqs.sort_by(|(ea, ca), (eb, cb)| cb.cmp(ca).then(ea.cmp(eb)));
        let (e, c) = freqs[k - 1];
        let ratio = BigRational::new(BigInt::from(c), BigInt::from(self.sets.len()));
        Ok((e, c, ratio))
    }

    /// Members with no proper subset in the family.
    pub fn minimal_elements(&self) -> SetFamily {
        let sets = self
            .sets
            .iter()
            .filter(|a| !self.sets.iter().any(|b| b.is_proper_subset_of(**a)))
            .copied();
        SetFamily {
            n: self.n,
            sets: sets.collect(),
        }
    }

    /// True if no member is a proper subset of another.
    pub fn is_antichain(&self) -> bool {
        self.minimal_elements().len() == self.len()
    }

    /// Swaps element 1 with the most frequent element (ties by smallest id),
    /// so that 1 becomes a most frequent element. Returns the relabelled
    /// family and the element that was swapped with 1.
    pub fn normalize(&self) -> (SetFamily, Element) {
        let top = self
            .element_frequencies()
            .into_iter()
            .max_by(|(ea, ca), (eb, cb)| ca.cmp(cb).then(eb.cmp(ea)))
            .map(|(e, _)| e)
            .unwrap_or(Element::ONE);
        if top == Element::ONE {
            return (self.clone(), top);
        }
        let swap = |s: Mask| {
            let has_one = s.contains(Element::ONE);
            let has_top = s.contains(top);
            let mut out = s.without(Element::ONE).without(top);
            if has_one {
                out = out.with(top);
            }
            if has_top {
                out = out.with(Element::ONE);
            }
            out
        };
        let family = SetFamily::new(self.n, self.sets.iter().map(|s| swap(*s)))
            .expect("a transposition preserves distinctness");
        (family, top)
    }
}

/// Smallest union-closed family containing every generator.
pub fn union_closure(n: u8, generators: &[Mask]) -> Result<SetFamily, FamilyError> {
    if generators.is_empty() {
        return Err(FamilyError::NoGenerators);
    }
    let mut closed: BTreeSet<Mask> = BTreeSet::new();
    for &g in generators {
        if closed.contains(&g) {
            continue;
        }
        let fresh: Vec<Mask> = closed.iter().map(|s| s.union(g)).collect();
        closed.insert(g);
        closed.extend(fresh);
    }
    SetFamily::new(n, closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn fam(n: u8, lists: &[&[u8]]) -> SetFamily {
        SetFamily::from_lists(n, lists).unwrap()
    }

    /// Closure by naive fixed-point iteration over all pairs.
    fn closure_oracle(gens: &[Mask]) -> BTreeSet<Mask> {
        let mut cur: BTreeSet<Mask> = gens.iter().copied().collect();
        loop {
            let mut next = cur.clone();
            for a in &cur {
                for b in &cur {
                    next.insert(a.union(*b));
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    #[test]
    fn rejects_duplicates_and_out_of_range() {
        assert!(matches!(
            SetFamily::from_lists(2, &[&[1], &[1]]),
            Err(FamilyError::DuplicateSet(_))
        ));
        assert!(matches!(
            SetFamily::from_lists(2, &[&[3]]),
            Err(FamilyError::BadElement { element: 3, n: 2 })
        ));
        assert!(matches!(
            SetFamily::new(2, [Mask::from_elements([4])]),
            Err(FamilyError::ElementOutOfRange { .. })
        ));
        assert!(SetFamily::new(64, []).is_err());
    }

    #[test]
    fn union_closed_examples() {
        assert!(fam(2, &[&[], &[1], &[1, 2]]).is_union_closed());
        assert!(!fam(2, &[&[1], &[2]]).is_union_closed());
        let f = fam(2, &[&[], &[1], &[2], &[1, 2]]);
        // exhaustive pair check
        for a in f.sets() {
            for b in f.sets() {
                assert!(f.contains(a.union(*b)));
            }
        }
        assert!(f.is_union_closed());
    }

    #[test]
    fn closure_examples() {
        let g = [Mask::from_elements([1]), Mask::from_elements([2])];
        let c = union_closure(2, &g).unwrap();
        assert_eq!(c, fam(2, &[&[1], &[2], &[1, 2]]));
        assert_eq!(
            c.sets().iter().copied().collect::<BTreeSet<_>>(),
            closure_oracle(&g)
        );

        let c = union_closure(1, &[Mask::EMPTY]).unwrap();
        assert_eq!(c, fam(1, &[&[]]));

        let g = [
            Mask::from_elements([1, 2]),
            Mask::from_elements([2, 3]),
            Mask::from_elements([1, 3]),
        ];
        let c = union_closure(3, &g).unwrap();
        assert_eq!(c, fam(3, &[&[1, 2], &[2, 3], &[1, 3], &[1, 2, 3]]));
        assert_eq!(
            c.sets().iter().copied().collect::<BTreeSet<_>>(),
            closure_oracle(&g)
        );

        assert!(matches!(
            union_closure(3, &[]),
            Err(FamilyError::NoGenerators)
        ));
    }

    #[test]
    fn frequency_examples() {
        let f = fam(2, &[&[], &[1], &[1, 2]]);
        assert_eq!(
            f.element_frequencies(),
            vec![(Element(1), 2), (Element(2), 1)]
        );
        assert_eq!(fam(1, &[&[]]).element_frequencies(), vec![(Element(1), 0)]);
        assert_eq!(
            fam(2, &[&[1], &[2], &[1, 2]]).element_frequencies(),
            vec![(Element(1), 2), (Element(2), 2)]
        );
    }

    #[test]
    fn kth_frequency_examples() {
        let f = fam(2, &[&[], &[1], &[1, 2]]);
        assert_eq!(f.kth_frequency(2).unwrap(), (Element(2), 1, rat(1, 3)));
        assert_eq!(f.kth_frequency(1).unwrap(), (Element(1), 2, rat(2, 3)));
        assert_eq!(
            fam(1, &[&[]]).kth_frequency(1).unwrap(),
            (Element(1), 0, rat(0, 1))
        );
        assert!(matches!(
            f.kth_frequency(3),
            Err(FamilyError::RankOutOfRange { k: 3, n: 2 })
        ));
        // ties go to the smaller id
        let tie = fam(3, &[&[2], &[3], &[2, 3]]);
        assert_eq!(tie.kth_frequency(1).unwrap().0, Element(2));
        assert_eq!(tie.kth_frequency(2).unwrap().0, Element(3));
    }

    #[test]
    fn minimal_elements_examples() {
        assert_eq!(fam(2, &[&[1], &[1, 2]]).minimal_elements(), fam(2, &[&[1]]));
        let anti = fam(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(anti.minimal_elements(), anti);
        assert_eq!(
            fam(2, &[&[], &[1], &[2], &[1, 2]]).minimal_elements(),
            fam(2, &[&[]])
        );
    }

    #[test]
    fn normalize_moves_top_element_to_one() {
        let f = fam(3, &[&[], &[3], &[2, 3], &[1, 3]]);
        let (g, moved) = f.normalize();
        assert_eq!(moved, Element(3));
        assert_eq!(g, fam(3, &[&[], &[1], &[1, 2], &[1, 3]]));
        assert_eq!(g.kth_frequency(1).unwrap().0, Element(1));
        let (h, moved) = g.normalize();
        assert_eq!(moved, Element(1));
        assert_eq!(h, g);
    }
}
