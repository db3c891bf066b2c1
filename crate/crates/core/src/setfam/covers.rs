//! Minimal covers (minimal hypergraph transversals).

use super::{FamilyError, Mask, SetFamily};

/// `S` meets every member.
pub fn is_cover(family: &SetFamily, s: Mask) -> bool {
    family.sets().iter().all(|a| a.meets(s))
}

/// `MC(F)`: all inclusion-minimal sets meeting every member of `F`.
///
/// `∅ ∈ F` admits no cover and is rejected. An empty family has the single
/// minimal cover `∅`.
pub fn minimal_covers(family: &SetFamily) -> Result<SetFamily, FamilyError> {
    if family.contains(Mask::EMPTY) {
        return Err(FamilyError::Uncoverable);
    }
    let covers = minimal_transversals(family.sets());
    Ok(SetFamily::new(family.n(), covers).expect("transversals stay inside the ground set"))
}

/// Berge's incremental algorithm: after processing edges `E_1..E_i` the list
/// holds exactly the minimal transversals of `{E_1..E_i}`. Edges must be
/// nonempty. Output is sorted by mask.
pub(crate) fn minimal_transversals(edges: &[Mask]) -> Vec<Mask> {
    let mut edges: Vec<Mask> = edges.to_vec();
    debug_assert!(edges.iter().all(|e| !e.is_empty()));
    // small edges first keeps the intermediate lists short
    edges.sort_by_key(|e| (e.len(), *e));
    edges.dedup();

    let mut current = vec![Mask::EMPTY];
    for edge in edges {
        if current.iter().all(|t| t.meets(edge)) {
            continue;
        }
        let mut candidates: Vec<Mask> = Vec::with_capacity(current.len() * 2);
        for &t in &current {
            if t.meets(edge) {
                candidates.push(t);
            } else {
                candidates.extend(edge.elements().map(|v| t.with(v)));
            }
        }
        current = minimize(candidates);
    }
    current.sort_unstable();
    current
}

fn minimize(mut candidates: Vec<Mask>) -> Vec<Mask> {
    candidates.sort_unstable_by_key(|m| (m.len(), *m));
    candidates.dedup();
    let mut kept: Vec<Mask> = Vec::with_capacity(candidates.len());
    for c in candidates {
        if !kept.iter().any(|k| k.is_subset_of(c)) {
            kept.push(c);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u8, lists: &[&[u8]]) -> SetFamily {
        SetFamily::from_lists(n, lists).unwrap()
    }

    /// Scan every subset of the ground set and keep the minimal covers.
    fn brute_force(f: &SetFamily) -> SetFamily {
        let covers: Vec<Mask> = f.ground().submasks().filter(|s| is_cover(f, *s)).collect();
        let minimal = covers
            .iter()
            .copied()
            .filter(|s| !covers.iter().any(|t| t.is_proper_subset_of(*s)));
        SetFamily::new(f.n(), minimal).unwrap()
    }

    #[test]
    fn path_example() {
        let f = fam(3, &[&[1, 2], &[2, 3]]);
        let mc = minimal_covers(&f).unwrap();
        assert_eq!(mc, fam(3, &[&[2], &[1, 3]]));
        assert_eq!(mc, brute_force(&f));
        assert_eq!(minimal_covers(&mc).unwrap(), f);
    }

    #[test]
    fn singleton_example() {
        let f = fam(1, &[&[1]]);
        assert_eq!(minimal_covers(&f).unwrap(), f);
    }

    #[test]
    fn triangle_is_self_dual() {
        let f = fam(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(brute_force(&f), f);
        assert_eq!(minimal_covers(&f).unwrap(), f);
    }

    #[test]
    fn empty_set_is_uncoverable() {
        assert_eq!(
            minimal_covers(&fam(2, &[&[], &[1]])),
            Err(FamilyError::Uncoverable)
        );
    }

    #[test]
    fn empty_family_has_empty_cover() {
        assert_eq!(minimal_covers(&fam(3, &[])).unwrap(), fam(3, &[&[]]));
    }

    #[test]
    fn agrees_with_brute_force_on_all_families_over_three() {
        let nonempty: Vec<Mask> = (1u64..8).map(Mask).collect();
        for bits in 0u32..(1 << nonempty.len()) {
            let sets = nonempty
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, m)| *m);
            let f = SetFamily::new(3, sets).unwrap();
            assert_eq!(minimal_covers(&f).unwrap(), brute_force(&f), "F = {f:?}");
        }
    }
}
