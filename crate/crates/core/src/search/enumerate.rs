use rayon::prelude::*;

use super::SearchError;
use crate::setfam::{Mask, SetFamily};

/// Largest ground set for exhaustive union-closed enumeration.
pub const MAX_ENUMERATION_N: u8 = 5;

/// Which union-closed families on `{1..n}` to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub n: u8,
    /// Only families containing `∅`.
    pub require_empty: bool,
    /// Only families whose union is the whole ground set.
    pub require_ground_coverage: bool,
    /// Only families with at most this many members.
    pub max_family_size: Option<usize>,
}

impl EnumerationSpec {
    pub fn all(n: u8) -> Self {
        EnumerationSpec {
            n,
            require_empty: false,
            require_ground_coverage: false,
            max_family_size: None,
        }
    }

    pub fn covering(n: u8) -> Self {
        EnumerationSpec {
            require_ground_coverage: true,
            ..Self::all(n)
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.n == 0 {
            return Err(SearchError::InvalidSpec("n must be at least 1".into()));
        }
        if self.n > MAX_ENUMERATION_N {
            return Err(SearchError::TooLarge {
                n: self.n,
                max: MAX_ENUMERATION_N,
            });
        }
        Ok(())
    }
}

/// A slice of the search space: families whose largest member is `top` and
/// whose second largest member is `second` (`None` for `{top}` alone).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    pub top: Mask,
    pub second: Option<Mask>,
}

/// All partitions in enumeration order. Concatenating the partitions in this
/// order reproduces the sequential enumeration order.
pub fn partitions(spec: &EnumerationSpec) -> Result<Vec<Partition>, SearchError> {
    spec.validate()?;
    let ground = Mask::ground(spec.n).0;
    let tops: Vec<u64> = if spec.require_ground_coverage {
        vec![ground]
    } else {
        (0..=ground).rev().collect()
    };
    let mut out = Vec::new();
    for top in tops {
        // members below the top are exactly its proper subsets
        let mut below: Vec<u64> = Mask(top)
            .submasks()
            .map(|m| m.0)
            .filter(|&m| m != top)
            .collect();
        below.sort_unstable_by(|a, b| b.cmp(a));
        for second in below {
            out.push(Partition {
                top: Mask(top),
                second: Some(Mask(second)),
            });
        }
        out.push(Partition {
            top: Mask(top),
            second: None,
        });
    }
    Ok(out)
}

struct Walker<'a, F: FnMut(SetFamily)> {
    spec: &'a EnumerationSpec,
    members: Vec<u64>,
    present: u64,
    emit: F,
}

impl<F: FnMut(SetFamily)> Walker<'_, F> {
    fn finish(&mut self) {
        if self.spec.require_empty && self.present & 1 == 0 {
            return;
        }
        let family = SetFamily::new(self.spec.n, self.members.iter().map(|&m| Mask(m)))
            .expect("masks are distinct and inside the ground set");
        (self.emit)(family);
    }

    /// Decides the masks `v, v-1, ..., 0`, including before excluding. Every
    /// mask above `v` is already decided, so `A | v` is known for each member.
    fn walk(&mut self, v: Option<u64>) {
        let Some(v) = v else {
            self.finish();
            return;
        };
        let next = v.checked_sub(1);
        let full = self
            .spec
            .max_family_size
            .is_some_and(|cap| self.members.len() >= cap);
        let closed = self
            .members
            .iter()
            .all(|&a| self.present >> (a | v) & 1 == 1);
        if closed && !full {
            self.members.push(v);
            self.present |= 1 << v;
            self.walk(next);
            self.present &= !(1 << v);
            self.members.pop();
        }
        if v == 0 && self.spec.require_empty {
            return;
        }
        self.walk(next);
    }
}

/// Visits every family of one partition in enumeration order.
pub fn for_each_in_partition<F: FnMut(SetFamily)>(
    spec: &EnumerationSpec,
    part: Partition,
    emit: F,
) -> Result<(), SearchError> {
    spec.validate()?;
    let mut members = vec![part.top.0];
    if let Some(second) = part.second {
        if !second.is_proper_subset_of(part.top) {
            return Err(SearchError::InvalidSpec(format!(
                "{second} is not a proper subset of {}",
                part.top
            )));
        }
        members.push(second.0);
    }
    if spec.max_family_size.is_some_and(|cap| members.len() > cap) {
        return Ok(());
    }
    let present = members.iter().fold(0u64, |acc, &m| acc | 1 << m);
    let mut walker = Walker {
        spec,
        members,
        present,
        emit,
    };
    match part.second {
        Some(second) => walker.walk(second.0.checked_sub(1)),
        None => walker.finish(),
    }
    Ok(())
}

/// Visits every matching nonempty union-closed family exactly once, in the
/// deterministic enumeration order.
pub fn for_each_union_closed<F: FnMut(SetFamily)>(
    spec: &EnumerationSpec,
    mut emit: F,
) -> Result<(), SearchError> {
    for part in partitions(spec)? {
        for_each_in_partition(spec, part, &mut emit)?;
    }
    Ok(())
}

/// Collects every matching family. Partitions run in parallel and are
/// concatenated in partition order, so the result equals the sequential
/// order of [`for_each_union_closed`].
pub fn enumerate_union_closed(spec: &EnumerationSpec) -> Result<Vec<SetFamily>, SearchError> {
    let parts = partitions(spec)?;
    let chunks: Vec<Vec<SetFamily>> = parts
        .into_par_iter()
        .map(|part| {
            let mut out = Vec::new();
            for_each_in_partition(spec, part, |f| out.push(f)).map(|_| out)
        })
        .collect::<Result<_, _>>()?;
    Ok(chunks.into_iter().flatten().collect())
}
