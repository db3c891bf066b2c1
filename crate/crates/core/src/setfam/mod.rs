//! Exact combinatorics of set families over small ground sets.
//!
//! Elements are `1..=n` with `n <= 63`; every subset is a single [`Mask`].
//! Element 1 plays the role of the most frequent element and is the default
//! distinguished element for 2-good sets.

mod covers;
mod family;
pub mod io;
mod mask;
mod twogood;

pub use covers::{is_cover, minimal_covers};
pub use family::{union_closure, SetFamily};
pub use mask::{Element, Mask, MAX_GROUND};
pub use twogood::{
    covered_set, covered_set_by_trace, flexible_pairs, incidence, is_minimal_two_good, is_two_good,
    minimal_two_good_sets, trace_counts, FlexibleWitness, TraceCounts,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("ground set of size {0} exceeds the supported maximum of 63")]
    GroundTooLarge(u8),
    #[error("set {set} has elements outside 1..={n}")]
    ElementOutOfRange { set: Mask, n: u8 },
    #[error("element {element} is outside 1..={n}")]
    BadElement { element: u8, n: u8 },
    #[error("set {0} appears more than once")]
    DuplicateSet(Mask),
    #[error("union closure needs at least one generator")]
    NoGenerators,
    #[error("rank {k} is out of range for a ground set of size {n}")]
    RankOutOfRange { k: usize, n: u8 },
    #[error("the family has no sets")]
    EmptyFamily,
    #[error("the family contains the empty set, which no set can cover")]
    Uncoverable,
    #[error("precondition violated: {0}")]
    Precondition(String),
}
