//! Exact tooling for the second-frequency (k = 2) question on union-closed
//! set families.
//!
//! The crate has four parts:
//!
//! * [`setfam`]: bitmask set families, 2-good sets, trace counts, covered and
//!   flexible elements, and minimal covers (hypergraph transversals).
//! * [`ratlp`]: an exact rational two-phase simplex solver that returns
//!   machine-checkable optimality and Farkas certificates.
//! * [`lpmodel`]: the base program over trace counts `q_T` together with the
//!   constraint generators used in the case analysis, and the 2 x 4 bound table.
//! * [`search`]: brute-force enumeration and property checks at desk scale.

pub mod lpmodel;
pub mod rational;
pub mod ratlp;
pub mod search;
pub mod setfam;

pub use num_rational::BigRational;
