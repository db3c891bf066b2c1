//! The trace-count program and its case-by-case strengthenings.
//!
//! Fix a minimal 2-good set `S` of size `s` whose elements play the roles
//! `a, b, c, d, e` by position. Variable `q_T` counts members meeting `S`
//! exactly in `T`; subsets `T` are encoded as local bitmasks (`a` = bit 0).
//! The total `m = Σ_T q_T` is substituted directly, so every program
//! minimizes `Σ_T q_T`, and each "at most m/3" cap is multiplied by 3 to keep
//! integer coefficients.

mod cases;
mod generators;

pub use cases::{
    case_program, figure1, figure1_csv, figure1_json, solve_case, Bound, CaseResult, CaseSpec,
    Scenario,
};
pub use generators::{
    add_smallway, aux_bc_constant, aux_bc_constraint, build_base, largeway_constant,
    largeway_constraint, middleway_constraints, middleway_rhs, min_objective, singleton_var,
    smallway_targets, sum_of_singletons, total_var_terms,
};

use thiserror::Error;

use crate::ratlp::LpError;

/// Role letters in position order.
pub const ROLES: [char; 5] = ['a', 'b', 'c', 'd', 'e'];

/// A subset of the roles, bit `i` for `ROLES[i]`.
pub type Subset = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("|S| = {0} is not supported here")]
    UnsupportedSize(usize),
    #[error("role conflict: {0}")]
    Roles(String),
    #[error("scenario {scenario:?} is not defined for |S| = {s}")]
    Scenario { scenario: Scenario, s: usize },
    #[error(transparent)]
    Program(#[from] LpError),
    #[error("certificate for {0} did not verify")]
    CertificateRejected(String),
}

/// `ab`, `acd`, or `∅`.
pub fn subset_label(t: Subset) -> String {
    if t == 0 {
        return "∅".to_string();
    }
    ROLES
        .iter()
        .enumerate()
        .filter(|(i, _)| t >> i & 1 == 1)
        .map(|(_, c)| *c)
        .collect()
}

/// Parses role letters (`"acd"`) or `∅`/`empty`/`-` into a subset.
pub fn parse_subset(text: &str) -> Option<Subset> {
    match text {
        "∅" | "empty" | "-" => return Some(0),
        _ => {}
    }
    let mut out = 0;
    for ch in text.chars() {
        let i = ROLES.iter().position(|r| *r == ch)?;
        out |= 1 << i;
    }
    Some(out)
}

/// Variable name of `q_T`: `q_ab`, or `q_empty` for `T = ∅`.
pub fn var_name(t: Subset) -> String {
    if t == 0 {
        "q_empty".to_string()
    } else {
        format!("q_{}", subset_label(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(var_name(0), "q_empty");
        assert_eq!(var_name(0b1101), "q_acd");
        assert_eq!(subset_label(0), "∅");
        assert_eq!(parse_subset("acd"), Some(0b1101));
        assert_eq!(parse_subset("empty"), Some(0));
        assert_eq!(parse_subset("ax"), None);
    }
}
