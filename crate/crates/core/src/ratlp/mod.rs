//! Exact rational linear programming with checkable certificates.
//!
//! A [`LinearProgram`] is a set of named variables with optional bounds, a
//! linear objective, and rows `a·x (<=|>=|=) b`. [`solve`] runs a two-phase
//! primal simplex with Bland's rule over [`BigRational`] and returns an
//! [`LpOutcome`] whose certificate can be re-checked with
//! [`verify_optimality`], [`verify_infeasibility`] or [`verify_unbounded`]
//! without trusting the solver.
//!
//! # Certificate convention
//!
//! A [`Certificate`] holds one weight per row and per finite bound. Every row
//! is read in "≥ orientation": `>=` rows and lower bounds as written, `<=`
//! rows and upper bounds negated, `=` rows as written. Weights on inequality
//! rows and bounds are nonnegative; weights on equality rows are free. The
//! weighted sum of the oriented rows is a linear form `g·x >= v` valid for
//! every feasible `x`.
//!
//! * Optimality (minimize `c·x`): `g = c` and `v` equals the primal value.
//!   For maximize, `g = -c` and `v` equals minus the primal value.
//! * Infeasibility (Farkas): `g = 0` and `v > 0`, i.e. `0 >= v > 0`.

mod certificate;
mod program;
mod simplex;
pub mod text;

pub use certificate::{check_feasible, verify_infeasibility, verify_optimality, verify_unbounded};
pub use program::{LinearConstraint, LinearProgram, Relation, Sense, Variable};
pub use simplex::solve;

use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("variable `{0}` is not declared")]
    UndeclaredVariable(String),
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("constraint `{0}` has no nonzero coefficient")]
    EmptyConstraint(String),
}

/// Row and bound weights; see the module docs for the sign convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// One weight per constraint, in program order.
    pub rows: Vec<BigRational>,
    /// One weight per variable for its lower bound (zero when unbounded).
    pub lower: Vec<BigRational>,
    /// One weight per variable for its upper bound (zero when unbounded).
    pub upper: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        /// Values in variable order. Only the value is unique; the point is
        /// the one reached by Bland's rule.
        primal: Vec<BigRational>,
        dual: Certificate,
    },
    Infeasible {
        farkas: Certificate,
    },
    Unbounded {
        /// A feasible point.
        point: Vec<BigRational>,
        /// A direction along which the objective improves without limit.
        ray: Vec<BigRational>,
    },
}

impl LpOutcome {
    pub fn optimal_value(&self) -> Option<&BigRational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }

    /// Re-checks the attached certificate against `lp`.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        match self {
            LpOutcome::Optimal {
                value,
                primal,
                dual,
            } => verify_optimality(lp, primal, dual) && &lp.objective_value(primal) == value,
            LpOutcome::Infeasible { farkas } => verify_infeasibility(lp, farkas),
            LpOutcome::Unbounded { point, ray } => verify_unbounded(lp, point, ray),
        }
    }
}
