use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::generators::{
    add_smallway, aux_bc_constraint, build_base, largeway_constraint, middleway_constraints,
    smallway_targets,
};
use super::ModelError;
use crate::rational::{approx, format_rat};
use crate::ratlp::{solve, Certificate, LinearProgram, LpOutcome};

/// Which constraint family is attached to the base program.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    Base,
    /// No covered element.
    C0,
    /// `C = {b}`.
    C1,
    /// `C = {b, c}`.
    C2,
    /// `|C| >= 3`, modelled with `C = {b, c, d}`.
    C3Plus,
    /// The auxiliary `q_b + q_c + q_bc` program for `|S| = 5`.
    AuxBC,
}

impl Scenario {
    /// The Figure-1 columns, in order.
    pub const COLUMNS: [Scenario; 4] = [Scenario::C0, Scenario::C1, Scenario::C2, Scenario::C3Plus];

    /// Column heading: `0`, `1`, `2`, `3+`, or the scenario name otherwise.
    pub fn column(self) -> &'static str {
        match self {
            Scenario::Base => "base",
            Scenario::C0 => "0",
            Scenario::C1 => "1",
            Scenario::C2 => "2",
            Scenario::C3Plus => "3+",
            Scenario::AuxBC => "aux_bc",
        }
    }

    /// `|C|` as used by the column, for the covered-element scenarios.
    pub fn covered_count(self) -> Option<usize> {
        match self {
            Scenario::C0 => Some(0),
            Scenario::C1 => Some(1),
            Scenario::C2 => Some(2),
            Scenario::C3Plus => Some(3),
            Scenario::Base | Scenario::AuxBC => None,
        }
    }

    /// Inverse of [`Scenario::covered_count`]; any count above 2 is `C3Plus`.
    pub fn from_covered_count(c: usize) -> Scenario {
        match c {
            0 => Scenario::C0,
            1 => Scenario::C1,
            2 => Scenario::C2,
            _ => Scenario::C3Plus,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Scenario::Base => "base",
            Scenario::C0 => "C0",
            Scenario::C1 => "C1",
            Scenario::C2 => "C2",
            Scenario::C3Plus => "C3plus",
            Scenario::AuxBC => "AuxBC",
        };
        f.write_str(name)
    }
}

/// One cell of the case analysis. Roles are assigned by position: `a` is
/// flexible and the covered elements are `b`, `c`, `d` in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseSpec {
    pub s: usize,
    pub scenario: Scenario,
}

impl CaseSpec {
    pub fn new(s: usize, scenario: Scenario) -> Result<Self, ModelError> {
        let spec = CaseSpec { s, scenario };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.s != 4 && self.s != 5 {
            return Err(ModelError::UnsupportedSize(self.s));
        }
        let bad = match self.scenario {
            Scenario::AuxBC => self.s != 5,
            other => other.covered_count().is_some_and(|c| c > self.s - 1),
        };
        if bad {
            return Err(ModelError::Scenario {
                scenario: self.scenario,
                s: self.s,
            });
        }
        Ok(())
    }

    /// The program for this cell with the canonical role assignment.
    pub fn program(&self) -> Result<LinearProgram, ModelError> {
        self.validate()?;
        let covered: Vec<usize> = (1..=self.scenario.covered_count().unwrap_or(0)).collect();
        case_program(self.s, self.scenario, 0, &covered)
    }
}

/// Assembles the program of `scenario` with an explicit flexible role `a` and
/// covered roles. `covered` must have the size the scenario expects, except
/// for `C3Plus` which accepts any `|C| >= 3`.
pub fn case_program(
    s: usize,
    scenario: Scenario,
    a: usize,
    covered: &[usize],
) -> Result<LinearProgram, ModelError> {
    let expected = scenario.covered_count().unwrap_or(0);
    let size_ok = match scenario {
        Scenario::C3Plus => covered.len() >= 3,
        _ => covered.len() == expected,
    };
    if !size_ok {
        return Err(ModelError::Roles(format!(
            "scenario {scenario} does not take {} covered roles",
            covered.len()
        )));
    }
    // Validates the roles for every scenario, including those without targets.
    let targets = smallway_targets(s, a, covered)?;
    let mut lp = build_base(s)?;
    match scenario {
        Scenario::Base => {}
        Scenario::C0 => lp = add_smallway(&lp, &targets)?,
        Scenario::C1 => {
            let expected_targets = 1usize << (s - 2);
            assert_eq!(targets.len(), expected_targets, "C1 smallway target count");
            lp = add_smallway(&lp, &targets)?;
            let rows = middleway_constraints(s, covered[0])?;
            assert_eq!(rows.len(), 3, "C1 middleway row count");
            for row in rows {
                lp.add_constraint(row);
            }
        }
        Scenario::C2 => {
            lp = add_smallway(&lp, &targets)?;
            lp.add_constraint(largeway_constraint(s, covered)?);
        }
        Scenario::C3Plus => lp.add_constraint(largeway_constraint(s, covered)?),
        Scenario::AuxBC => lp.add_constraint(aux_bc_constraint(s)?),
    }
    Ok(lp)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Value(BigRational),
    Infeasible,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Value(v) => f.write_str(&format_rat(v)),
            Bound::Infeasible => f.write_str("infeasible"),
        }
    }
}

impl Bound {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            Bound::Value(v) => Some(v),
            Bound::Infeasible => None,
        }
    }

    /// Decimal form for `--approx` output.
    pub fn approx_text(&self) -> String {
        match self {
            Bound::Value(v) => format!("{}", approx(v)),
            Bound::Infeasible => "infeasible".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub spec: CaseSpec,
    pub program: LinearProgram,
    pub outcome: LpOutcome,
    pub bound: Bound,
}

impl CaseResult {
    /// Re-checks the certificate against the stored program.
    pub fn verify(&self) -> bool {
        let consistent = match (&self.bound, &self.outcome) {
            (Bound::Value(v), LpOutcome::Optimal { value, .. }) => v == value,
            (Bound::Infeasible, LpOutcome::Infeasible { .. }) => true,
            _ => false,
        };
        consistent && self.outcome.verify(&self.program)
    }

    /// `{"s", "scenario", "column", "bound"}` plus the certificate weights by
    /// name when `certificates` is set.
    pub fn to_json(&self, certificates: bool) -> Value {
        let mut cell = Map::new();
        cell.insert("s".into(), json!(self.spec.s));
        cell.insert("scenario".into(), json!(self.spec.scenario.to_string()));
        cell.insert("column".into(), json!(self.spec.scenario.column()));
        cell.insert("bound".into(), json!(self.bound.to_string()));
        if certificates {
            let (kind, cert) = match &self.outcome {
                LpOutcome::Optimal { dual, .. } => ("dual", Some(dual)),
                LpOutcome::Infeasible { farkas } => ("farkas", Some(farkas)),
                LpOutcome::Unbounded { .. } => ("none", None),
            };
            if let Some(cert) = cert {
                cell.insert(
                    "certificate".into(),
                    json!({ "kind": kind, "weights": certificate_json(&self.program, cert) }),
                );
            }
        }
        Value::Object(cell)
    }
}

fn certificate_json(lp: &LinearProgram, cert: &Certificate) -> Value {
    let nonzero = |pairs: Vec<(&str, &BigRational)>| -> Value {
        let map: Map<String, Value> = pairs
            .into_iter()
            .filter(|(_, w)| !num_traits::Zero::is_zero(*w))
            .map(|(k, w)| (k.to_string(), json!(format_rat(w))))
            .collect();
        Value::Object(map)
    };
    let rows = lp
        .constraints()
        .iter()
        .map(|c| c.label.as_str())
        .zip(&cert.rows)
        .collect();
    let names = || lp.variables().iter().map(|v| v.name.as_str());
    json!({
        "rows": nonzero(rows),
        "lower": nonzero(names().zip(&cert.lower).collect()),
        "upper": nonzero(names().zip(&cert.upper).collect()),
    })
}

/// Builds, solves and certifies one cell.
pub fn solve_case(spec: CaseSpec) -> Result<CaseResult, ModelError> {
    let program = spec.program()?;
    let outcome = solve(&program)?;
    let bound = match &outcome {
        LpOutcome::Optimal { value, .. } => Bound::Value(value.clone()),
        LpOutcome::Infeasible { .. } => Bound::Infeasible,
        LpOutcome::Unbounded { .. } => {
            return Err(ModelError::CertificateRejected(format!(
                "s={} {} is unbounded below",
                spec.s, spec.scenario
            )))
        }
    };
    let result = CaseResult {
        spec,
        program,
        outcome,
        bound,
    };
    if !result.verify() {
        return Err(ModelError::CertificateRejected(format!(
            "s={} {}",
            spec.s, spec.scenario
        )));
    }
    Ok(result)
}

/// The eight cells `s ∈ {4, 5}` by `|C| ∈ {0, 1, 2, 3+}` in row-major order.
pub fn figure1() -> Result<Vec<CaseResult>, ModelError> {
    let specs: Vec<CaseSpec> = [4usize, 5]
        .iter()
        .flat_map(|&s| {
            Scenario::COLUMNS
                .iter()
                .map(move |&scenario| CaseSpec { s, scenario })
        })
        .collect();
    specs.into_par_iter().map(solve_case).collect()
}

/// `s,0,1,2,3+` header, then one line per row of the grid.
pub fn figure1_csv(cells: &[CaseResult], approximate: bool) -> String {
    let mut out = String::from("s,0,1,2,3+\n");
    for row in cells.chunks(Scenario::COLUMNS.len()) {
        let s = row.first().map_or(0, |c| c.spec.s);
        let values: Vec<String> = row
            .iter()
            .map(|c| {
                if approximate {
                    c.bound.approx_text()
                } else {
                    c.bound.to_string()
                }
            })
            .collect();
        out.push_str(&format!("{s},{}\n", values.join(",")));
    }
    out
}

pub fn figure1_json(cells: &[CaseResult], certificates: bool) -> Value {
    json!({
        "schema": 1,
        "columns": Scenario::COLUMNS.iter().map(|c| c.column()).collect::<Vec<_>>(),
        "cells": cells.iter().map(|c| c.to_json(certificates)).collect::<Vec<_>>(),
    })
}
