//! Line-oriented text form of programs and outcomes, exact rationals as `p/q`.
//!
//! ```text
//! variables: x y
//! minimize: +1 x +2 y
//! c0: +1 x -1 y >= 3
//! bound: x >= 0
//! bound: y <= 7/2
//! ```
//!
//! Any `label: terms REL rhs` line other than the reserved keys is a
//! constraint. `#` starts a comment line.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::{Certificate, LinearConstraint, LinearProgram, LpError, LpOutcome, Relation, Sense};
use crate::rational::{format_rat, parse_rat};

#[derive(Debug, Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Program(#[from] LpError),
}

fn term_list<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a str, &'a BigRational)>,
{
    let parts: Vec<String> = terms
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(name, c)| {
            let sign = if c.is_negative() { '-' } else { '+' };
            format!("{sign}{} {name}", format_rat(&c.abs()))
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

pub fn program_to_text(lp: &LinearProgram) -> String {
    let mut out = String::new();
    let names: Vec<&str> = lp.variables().iter().map(|v| v.name.as_str()).collect();
    writeln!(out, "variables: {}", names.join(" ")).unwrap();
    let sense = match lp.sense() {
        Sense::Minimize => "minimize",
        Sense::Maximize => "maximize",
    };
    let obj = lp.objective().iter().map(|(k, v)| (k.as_str(), v));
    writeln!(out, "{sense}: {}", term_list(obj)).unwrap();
    for c in lp.constraints() {
        let terms = c.coefficients.iter().map(|(k, v)| (k.as_str(), v));
        writeln!(
            out,
            "{}: {} {} {}",
            c.label,
            term_list(terms),
            c.relation,
            format_rat(&c.rhs)
        )
        .unwrap();
    }
    for v in lp.variables() {
        if let Some(l) = &v.lower {
            writeln!(out, "bound: {} >= {}", v.name, format_rat(l)).unwrap();
        }
        if let Some(u) = &v.upper {
            writeln!(out, "bound: {} <= {}", v.name, format_rat(u)).unwrap();
        }
    }
    out
}

fn parse_relation(tok: &str) -> Option<Relation> {
    match tok {
        "<=" => Some(Relation::Le),
        ">=" => Some(Relation::Ge),
        "=" => Some(Relation::Eq),
        _ => None,
    }
}

fn parse_terms(tokens: &[&str]) -> Result<Vec<(String, BigRational)>, String> {
    if tokens == ["0"] {
        return Ok(Vec::new());
    }
    if !tokens.len().is_multiple_of(2) {
        return Err("terms must be coefficient/name pairs".into());
    }
    tokens
        .chunks(2)
        .map(|pair| {
            let coeff = parse_rat(pair[0].trim_start_matches('+')).map_err(|e| e.to_string())?;
            Ok((pair[1].to_string(), coeff))
        })
        .collect()
}

pub fn program_from_text(text: &str) -> Result<LinearProgram, TextError> {
    let mut lp = LinearProgram::new(Sense::Minimize);
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: String| TextError::Syntax {
            line: i + 1,
            message,
        };
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax("expected `key: ...`".into()))?;
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "variables" => {
                for name in tokens {
                    lp.add_variable(name, None, None)?;
                }
            }
            sense @ ("minimize" | "maximize") => {
                lp.set_sense(if sense == "minimize" {
                    Sense::Minimize
                } else {
                    Sense::Maximize
                });
                lp.set_objective(parse_terms(&tokens).map_err(syntax)?);
            }
            "bound" => {
                let [name, rel, value] = tokens[..] else {
                    return Err(syntax("expected `bound: name >=|<= value`".into()));
                };
                let value = parse_rat(value).map_err(|e| syntax(e.to_string()))?;
                match parse_relation(rel) {
                    Some(Relation::Ge) => lp.set_lower(name, Some(value))?,
                    Some(Relation::Le) => lp.set_upper(name, Some(value))?,
                    _ => return Err(syntax(format!("bad bound relation `{rel}`"))),
                }
            }
            label => {
                let pos = tokens
                    .iter()
                    .position(|t| parse_relation(t).is_some())
                    .ok_or_else(|| syntax("missing relation".into()))?;
                if pos + 2 != tokens.len() {
                    return Err(syntax("expected a single right-hand side".into()));
                }
                let terms = parse_terms(&tokens[..pos]).map_err(syntax)?;
                let relation = parse_relation(tokens[pos]).expect("checked above");
                let rhs = parse_rat(tokens[pos + 1]).map_err(|e| syntax(e.to_string()))?;
                lp.add_constraint(LinearConstraint::new(label, terms, relation, rhs));
            }
        }
    }
    lp.validate()?;
    Ok(lp)
}

fn certificate_lines(lp: &LinearProgram, cert: &Certificate, out: &mut String) {
    for (c, w) in lp.constraints().iter().zip(&cert.rows) {
        if !w.is_zero() {
            writeln!(out, "row {} {}", c.label, format_rat(w)).unwrap();
        }
    }
    for (v, w) in lp.variables().iter().zip(&cert.lower) {
        if !w.is_zero() {
            writeln!(out, "lower {} {}", v.name, format_rat(w)).unwrap();
        }
    }
    for (v, w) in lp.variables().iter().zip(&cert.upper) {
        if !w.is_zero() {
            writeln!(out, "upper {} {}", v.name, format_rat(w)).unwrap();
        }
    }
}

/// Status, value, primal point, and the nonzero certificate weights.
pub fn outcome_to_text(lp: &LinearProgram, outcome: &LpOutcome) -> String {
    let mut out = String::new();
    match outcome {
        LpOutcome::Optimal {
            value,
            primal,
            dual,
        } => {
            writeln!(out, "status: optimal").unwrap();
            writeln!(out, "value: {}", format_rat(value)).unwrap();
            for (name, x) in lp.named(primal) {
                writeln!(out, "primal {name} {}", format_rat(x)).unwrap();
            }
            certificate_lines(lp, dual, &mut out);
        }
        LpOutcome::Infeasible { farkas } => {
            writeln!(out, "status: infeasible").unwrap();
            certificate_lines(lp, farkas, &mut out);
        }
        LpOutcome::Unbounded { point, ray } => {
            writeln!(out, "status: unbounded").unwrap();
            for (name, x) in lp.named(point) {
                writeln!(out, "point {name} {}", format_rat(x)).unwrap();
            }
            for (name, x) in lp.named(ray) {
                writeln!(out, "ray {name} {}", format_rat(x)).unwrap();
            }
        }
    }
    out
}
