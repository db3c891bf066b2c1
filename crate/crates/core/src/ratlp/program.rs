use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::LpError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub lower: Option<BigRational>,
    pub upper: Option<BigRational>,
}

/// `Σ coefficients[v]·v  relation  rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub label: String,
    pub coefficients: BTreeMap<String, BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl LinearConstraint {
    /// Repeated names are summed and zero coefficients dropped.
    pub fn new<I, S>(
        label: impl Into<String>,
        terms: I,
        relation: Relation,
        rhs: BigRational,
    ) -> Self
    where
        I: IntoIterator<Item = (S, BigRational)>,
        S: Into<String>,
    {
        LinearConstraint {
            label: label.into(),
            coefficients: merge_terms(terms),
            relation,
            rhs,
        }
    }

    /// Multiplies both sides by `factor`, flipping the relation if negative.
    pub fn scaled(&self, factor: &BigRational) -> Self {
        assert!(!factor.is_zero(), "cannot scale a constraint by zero");
        let relation = match (self.relation, factor.is_negative()) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        };
        LinearConstraint {
            label: self.label.clone(),
            coefficients: self
                .coefficients
                .iter()
                .map(|(k, v)| (k.clone(), v * factor))
                .collect(),
            relation,
            rhs: &self.rhs * factor,
        }
    }
}

fn merge_terms<I, S>(terms: I) -> BTreeMap<String, BigRational>
where
    I: IntoIterator<Item = (S, BigRational)>,
    S: Into<String>,
{
    let mut out: BTreeMap<String, BigRational> = BTreeMap::new();
    for (name, coeff) in terms {
        *out.entry(name.into()).or_insert_with(BigRational::zero) += coeff;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    sense: Sense,
    variables: Vec<Variable>,
    index: BTreeMap<String, usize>,
    objective: BTreeMap<String, BigRational>,
    constraints: Vec<LinearConstraint>,
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        LinearProgram {
            sense,
            variables: Vec::new(),
            index: BTreeMap::new(),
            objective: BTreeMap::new(),
            constraints: Vec::new(),
        }
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn objective(&self) -> &BTreeMap<String, BigRational> {
        &self.objective
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    /// Replaces the row list (e.g. to permute rows).
    pub fn set_constraints(&mut self, constraints: Vec<LinearConstraint>) {
        self.constraints = constraints;
    }

    pub fn add_variable(
        &mut self,
        name: impl Into<String>,
        lower: Option<BigRational>,
        upper: Option<BigRational>,
    ) -> Result<usize, LpError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(LpError::DuplicateVariable(name));
        }
        let id = self.variables.len();
        self.index.insert(name.clone(), id);
        self.variables.push(Variable { name, lower, upper });
        Ok(id)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn var_mut(&mut self, name: &str) -> Result<&mut Variable, LpError> {
        let id = self
            .variable_index(name)
            .ok_or_else(|| LpError::UndeclaredVariable(name.to_string()))?;
        Ok(&mut self.variables[id])
    }

    pub fn set_lower(&mut self, name: &str, value: Option<BigRational>) -> Result<(), LpError> {
        self.var_mut(name)?.lower = value;
        Ok(())
    }

    pub fn set_upper(&mut self, name: &str, value: Option<BigRational>) -> Result<(), LpError> {
        self.var_mut(name)?.upper = value;
        Ok(())
    }

    pub fn set_objective<I, S>(&mut self, terms: I)
    where
        I: IntoIterator<Item = (S, BigRational)>,
        S: Into<String>,
    {
        self.objective = merge_terms(terms);
    }

    pub fn set_sense(&mut self, sense: Sense) {
        self.sense = sense;
    }

    pub fn add_constraint(&mut self, constraint: LinearConstraint) {
        self.constraints.push(constraint);
    }

    /// Constraint rows plus finite bounds.
    pub fn row_count(&self) -> usize {
        self.constraints.len()
            + self
                .variables
                .iter()
                .map(|v| v.lower.is_some() as usize + v.upper.is_some() as usize)
                .sum::<usize>()
    }

    pub fn validate(&self) -> Result<(), LpError> {
        for name in self.objective.keys() {
            if !self.index.contains_key(name) {
                return Err(LpError::UndeclaredVariable(name.clone()));
            }
        }
        for c in &self.constraints {
            if let Some(name) = c.coefficients.keys().find(|n| !self.index.contains_key(*n)) {
                return Err(LpError::UndeclaredVariable(name.clone()));
            }
            if c.coefficients.values().all(Zero::is_zero) {
                return Err(LpError::EmptyConstraint(c.label.clone()));
            }
        }
        Ok(())
    }

    pub(crate) fn dense(&self, terms: &BTreeMap<String, BigRational>) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.variables.len()];
        for (name, coeff) in terms {
            if let Some(&id) = self.index.get(name) {
                out[id] += coeff;
            }
        }
        out
    }

    /// Objective coefficients in variable order.
    pub fn dense_objective(&self) -> Vec<BigRational> {
        self.dense(&self.objective)
    }

    pub fn objective_value(&self, x: &[BigRational]) -> BigRational {
        dot(&self.dense_objective(), x)
    }

    /// Pairs an assignment with variable names.
    pub fn named<'a>(
        &'a self,
        x: &'a [BigRational],
    ) -> impl Iterator<Item = (&'a str, &'a BigRational)> {
        self.variables.iter().map(|v| v.name.as_str()).zip(x)
    }
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .filter(|(p, _)| !p.is_zero())
        .fold(BigRational::zero(), |acc, (p, q)| acc + p * q)
}
