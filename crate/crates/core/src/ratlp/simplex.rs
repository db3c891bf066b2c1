//! Two-phase primal simplex on a dense rational tableau, Bland's rule.
//!
//! Standard form is built as follows. A variable with a lower bound `l` is
//! written `x = l + z`; one with only an upper bound `u` is `x = u - z`; a free
//! variable is `x = z⁺ - z⁻`. When both bounds exist the upper one becomes an
//! extra row. Every row is turned into `g·x >= h` or `g·x = h`, a surplus column
//! is subtracted from each inequality, the row is negated if its right-hand
//! side is negative, and every row receives its own artificial column. The
//! artificial block therefore always holds `B⁻¹`, from which row duals are
//! read; bound duals are the reduced costs of the structural columns.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::program::dot;
use super::{Certificate, LinearProgram, LpError, LpOutcome, Relation, Sense};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shift {
    /// `x = l + z`
    Lower,
    /// `x = u - z`
    Upper,
    /// `x = z⁺ - z⁻`
    Free,
}

struct Column {
    var: usize,
    negated: bool,
}

#[derive(Clone, Copy)]
enum Origin {
    Row(usize),
    UpperBound(usize),
}

struct CanonicalRow {
    origin: Origin,
    coeffs: Vec<BigRational>,
    equality: bool,
    rhs: BigRational,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    rhs_col: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let p = self.rows[r][e].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = e;
    }

    fn reduced_cost(&self, cost: &[BigRational], j: usize) -> BigRational {
        let mut d = cost[j].clone();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if !cost[b].is_zero() && !row[j].is_zero() {
                d -= &cost[b] * &row[j];
            }
        }
        d
    }

    /// `c_B · B⁻¹ e_k` read from the artificial block starting at `art`.
    fn row_dual(&self, cost: &[BigRational], art: usize, k: usize) -> BigRational {
        self.rows
            .iter()
            .zip(&self.basis)
            .filter(|(_, &b)| !cost[b].is_zero())
            .fold(BigRational::zero(), |acc, (row, &b)| {
                acc + &cost[b] * &row[art + k]
            })
    }

    fn value(&self, cost: &[BigRational]) -> BigRational {
        self.rows
            .iter()
            .zip(&self.basis)
            .fold(BigRational::zero(), |acc, (row, &b)| {
                acc + &cost[b] * &row[self.rhs_col]
            })
    }

    /// Runs simplex iterations until optimal (`Ok`) or an improving column
    /// with no blocking row is found (`Err(column)`).
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> Result<(), usize> {
        loop {
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_negative());
            let Some(e) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[e].is_positive() {
                    continue;
                }
                let ratio = &row[self.rhs_col] / &row[e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return Err(e),
            }
        }
    }
}

/// Solves `lp` exactly. The outcome always carries a certificate that passes
/// the matching `verify_*` check.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    lp.validate()?;
    let vars = lp.variables();
    let n = vars.len();
    let zero = BigRational::zero;

    for (j, v) in vars.iter().enumerate() {
        if let (Some(l), Some(u)) = (&v.lower, &v.upper) {
            if l > u {
                let mut farkas = Certificate {
                    rows: vec![zero(); lp.constraints().len()],
                    lower: vec![zero(); n],
                    upper: vec![zero(); n],
                };
                farkas.lower[j] = BigRational::one();
                farkas.upper[j] = BigRational::one();
                return Ok(LpOutcome::Infeasible { farkas });
            }
        }
    }

    let mut shifts = Vec::with_capacity(n);
    let mut offsets = Vec::with_capacity(n);
    let mut columns: Vec<Column> = Vec::new();
    for (j, v) in vars.iter().enumerate() {
        match (&v.lower, &v.upper) {
            (Some(l), _) => {
                shifts.push(Shift::Lower);
                offsets.push(l.clone());
                columns.push(Column {
                    var: j,
                    negated: false,
                });
            }
            (None, Some(u)) => {
                shifts.push(Shift::Upper);
                offsets.push(u.clone());
                columns.push(Column {
                    var: j,
                    negated: true,
                });
            }
            (None, None) => {
                shifts.push(Shift::Free);
                offsets.push(zero());
                columns.push(Column {
                    var: j,
                    negated: false,
                });
                columns.push(Column {
                    var: j,
                    negated: true,
                });
            }
        }
    }

    let mut canon: Vec<CanonicalRow> = Vec::new();
    for (i, c) in lp.constraints().iter().enumerate() {
        let a = lp.dense(&c.coefficients);
        let (coeffs, rhs) = match c.relation {
            Relation::Le => (a.into_iter().map(|x| -x).collect(), -c.rhs.clone()),
            Relation::Ge | Relation::Eq => (a, c.rhs.clone()),
        };
        canon.push(CanonicalRow {
            origin: Origin::Row(i),
            coeffs,
            equality: c.relation == Relation::Eq,
            rhs,
        });
    }
    for (j, v) in vars.iter().enumerate() {
        if let (Some(_), Some(u)) = (&v.lower, &v.upper) {
            let mut coeffs = vec![zero(); n];
            coeffs[j] = -BigRational::one();
            canon.push(CanonicalRow {
                origin: Origin::UpperBound(j),
                coeffs,
                equality: false,
                rhs: -u.clone(),
            });
        }
    }

    let m = canon.len();
    let nz = columns.len();
    let ns = canon.iter().filter(|r| !r.equality).count();
    let art = nz + ns;
    let rhs_col = art + m;

    let mut flips = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    let mut surplus = nz;
    for (k, row) in canon.iter().enumerate() {
        let mut t = vec![zero(); rhs_col + 1];
        for (c, col) in columns.iter().enumerate() {
            let g = &row.coeffs[col.var];
            t[c] = if col.negated { -g.clone() } else { g.clone() };
        }
        if !row.equality {
            t[surplus] = -BigRational::one();
            surplus += 1;
        }
        t[rhs_col] = &row.rhs - dot(&row.coeffs, &offsets);
        let flip = t[rhs_col].is_negative();
        if flip {
            t.iter_mut().for_each(|v| *v = -v.clone());
        }
        t[art + k] = BigRational::one();
        flips.push(flip);
        rows.push(t);
    }
    let mut tab = Tableau {
        rows,
        basis: (art..art + m).collect(),
        rhs_col,
    };

    // certificate from the current basis under `cost`
    let certificate = |tab: &Tableau, cost: &[BigRational]| {
        let mut cert = Certificate {
            rows: vec![zero(); lp.constraints().len()],
            lower: vec![zero(); n],
            upper: vec![zero(); n],
        };
        for (k, row) in canon.iter().enumerate() {
            let y = tab.row_dual(cost, art, k);
            let w = if flips[k] { -y } else { y };
            match row.origin {
                Origin::Row(i) => cert.rows[i] = w,
                Origin::UpperBound(j) => cert.upper[j] = w,
            }
        }
        for (c, col) in columns.iter().enumerate() {
            let d = tab.reduced_cost(cost, c);
            match shifts[col.var] {
                Shift::Lower => cert.lower[col.var] = d,
                Shift::Upper => cert.upper[col.var] = d,
                Shift::Free => debug_assert!(d.is_zero()),
            }
        }
        cert
    };

    // phase 1
    let mut cost1 = vec![zero(); rhs_col];
    cost1[art..]
        .iter_mut()
        .for_each(|c| *c = BigRational::one());
    tab.optimize(&cost1, rhs_col)
        .expect("phase 1 is bounded below by zero");
    if tab.value(&cost1).is_positive() {
        let farkas = certificate(&tab, &cost1);
        return Ok(LpOutcome::Infeasible { farkas });
    }
    for r in 0..m {
        if tab.basis[r] >= art {
            if let Some(j) = (0..art).find(|&j| !tab.rows[r][j].is_zero()) {
                tab.pivot(r, j);
            }
        }
    }

    // phase 2
    let mut objective = lp.dense_objective();
    if lp.sense() == Sense::Maximize {
        objective.iter_mut().for_each(|c| *c = -c.clone());
    }
    let mut cost2 = vec![zero(); rhs_col];
    for (c, col) in columns.iter().enumerate() {
        let o = &objective[col.var];
        cost2[c] = if col.negated { -o.clone() } else { o.clone() };
    }

    let to_x = |z: &[BigRational], with_offset: bool| -> Vec<BigRational> {
        let mut x = if with_offset {
            offsets.clone()
        } else {
            vec![zero(); n]
        };
        for (c, col) in columns.iter().enumerate() {
            if col.negated {
                x[col.var] -= &z[c];
            } else {
                x[col.var] += &z[c];
            }
        }
        x
    };
    let basic_values = |tab: &Tableau| {
        let mut z = vec![zero(); rhs_col];
        for (row, &b) in tab.rows.iter().zip(&tab.basis) {
            z[b] = row[rhs_col].clone();
        }
        z
    };

    let outcome = match tab.optimize(&cost2, art) {
        Ok(()) => {
            let primal = to_x(&basic_values(&tab), true);
            let value = lp.objective_value(&primal);
            let dual = certificate(&tab, &cost2);
            LpOutcome::Optimal {
                value,
                primal,
                dual,
            }
        }
        Err(e) => {
            let point = to_x(&basic_values(&tab), true);
            let mut dz = vec![zero(); rhs_col];
            dz[e] = BigRational::one();
            for (row, &b) in tab.rows.iter().zip(&tab.basis) {
                dz[b] = -row[e].clone();
            }
            let ray = to_x(&dz, false);
            LpOutcome::Unbounded { point, ray }
        }
    };
    debug_assert!(
        outcome.verify(lp),
        "solver produced an unverifiable certificate"
    );
    Ok(outcome)
}
