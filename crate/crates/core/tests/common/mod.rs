//! Reference computations that share no code with the solver, and the
//! random programs they are compared on.

#![allow(dead_code)]

use nagel2::rational::int;
use nagel2::ratlp::{LinearConstraint, LinearProgram, LpOutcome, Relation, Sense};
use nagel2::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// `a·x (op) b` with `op` one of `<=`, `>=`, `=`.
#[derive(Clone, Debug)]
pub struct Row {
    pub a: Vec<BigRational>,
    pub op: Op,
    pub b: BigRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Le,
    Ge,
    Eq,
}

impl Row {
    pub fn holds(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self.a.iter().zip(x).map(|(a, x)| a * x).sum();
        match self.op {
            Op::Le => lhs <= self.b,
            Op::Ge => lhs >= self.b,
            Op::Eq => lhs == self.b,
        }
    }
}

/// Unique solution of the square system `rows`, if the matrix is regular.
pub fn solve_square(rows: &[&Row]) -> Option<Vec<BigRational>> {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut line = r.a.clone();
            line.push(r.b.clone());
            line
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, p) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|line| line[n].clone()).collect())
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

/// Every vertex of `{x : rows}` in `dim` variables: feasible points where
/// some `dim` rows are tight with a regular matrix.
pub fn vertices(dim: usize, rows: &[Row]) -> Vec<Vec<BigRational>> {
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    combinations(rows.len(), dim, &mut |pick| {
        let chosen: Vec<&Row> = pick.iter().map(|&i| &rows[i]).collect();
        if let Some(x) = solve_square(&chosen) {
            if rows.iter().all(|r| r.holds(&x)) && !out.contains(&x) {
                out.push(x);
            }
        }
    });
    out
}

/// Result of minimizing over a pointed polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reference {
    Optimal(BigRational),
    Infeasible,
    Unbounded,
}

/// Minimizes `c·x` over `rows`, which must include `x_i >= l_i` for every
/// variable so that the polyhedron is pointed. Optimal values come from the
/// vertices; unboundedness from the extreme rays of the recession cone,
/// normalised to `Σ d_i = 1`.
pub fn minimize_pointed(c: &[BigRational], rows: &[Row]) -> Reference {
    let dim = c.len();
    let verts = vertices(dim, rows);
    if verts.is_empty() {
        return Reference::Infeasible;
    }
    let dot = |x: &[BigRational]| -> BigRational { c.iter().zip(x).map(|(a, b)| a * b).sum() };
    let mut cone: Vec<Row> = rows
        .iter()
        .map(|r| Row {
            a: r.a.clone(),
            op: r.op,
            b: BigRational::zero(),
        })
        .collect();
    cone.push(Row {
        a: vec![BigRational::one(); dim],
        op: Op::Eq,
        b: BigRational::one(),
    });
    if vertices(dim, &cone).iter().any(|d| dot(d).is_negative()) {
        return Reference::Unbounded;
    }
    Reference::Optimal(verts.iter().map(|v| dot(v)).min().expect("nonempty"))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub struct RandomLp {
    pub lp: LinearProgram,
    /// Objective of the equivalent minimization.
    pub c: Vec<BigRational>,
    pub rows: Vec<Row>,
}

/// At most 4 variables, each with a lower bound, and at most 8 rows.
pub fn random_lp<R: Rng>(rng: &mut R) -> RandomLp {
    let dim = rng.gen_range(1..=4usize);
    let m = rng.gen_range(0..=8usize);
    let small = |rng: &mut R| int(rng.gen_range(-4..=4));
    let sense = if rng.gen_bool(0.5) {
        Sense::Minimize
    } else {
        Sense::Maximize
    };
    let mut lp = LinearProgram::new(sense);
    let mut rows = Vec::new();
    let names: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
    let mut anchor = Vec::with_capacity(dim);
    for (i, name) in names.iter().enumerate() {
        let lower = int(rng.gen_range(-3..=1));
        let upper = rng
            .gen_bool(0.3)
            .then(|| &lower + int(rng.gen_range(0..=5)));
        // an integer point inside the bounds that most rows are made to hold at
        let mut at = &lower + int(rng.gen_range(0..=2));
        if let Some(u) = upper.as_ref().filter(|u| at > **u) {
            at = u.clone();
        }
        anchor.push(at);
        let mut unit = vec![int(0); dim];
        unit[i] = int(1);
        rows.push(Row {
            a: unit.clone(),
            op: Op::Ge,
            b: lower.clone(),
        });
        if let Some(u) = &upper {
            rows.push(Row {
                a: unit,
                op: Op::Le,
                b: u.clone(),
            });
        }
        lp.add_variable(name.clone(), Some(lower), upper).unwrap();
    }
    let c: Vec<BigRational> = (0..dim).map(|_| small(rng)).collect();
    lp.set_objective(names.iter().cloned().zip(c.iter().cloned()));
    for r in 0..m {
        let mut a: Vec<BigRational> = (0..dim).map(|_| small(rng)).collect();
        if a.iter().all(|v| *v == int(0)) {
            a[0] = int(1);
        }
        let (op, rel) = match rng.gen_range(0..10) {
            0..=3 => (Op::Le, Relation::Le),
            4..=7 => (Op::Ge, Relation::Ge),
            _ => (Op::Eq, Relation::Eq),
        };
        let b = if rng.gen_bool(0.8) {
            let at: BigRational = a.iter().zip(&anchor).map(|(x, y)| x * y).sum();
            let slack = int(rng.gen_range(0..=3)) / int(2);
            match op {
                Op::Le => at + slack,
                Op::Ge => at - slack,
                Op::Eq => at,
            }
        } else {
            int(rng.gen_range(-6..=10)) / int(rng.gen_range(1..=2))
        };
        let terms = names.iter().cloned().zip(a.iter().cloned());
        lp.add_constraint(LinearConstraint::new(
            format!("r{r}"),
            terms,
            rel,
            b.clone(),
        ));
        rows.push(Row { a, op, b });
    }
    let c_min = match sense {
        Sense::Minimize => c,
        Sense::Maximize => c.iter().map(|v| -v.clone()).collect(),
    };
    RandomLp { lp, c: c_min, rows }
}

/// Solver outcome in the oracle's minimization terms.
pub fn status(out: &LpOutcome, sense: Sense) -> Reference {
    match out {
        LpOutcome::Optimal { value, .. } => Reference::Optimal(match sense {
            Sense::Minimize => value.clone(),
            Sense::Maximize => -value.clone(),
        }),
        LpOutcome::Infeasible { .. } => Reference::Infeasible,
        LpOutcome::Unbounded { .. } => Reference::Unbounded,
    }
}
