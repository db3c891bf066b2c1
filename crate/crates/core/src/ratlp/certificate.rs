use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::program::dot;
use super::{Certificate, LinearProgram, Relation, Sense};

/// Every row and bound holds exactly at `x`.
pub fn check_feasible(lp: &LinearProgram, x: &[BigRational]) -> bool {
    if lp.validate().is_err() || x.len() != lp.variables().len() {
        return false;
    }
    let rows_ok = lp.constraints().iter().all(|c| {
        let lhs = dot(&lp.dense(&c.coefficients), x);
        match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Ge => lhs >= c.rhs,
            Relation::Eq => lhs == c.rhs,
        }
    });
    rows_ok
        && lp.variables().iter().zip(x).all(|(v, xv)| {
            v.lower.as_ref().is_none_or(|l| xv >= l) && v.upper.as_ref().is_none_or(|u| xv <= u)
        })
}

/// Weighted sum of the oriented rows: returns `(g, v)` for `g·x >= v`, or
/// `None` if a weight has the wrong sign, sits on a missing bound, or the
/// vector lengths do not match the program.
fn combine(lp: &LinearProgram, cert: &Certificate) -> Option<(Vec<BigRational>, BigRational)> {
    let nvars = lp.variables().len();
    if lp.validate().is_err()
        || cert.rows.len() != lp.constraints().len()
        || cert.lower.len() != nvars
        || cert.upper.len() != nvars
    {
        return None;
    }
    let mut g = vec![BigRational::zero(); nvars];
    let mut v = BigRational::zero();
    for (c, w) in lp.constraints().iter().zip(&cert.rows) {
        if w.is_zero() {
            continue;
        }
        let sign = match c.relation {
            Relation::Ge => BigRational::from_integer(1.into()),
            Relation::Le => BigRational::from_integer((-1).into()),
            Relation::Eq => BigRational::from_integer(1.into()),
        };
        if c.relation != Relation::Eq && w.is_negative() {
            return None;
        }
        let ws = w * &sign;
        for (gi, a) in g.iter_mut().zip(lp.dense(&c.coefficients)) {
            *gi += &ws * a;
        }
        v += &ws * &c.rhs;
    }
    for (j, var) in lp.variables().iter().enumerate() {
        let (lw, uw) = (&cert.lower[j], &cert.upper[j]);
        if lw.is_negative() || uw.is_negative() {
            return None;
        }
        if !lw.is_zero() {
            let l = var.lower.as_ref()?;
            g[j] += lw;
            v += lw * l;
        }
        if !uw.is_zero() {
            let u = var.upper.as_ref()?;
            g[j] -= uw;
            v -= uw * u;
        }
    }
    Some((g, v))
}

/// Primal feasibility, dual feasibility, and equal objective values.
pub fn verify_optimality(lp: &LinearProgram, primal: &[BigRational], dual: &Certificate) -> bool {
    if !check_feasible(lp, primal) {
        return false;
    }
    let Some((g, v)) = combine(lp, dual) else {
        return false;
    };
    let mut target = lp.dense_objective();
    if lp.sense() == Sense::Maximize {
        target.iter_mut().for_each(|t| *t = -t.clone());
    }
    g == target && v == dot(&target, primal)
}

/// The oriented combination reads `0 >= v` with `v > 0`.
pub fn verify_infeasibility(lp: &LinearProgram, farkas: &Certificate) -> bool {
    match combine(lp, farkas) {
        Some((g, v)) => g.iter().all(Zero::is_zero) && v.is_positive(),
        None => false,
    }
}

/// `point` is feasible, `ray` is a recession direction of the feasible set,
/// and the objective strictly improves along it.
pub fn verify_unbounded(lp: &LinearProgram, point: &[BigRational], ray: &[BigRational]) -> bool {
    if !check_feasible(lp, point) || ray.len() != point.len() {
        return false;
    }
    let rows_ok = lp.constraints().iter().all(|c| {
        let d = dot(&lp.dense(&c.coefficients), ray);
        match c.relation {
            Relation::Le => !d.is_positive(),
            Relation::Ge => !d.is_negative(),
            Relation::Eq => d.is_zero(),
        }
    });
    let bounds_ok = lp.variables().iter().zip(ray).all(|(v, r)| {
        (v.lower.is_none() || !r.is_negative()) && (v.upper.is_none() || !r.is_positive())
    });
    let slope = lp.objective_value(ray);
    let improves = match lp.sense() {
        Sense::Minimize => slope.is_negative(),
        Sense::Maximize => slope.is_positive(),
    };
    rows_ok && bounds_ok && improves
}
