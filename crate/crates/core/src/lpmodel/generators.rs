use num_rational::BigRational;

use super::{subset_label, var_name, ModelError, Subset, ROLES};
use crate::rational::int;
use crate::ratlp::{solve, LinearConstraint, LinearProgram, LpOutcome, Relation, Sense};

fn check_size(s: usize) -> Result<(), ModelError> {
    if (2..=ROLES.len()).contains(&s) {
        Ok(())
    } else {
        Err(ModelError::UnsupportedSize(s))
    }
}

fn check_role(s: usize, role: usize) -> Result<(), ModelError> {
    if role < s {
        Ok(())
    } else {
        Err(ModelError::Roles(format!(
            "role index {role} is outside |S| = {s}"
        )))
    }
}

/// `Σ_T q_T` as a term list (the substituted `m`).
pub fn total_var_terms(s: usize) -> Vec<(String, BigRational)> {
    (0..1u32 << s).map(|t| (var_name(t), int(1))).collect()
}

/// `3·Σ_{T∋y} q_T <= Σ_T q_T` as `Σ_T q_T - 3·Σ_{T∋y} q_T >= 0`, plus `extra`
/// on the capped side: produces `Σ_T q_T - 3·(Σ_{T∈cap} q_T) >= 3·constant`.
fn third_cap(
    label: String,
    s: usize,
    cap: impl Fn(Subset) -> bool,
    constant: i64,
) -> LinearConstraint {
    let terms = (0..1u32 << s).map(|t| {
        let weight = if cap(t) { 1 - 3 } else { 1 };
        (var_name(t), int(weight))
    });
    LinearConstraint::new(label, terms, Relation::Ge, int(3 * constant))
}

/// The base program: `1 <= q_∅ <= 2`, `q_T >= 1`, and for every role `y`
/// the cap `3·Σ_{T∋y} q_T <= Σ_T q_T`; minimize `Σ_T q_T`.
pub fn build_base(s: usize) -> Result<LinearProgram, ModelError> {
    if s != 4 && s != 5 {
        return Err(ModelError::UnsupportedSize(s));
    }
    Ok(base_program(s))
}

fn base_program(s: usize) -> LinearProgram {
    let mut lp = LinearProgram::new(Sense::Minimize);
    for t in 0..1u32 << s {
        let upper = (t == 0).then(|| int(2));
        lp.add_variable(var_name(t), Some(int(1)), upper)
            .expect("subset names are distinct");
    }
    lp.set_objective(total_var_terms(s));
    for (y, role) in ROLES.iter().enumerate().take(s) {
        lp.add_constraint(third_cap(format!("freq_{role}"), s, |t| t >> y & 1 == 1, 0));
    }
    lp
}

/// `{T ⊆ S : (a ∈ T and T ∩ C = ∅) or |T ∩ C| >= 2}`, ascending by mask.
pub fn smallway_targets(s: usize, a: usize, covered: &[usize]) -> Result<Vec<Subset>, ModelError> {
    check_size(s)?;
    check_role(s, a)?;
    let mut c_mask: Subset = 0;
    for &c in covered {
        check_role(s, c)?;
        if c == a {
            return Err(ModelError::Roles(format!(
                "the flexible role {} cannot be covered",
                ROLES[a]
            )));
        }
        if c_mask >> c & 1 == 1 {
            return Err(ModelError::Roles(format!("role {} listed twice", ROLES[c])));
        }
        c_mask |= 1 << c;
    }
    if covered.len() > s - 1 {
        return Err(ModelError::Roles("|C| must be at most s - 1".into()));
    }
    Ok((0..1u32 << s)
        .filter(|t| (t >> a & 1 == 1 && t & c_mask == 0) || (t & c_mask).count_ones() >= 2)
        .collect())
}

/// Raises the lower bound of every target `q_T` to at least 2.
pub fn add_smallway(lp: &LinearProgram, targets: &[Subset]) -> Result<LinearProgram, ModelError> {
    let mut out = lp.clone();
    for &t in targets {
        let name = var_name(t);
        let id = out.variable_index(&name).ok_or_else(|| {
            ModelError::Roles(format!("{} is not a subset of S", subset_label(t)))
        })?;
        let current = out.variables()[id].lower.clone();
        let raised = match current {
            Some(l) if l > int(2) => l,
            _ => int(2),
        };
        out.set_lower(&name, Some(raised))?;
    }
    Ok(out)
}

/// `2^s - 2^{s-1-|C|} - |C|`.
pub fn largeway_constant(s: usize, c_size: usize) -> Result<i64, ModelError> {
    check_size(s)?;
    if c_size + 1 > s {
        return Err(ModelError::Roles(format!(
            "|C| = {c_size} leaves no room for the flexible role in |S| = {s}"
        )));
    }
    Ok((1i64 << s) - (1i64 << (s - 1 - c_size)) - c_size as i64)
}

/// `3·Σ_{c∈C} q_{c} + 3·constant <= Σ_T q_T`.
pub fn largeway_constraint(s: usize, covered: &[usize]) -> Result<LinearConstraint, ModelError> {
    let constant = largeway_constant(s, covered.len())?;
    let mut singles: Subset = 0;
    for &c in covered {
        check_role(s, c)?;
        singles |= 1 << c;
    }
    Ok(third_cap(
        "largeway".to_string(),
        s,
        |t| t.count_ones() == 1 && t & singles != 0,
        constant,
    ))
}

/// Right-hand sides `K_j` for `j = 2, 3, 4`: subsets containing `b` with at
/// least `j` roles, plus `2^{s-2}`, `2^{s-2} - 1`, `2^{s-3} - 1`.
pub fn middleway_rhs(s: usize) -> Result<[i64; 3], ModelError> {
    if s != 4 && s != 5 {
        return Err(ModelError::UnsupportedSize(s));
    }
    let with_b = |j: u32| {
        (0..1u32 << s)
            .filter(|t| t & 1 == 1 && t.count_ones() >= j)
            .count() as i64
    };
    let extra = [
        1i64 << (s - 2),
        (1i64 << (s - 2)) - 1,
        (1i64 << (s - 3)) - 1,
    ];
    Ok([
        with_b(2) + extra[0],
        with_b(3) + extra[1],
        with_b(4) + extra[2],
    ])
}

/// `Σ_{T∋b, |T|>=j} q_T >= K_j` for `j = 2, 3, 4`.
pub fn middleway_constraints(s: usize, b: usize) -> Result<[LinearConstraint; 3], ModelError> {
    let rhs = middleway_rhs(s)?;
    check_role(s, b)?;
    let row = |j: u32, k: i64| {
        let terms = (0..1u32 << s)
            .filter(|t| t >> b & 1 == 1 && t.count_ones() >= j)
            .map(|t| (var_name(t), int(1)));
        LinearConstraint::new(format!("middleway_{j}"), terms, Relation::Ge, int(k))
    };
    Ok([row(2, rhs[0]), row(3, rhs[1]), row(4, rhs[2])])
}

/// `28 - 3`: the sets `F_T` with `T` meeting `{a, b, c}` (28 of them for
/// `|S| = 5`) minus the three counted twice.
pub fn aux_bc_constant() -> i64 {
    28 - 3
}

/// `3·(q_b + q_c + q_bc) + 75 <= Σ_T q_T`; only for `|S| = 5`.
pub fn aux_bc_constraint(s: usize) -> Result<LinearConstraint, ModelError> {
    if s != 5 {
        return Err(ModelError::UnsupportedSize(s));
    }
    let capped = [0b00010, 0b00100, 0b00110];
    Ok(third_cap(
        "aux_bc".to_string(),
        s,
        |t| capped.contains(&t),
        aux_bc_constant(),
    ))
}

pub fn singleton_var(role: usize) -> String {
    var_name(1 << role)
}

pub fn sum_of_singletons(s: usize) -> Vec<(String, BigRational)> {
    (0..s).map(|y| (singleton_var(y), int(1))).collect()
}

/// Minimizes `objective` over the base program.
pub fn min_objective(
    s: usize,
    objective: &[(String, BigRational)],
) -> Result<LpOutcome, ModelError> {
    let mut lp = build_base(s)?;
    lp.set_objective(objective.iter().cloned());
    Ok(solve(&lp)?)
}
