//! Ground-truth projection by active-set enumeration, and KKT certificate
//! checking for `min ½‖y − x‖²` subject to affine constraints.
//!
//! The projection onto a nonempty polyhedron is characterized by the KKT
//! system
//!
//! ```text
//! p − x + Σ λ_i u_i + Σ β_j u_j = 0,   λ ≥ 0,
//! ⟨p,u_i⟩ ≤ η_i,  ⟨p,u_j⟩ = η_j,  λ_i (⟨p,u_i⟩ − η_i) = 0.
//! ```
//!
//! [`oracle_project`] tries every subset of inequalities as the active set,
//! solves the resulting equality-constrained problem through the Gram system,
//! and keeps the closest feasible candidate with nonnegative multipliers.
//! Since some KKT multiplier vector always has linearly independent support,
//! the enumeration cannot miss the projection.

use serde::{Deserialize, Serialize};

use crate::error::{ProjError, Result};
use crate::linalg::{solve_gram_with_tol, Vector};
use crate::sets::{reduce_hyperplane_system, Constraint, Hyperplane, SetKind};
use crate::Tolerances;

/// Largest number of inequality constraints the oracle will enumerate.
pub const MAX_ORACLE_INEQUALITIES: usize = 20;

/// Default tolerance for certificate validity and candidate screening.
pub const DEFAULT_KKT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KktCertificate {
    /// Multipliers of the inequality sets, in input order.
    pub lambda: Vec<f64>,
    /// Multipliers of the equality sets, in input order.
    pub beta: Vec<f64>,
    pub stationarity_residual: f64,
    pub feasibility_residual: f64,
    pub complementarity_residual: f64,
    pub valid: bool,
}

/// Splits one-multiplier-per-set coefficients into `(lambda, beta)` by set kind.
pub fn split_multipliers(sets: &[Constraint], coefficients: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut lambda = Vec::new();
    let mut beta = Vec::new();
    for (s, &c) in sets.iter().zip(coefficients) {
        match s.kind() {
            SetKind::Halfspace => lambda.push(c),
            SetKind::Hyperplane => beta.push(c),
        }
    }
    (lambda, beta)
}

/// Evaluates the KKT residuals of `p` as the projection of `x`.
///
/// `lambda` pairs with the halfspaces and `beta` with the hyperplanes, each in
/// input order.
pub fn kkt_check(
    sets: &[Constraint],
    x: &Vector,
    p: &Vector,
    lambda: &[f64],
    beta: &[f64],
    tol: f64,
) -> Result<KktCertificate> {
    x.check_dim(p)?;
    for s in sets {
        s.normal().check_dim(x)?;
    }
    let n_ineq = sets
        .iter()
        .filter(|s| s.kind() == SetKind::Halfspace)
        .count();
    let n_eq = sets.len() - n_ineq;
    if lambda.len() != n_ineq {
        return Err(ProjError::DimensionMismatch {
            expected: n_ineq,
            found: lambda.len(),
        });
    }
    if beta.len() != n_eq {
        return Err(ProjError::DimensionMismatch {
            expected: n_eq,
            found: beta.len(),
        });
    }

    let mut stationarity = p - x;
    let mut feasibility: f64 = 0.0;
    let mut complementarity: f64 = 0.0;
    let (mut li, mut bi) = (0, 0);
    for s in sets {
        let residual = p.dot(s.normal()) - s.offset();
        match s.kind() {
            SetKind::Halfspace => {
                let l = lambda[li];
                li += 1;
                stationarity.axpy(l, s.normal());
                feasibility = feasibility.max(residual.max(0.0));
                complementarity = complementarity.max((l * residual).abs());
            }
            SetKind::Hyperplane => {
                stationarity.axpy(beta[bi], s.normal());
                bi += 1;
                feasibility = feasibility.max(residual.abs());
            }
        }
    }
    let stationarity_residual = stationarity.norm();
    let valid = stationarity_residual <= tol
        && feasibility <= tol
        && complementarity <= tol
        && lambda.iter().all(|&l| l >= -tol);
    Ok(KktCertificate {
        lambda: lambda.to_vec(),
        beta: beta.to_vec(),
        stationarity_residual,
        feasibility_residual: feasibility,
        complementarity_residual: complementarity,
        valid,
    })
}

/// Result of [`oracle_project`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleProjection {
    pub point: Vector,
    /// One multiplier per input set, in input order.
    pub coefficients: Vec<f64>,
    pub certificate: KktCertificate,
    /// Indices (into the input) of the halfspaces treated as active.
    pub active_set: Vec<usize>,
    /// Largest distance between any two accepted candidates.
    pub candidate_spread: f64,
}

/// Exact projection onto the intersection of `sets` by enumerating active sets.
pub fn oracle_project(sets: &[Constraint], x: &Vector) -> Result<OracleProjection> {
    oracle_project_with(sets, x, &Tolerances::default(), DEFAULT_KKT_TOL)
}

pub fn oracle_project_with(
    sets: &[Constraint],
    x: &Vector,
    tol: &Tolerances,
    kkt_tol: f64,
) -> Result<OracleProjection> {
    for s in sets {
        s.normal().check_dim(x)?;
        if s.is_empty() {
            return Err(ProjError::EmptySet);
        }
    }
    let ineq: Vec<usize> = (0..sets.len())
        .filter(|&i| sets[i].kind() == SetKind::Halfspace)
        .collect();
    if ineq.len() > MAX_ORACLE_INEQUALITIES {
        return Err(ProjError::TooManyConstraints {
            count: ineq.len(),
            limit: MAX_ORACLE_INEQUALITIES,
        });
    }
    let eq: Vec<usize> = (0..sets.len())
        .filter(|&i| sets[i].kind() == SetKind::Hyperplane)
        .collect();

    let mut best: Option<(f64, Vec<f64>, Vector, Vec<usize>)> = None;
    let mut accepted: Vec<Vector> = Vec::new();

    // Subsets are visited in increasing bitmask order; a later candidate
    // only wins when strictly closer, so ties keep the earliest active set.
    for mask in 0u32..(1u32 << ineq.len()) {
        let active: Vec<usize> = ineq
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, &i)| i)
            .collect();
        let Some((point, coefficients)) = solve_active(sets, &eq, &active, x, tol)? else {
            continue;
        };
        let feasible = sets.iter().all(|s| {
            let band = kkt_tol * (1.0 + s.offset().abs() + s.normal().norm() * point.norm());
            s.violation(&point).map(|v| v <= band).unwrap_or(false)
        });
        let dual_ok = active.iter().all(|&i| coefficients[i] >= -kkt_tol);
        if !(feasible && dual_ok) {
            continue;
        }
        let dist = point.distance(x);
        accepted.push(point.clone());
        if best.as_ref().is_none_or(|(d, ..)| dist < *d) {
            best = Some((dist, coefficients, point, active));
        }
    }

    let Some((_, coefficients, point, active_set)) = best else {
        return Err(ProjError::EmptySet);
    };
    let candidate_spread = accepted
        .iter()
        .flat_map(|a| accepted.iter().map(move |b| a.distance(b)))
        .fold(0.0, f64::max);
    let (lambda, beta) = split_multipliers(sets, &coefficients);
    let certificate = kkt_check(sets, x, &point, &lambda, &beta, kkt_tol)?;
    Ok(OracleProjection {
        point,
        coefficients,
        certificate,
        active_set,
        candidate_spread,
    })
}

/// Projects onto `{⟨y,u_j⟩ = η_j : j ∈ eq ∪ active}`; `None` when that
/// system is inconsistent.
fn solve_active(
    sets: &[Constraint],
    eq: &[usize],
    active: &[usize],
    x: &Vector,
    tol: &Tolerances,
) -> Result<Option<(Vector, Vec<f64>)>> {
    // hyperplanes first so that free multipliers are preferred over signed ones
    let order: Vec<usize> = eq.iter().chain(active).copied().collect();
    let planes: Vec<Hyperplane> = order
        .iter()
        .map(|&i| Hyperplane {
            u: sets[i].normal().clone(),
            eta: sets[i].offset(),
        })
        .collect();
    let reduced = reduce_hyperplane_system(&planes, tol.dependence)?;
    if !reduced.is_feasible() {
        return Ok(None);
    }
    let normals: Vec<Vector> = reduced.retained.iter().map(|p| p.u.clone()).collect();
    let rhs: Vec<f64> = reduced
        .retained
        .iter()
        .map(|p| x.dot(&p.u) - p.eta)
        .collect();
    let beta = solve_gram_with_tol(&normals, &rhs, tol.dependence)?;

    let mut coefficients = vec![0.0; sets.len()];
    let mut point = x.clone();
    for (&local, b) in reduced.retained_indices.iter().zip(beta) {
        coefficients[order[local]] = b;
        point.axpy(-b, &planes[local].u);
    }
    Ok(Some((point, coefficients)))
}
