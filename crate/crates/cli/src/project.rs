//! `project`: one projection of one instance point.

use polyproj::atomic::project_halfspace_with_tol;
use polyproj::closed_form::{
    project_halfspace_pair_with, project_hyperplane_halfspace_with, project_hyperplanes_with,
};
use polyproj::iterate::dykstra_run;
use polyproj::oracle::{
    kkt_check, oracle_project_with, split_multipliers, DEFAULT_KKT_TOL, MAX_ORACLE_INEQUALITIES,
};
use polyproj::{
    inner, Constraint, Hyperplane, Instance, KktCertificate, ProjError, Result, SetKind,
    Tolerances, Vector,
};
use serde::Serialize;

/// Dykstra stops once a sweep moves the state by at most this much.
pub const DYKSTRA_SWEEP_TOL: f64 = 1e-12;

/// Certificate tolerance for Dykstra output, which is only approximate.
pub const DYKSTRA_KKT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[clap(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Oracle,
    Dykstra,
}

#[derive(Debug, Serialize)]
pub struct ProjectOutput {
    pub point: Vec<f64>,
    pub multipliers: Vec<f64>,
    pub region_or_case: String,
    pub certificate: KktCertificate,
}

pub fn run(
    instance: &Instance,
    index: usize,
    method: Method,
    tol: &Tolerances,
    max_sweeps: usize,
) -> Result<ProjectOutput> {
    let sets = instance.constraints()?;
    let x = instance.point(index)?;
    if sets.is_empty() {
        return Err(ProjError::InvalidArgument("instance has no sets".into()));
    }
    let (point, multipliers, label, kkt_tol) = match method {
        Method::ClosedForm => {
            let (p, m, label) = closed_form(&sets, &x, tol)?;
            (p, m, label, DEFAULT_KKT_TOL)
        }
        Method::Oracle => {
            let o = oracle_project_with(&sets, &x, tol, DEFAULT_KKT_TOL)?;
            let label = format!("ActiveSet{:?}", o.active_set);
            (o.point, o.coefficients, label, DEFAULT_KKT_TOL)
        }
        Method::Dykstra => {
            let inequalities = sets
                .iter()
                .filter(|s| s.kind() == SetKind::Halfspace)
                .count();
            if inequalities <= MAX_ORACLE_INEQUALITIES {
                // Dykstra assumes a nonempty intersection; rule out the empty case first
                if let Err(ProjError::EmptySet) =
                    oracle_project_with(&sets, &x, tol, DEFAULT_KKT_TOL)
                {
                    return Err(ProjError::EmptySet);
                }
            }
            let (trace, state) = dykstra_run(&sets, &x, max_sweeps, DYKSTRA_SWEEP_TOL)?;
            let label = format!("Dykstra{:?}", trace.stop_reason);
            (
                state.x.clone(),
                state.multipliers(&sets),
                label,
                DYKSTRA_KKT_TOL,
            )
        }
    };
    let (lambda, beta) = split_multipliers(&sets, &multipliers);
    let certificate = kkt_check(&sets, &x, &point, &lambda, &beta, kkt_tol)?;
    Ok(ProjectOutput {
        point: point.into_inner(),
        multipliers,
        region_or_case: label,
        certificate,
    })
}

fn closed_form(
    sets: &[Constraint],
    x: &Vector,
    tol: &Tolerances,
) -> Result<(Vector, Vec<f64>, String)> {
    use Constraint::{Halfspace as W, Hyperplane as H};
    if sets.iter().all(|s| s.kind() == SetKind::Hyperplane) {
        let planes: Vec<Hyperplane> = sets
            .iter()
            .map(|s| match s {
                H(h) => h.clone(),
                W(_) => unreachable!(),
            })
            .collect();
        let b = project_hyperplanes_with(&planes, x, tol)?;
        return Ok((b.point, b.coefficients, b.case.label()));
    }
    match sets {
        [W(w)] => {
            let p = project_halfspace_with_tol(w, x, tol.membership)?;
            let c = if w.u.is_zero() {
                0.0
            } else {
                inner(&(x - &p), &w.u)? / w.u.norm_sq()
            };
            Ok((p, vec![c], "Halfspace".to_string()))
        }
        [W(w1), W(w2)] => {
            let b = project_halfspace_pair_with(w1, w2, x, tol)?;
            Ok((b.point, b.coefficients, b.case.label()))
        }
        [H(h), W(w)] => {
            let b = project_hyperplane_halfspace_with(h, w, x, tol)?;
            Ok((b.point, b.coefficients, b.case.label()))
        }
        [W(w), H(h)] => {
            let b = project_hyperplane_halfspace_with(h, w, x, tol)?;
            let c = b.coefficients;
            Ok((b.point, vec![c[1], c[0]], b.case.label()))
        }
        _ => Err(ProjError::InvalidArgument(
            "closed_form handles hyperplane systems and pairs with at most one hyperplane; \
             use --method oracle or dykstra"
                .into(),
        )),
    }
}
