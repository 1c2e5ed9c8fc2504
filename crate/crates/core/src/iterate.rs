//! Iterative schemes: repeated composition of projectors, Dykstra's algorithm,
//! and checks of the linear rate `‖Gᵏx − P x‖ ≤ γᵏ‖x − P x‖` for compositions
//! that are best approximation mappings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::atomic::Projector;
use crate::error::{ProjError, Result};
use crate::format_f64;
use crate::linalg::{PairClass, PairTag, Vector};
use crate::sets::{Constraint, SetKind};

/// Absolute slack added to every γᵏ bound.
pub const RATE_SLACK: f64 = 1e-9;

/// Tolerance for `P_Fix(G x) = P_Fix(x)`.
pub const FIXPOINT_TOL: f64 = 1e-8;

/// Relative step size below which a composition is considered stationary.
pub const STEP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    Converged,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    /// `iterates[0]` is the starting point.
    pub iterates: Vec<Vector>,
    /// `‖x_k − reference‖` per iterate, when a reference was attached.
    pub errors: Option<Vec<f64>>,
    pub stop_reason: StopReason,
}

impl IterationTrace {
    pub fn last(&self) -> &Vector {
        self.iterates.last().expect("trace is never empty")
    }

    /// Number of iterations performed (iterates minus the starting point).
    pub fn steps(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn attach_reference(&mut self, reference: &Vector) -> Result<()> {
        reference.check_dim(&self.iterates[0])?;
        self.errors = Some(
            self.iterates
                .iter()
                .map(|x| x.distance(reference))
                .collect(),
        );
        Ok(())
    }

    /// CSV with header `k,x0,…,x{n−1},err`; `err` is blank without a reference.
    pub fn to_csv(&self) -> String {
        let dim = self.iterates[0].dim();
        let mut out = String::from("k");
        for i in 0..dim {
            let _ = write!(out, ",x{i}");
        }
        out.push_str(",err\n");
        for (k, x) in self.iterates.iter().enumerate() {
            let _ = write!(out, "{k}");
            for c in x.as_slice() {
                let _ = write!(out, ",{}", format_f64(*c));
            }
            out.push(',');
            if let Some(errs) = &self.errors {
                out.push_str(&format_f64(errs[k]));
            }
            out.push('\n');
        }
        out
    }
}

fn apply_all(projectors: &[&dyn Projector], x: &Vector) -> Result<Vector> {
    let mut y = x.clone();
    for p in projectors {
        y = p.project(&y)?;
    }
    Ok(y)
}

/// Iterates the composition `P_m ∘ … ∘ P_1` (first projector applied first)
/// up to `max_k` times, stopping early once a full application barely moves
/// the point.
pub fn compose_iterate(
    projectors: &[&dyn Projector],
    x: &Vector,
    max_k: usize,
    reference: Option<&Vector>,
) -> Result<IterationTrace> {
    if max_k == 0 {
        return Err(ProjError::InvalidArgument(
            "max_k must be at least 1".into(),
        ));
    }
    if projectors.is_empty() {
        return Err(ProjError::InvalidArgument("no projectors given".into()));
    }
    for p in projectors {
        if p.dim() != x.dim() {
            return Err(ProjError::DimensionMismatch {
                expected: x.dim(),
                found: p.dim(),
            });
        }
    }

    let mut iterates = vec![x.clone()];
    let mut stop_reason = StopReason::MaxIterations;
    for _ in 0..max_k {
        let prev = iterates.last().unwrap();
        let next = apply_all(projectors, prev)?;
        let step = next.distance(prev);
        let done = step <= STEP_TOL * (1.0 + prev.norm());
        iterates.push(next);
        if done {
            stop_reason = StopReason::Converged;
            break;
        }
    }
    let mut trace = IterationTrace {
        iterates,
        errors: None,
        stop_reason,
    };
    if let Some(r) = reference {
        trace.attach_reference(r)?;
    }
    Ok(trace)
}

/// State of Dykstra's algorithm: the current iterate and, for every set, the
/// correction produced the last time that set was visited.
#[derive(Debug, Clone, PartialEq)]
pub struct DykstraState {
    pub x: Vector,
    pub corrections: Vec<Vector>,
    /// Number of single-set steps taken so far.
    pub k: usize,
}

impl DykstraState {
    pub fn new(x: Vector, set_count: usize) -> Self {
        let dim = x.dim();
        DykstraState {
            x,
            corrections: vec![Vector::zeros(dim); set_count],
            k: 0,
        }
    }

    /// One step `x_k = P_{[k]}(x_{k−1} + e_{k−m})`, `e_k = x_{k−1} + e_{k−m} − x_k`,
    /// with step `k` visiting set `(k − 1) mod m`.
    pub fn step(&mut self, sets: &[Constraint]) -> Result<()> {
        let i = self.k % sets.len();
        let shifted = &self.x + &self.corrections[i];
        let next = sets[i].project(&shifted)?;
        self.corrections[i] = &shifted - &next;
        self.x = next;
        self.k += 1;
        Ok(())
    }

    /// Runs one full cycle over the sets and returns how much the state moved:
    /// the larger of the iterate displacement and the total correction change.
    pub fn sweep(&mut self, sets: &[Constraint]) -> Result<f64> {
        let before_x = self.x.clone();
        let before_e = self.corrections.clone();
        for _ in 0..sets.len() {
            self.step(sets)?;
        }
        let de: f64 = before_e
            .iter()
            .zip(&self.corrections)
            .map(|(a, b)| a.distance(b))
            .sum();
        Ok(self.x.distance(&before_x).max(de))
    }

    /// Multiplier of each set implied by its correction, `⟨e_i,u_i⟩/‖u_i‖²`.
    pub fn multipliers(&self, sets: &[Constraint]) -> Vec<f64> {
        sets.iter()
            .zip(&self.corrections)
            .map(|(s, e)| {
                let u = s.normal();
                if u.is_zero() {
                    0.0
                } else {
                    e.dot(u) / u.norm_sq()
                }
            })
            .collect()
    }
}

/// Cyclic Dykstra projections onto `sets`, recording one iterate per sweep.
pub fn dykstra(
    sets: &[Constraint],
    x: &Vector,
    max_sweeps: usize,
    tol: f64,
) -> Result<IterationTrace> {
    dykstra_run(sets, x, max_sweeps, tol).map(|(trace, _)| trace)
}

/// Like [`dykstra`] but also returns the final state.
pub fn dykstra_run(
    sets: &[Constraint],
    x: &Vector,
    max_sweeps: usize,
    tol: f64,
) -> Result<(IterationTrace, DykstraState)> {
    if sets.is_empty() {
        return Err(ProjError::InvalidArgument("no sets given".into()));
    }
    if max_sweeps == 0 {
        return Err(ProjError::InvalidArgument(
            "max_sweeps must be at least 1".into(),
        ));
    }
    for s in sets {
        s.normal().check_dim(x)?;
        if s.is_empty() {
            return Err(ProjError::EmptySet);
        }
    }

    let mut state = DykstraState::new(x.clone(), sets.len());
    let mut iterates = vec![x.clone()];
    let mut stop_reason = StopReason::MaxIterations;
    for _ in 0..max_sweeps {
        let moved = state.sweep(sets)?;
        iterates.push(state.x.clone());
        if moved <= tol {
            stop_reason = StopReason::Converged;
            break;
        }
    }
    let trace = IterationTrace {
        iterates,
        errors: None,
        stop_reason,
    };
    Ok((trace, state))
}

/// `|⟨u1,u2⟩| / (‖u1‖‖u2‖)`, clamped to `[0, 1]`.
pub fn rate_gamma(u1: &Vector, u2: &Vector) -> Result<f64> {
    u1.check_dim(u2)?;
    if u1.is_zero() || u2.is_zero() {
        return Err(ProjError::ZeroNormal);
    }
    Ok((u1.dot(u2).abs() / (u1.norm_sq() * u2.norm_sq()).sqrt()).min(1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BamSample {
    pub fixpoint_identity_holds: bool,
    pub rate_bound_holds: bool,
    /// Largest `‖Gᵏx − Px‖ − γᵏ‖x − Px‖` over the checked k.
    pub worst_excess: f64,
    pub error: Option<ProjError>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BamReport {
    pub samples: Vec<BamSample>,
}

impl BamReport {
    pub fn all_hold(&self) -> bool {
        self.samples
            .iter()
            .all(|s| s.fixpoint_identity_holds && s.rate_bound_holds)
    }
}

/// Checks the best-approximation-mapping properties of `composition` on each
/// sample: `P_Fix(Gx) = P_Fix(x)` and, for `1 ≤ k ≤ k_max`,
/// `‖Gᵏx − P_Fix x‖ ≤ γᵏ‖x − P_Fix x‖ + 1e-9`.
///
/// Failures, including errors raised by the maps, are reported per sample.
pub fn verify_bam<G, F>(
    composition: G,
    fix_projector: F,
    gamma: f64,
    samples: &[Vector],
    k_max: usize,
) -> BamReport
where
    G: Fn(&Vector) -> Result<Vector>,
    F: Fn(&Vector) -> Result<Vector>,
{
    let gamma_ok = (0.0..1.0).contains(&gamma);
    let check = |x: &Vector| -> Result<BamSample> {
        let target = fix_projector(x)?;
        let gx = composition(x)?;
        let fixpoint_identity_holds = fix_projector(&gx)?.distance(&target) <= FIXPOINT_TOL;

        let initial = x.distance(&target);
        let mut worst_excess = f64::NEG_INFINITY;
        let mut iterate = gx;
        let mut bound_factor = gamma;
        for k in 1..=k_max {
            if k > 1 {
                iterate = composition(&iterate)?;
                bound_factor *= gamma;
            }
            let excess = iterate.distance(&target) - bound_factor * initial;
            worst_excess = worst_excess.max(excess);
        }
        Ok(BamSample {
            fixpoint_identity_holds,
            rate_bound_holds: gamma_ok && worst_excess <= RATE_SLACK,
            worst_excess,
            error: None,
        })
    };
    let samples = samples
        .iter()
        .map(|x| {
            check(x).unwrap_or_else(|e| BamSample {
                fixpoint_identity_holds: false,
                rate_bound_holds: false,
                worst_excess: f64::INFINITY,
                error: Some(e),
            })
        })
        .collect();
    BamReport { samples }
}

/// How a two-set composition relates to the projection onto the intersection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum BehaviorCase {
    /// One application of `P2 P1` already equals the intersection projection.
    ExactComposition,
    /// `P2 P1` converges linearly with factor `gamma`.
    LinearRateBAM { gamma: f64 },
    /// One application lands in the intersection, though not always at the
    /// nearest point.
    OneStepFeasible,
    /// Both orders of composition equal the intersection projection.
    ExactBothOrders,
}

impl BehaviorCase {
    pub fn tag(&self) -> &'static str {
        match self {
            BehaviorCase::ExactComposition => "ExactComposition",
            BehaviorCase::LinearRateBAM { .. } => "LinearRateBAM",
            BehaviorCase::OneStepFeasible => "OneStepFeasible",
            BehaviorCase::ExactBothOrders => "ExactBothOrders",
        }
    }
}

/// Predicts the behavior of the composition of the projectors onto two sets
/// from their kinds and the classification of their normals.
pub fn predict_behavior(kind1: SetKind, kind2: SetKind, class: PairClass) -> BehaviorCase {
    let exact = class.tag.is_dependent() || class.tag == PairTag::IndependentOrthogonal;
    match (kind1, kind2) {
        (SetKind::Halfspace, SetKind::Halfspace) => match class.tag {
            _ if exact => BehaviorCase::ExactComposition,
            PairTag::IndependentNegative => BehaviorCase::LinearRateBAM { gamma: class.gamma },
            _ => BehaviorCase::OneStepFeasible,
        },
        // hyperplane with halfspace in either order, or two hyperplanes
        _ if exact => BehaviorCase::ExactBothOrders,
        _ => BehaviorCase::LinearRateBAM { gamma: class.gamma },
    }
}
