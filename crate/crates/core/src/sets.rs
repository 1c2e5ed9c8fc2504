//! Hyperplanes, halfspaces, membership tests and consistency reduction of
//! hyperplane systems.

use serde::{Deserialize, Serialize};

use crate::error::{ProjError, Result};
use crate::linalg::{max_independent_subset, Vector};

/// Default relative tolerance for set membership.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-10;

/// `{x : ⟨x,u⟩ = η}`
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub u: Vector,
    pub eta: f64,
}

/// `{x : ⟨x,u⟩ ≤ η}`
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub u: Vector,
    pub eta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Hyperplane,
    Halfspace,
}

/// Outcome of a membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
    OnPlane,
    Off,
}

impl Membership {
    pub fn is_member(self) -> bool {
        matches!(
            self,
            Membership::Inside | Membership::Boundary | Membership::OnPlane
        )
    }
}

/// `tol·(1 + |η| + ‖u‖‖x‖)`, the scale-aware band around the boundary.
fn boundary_band(u: &Vector, eta: f64, x: &Vector, tol: f64) -> f64 {
    tol * (1.0 + eta.abs() + u.norm() * x.norm())
}

impl Hyperplane {
    pub fn new(u: Vector, eta: f64) -> Result<Self> {
        check_offset(eta)?;
        Ok(Hyperplane { u, eta })
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    /// `⟨x,u⟩ − η`
    pub fn residual(&self, x: &Vector) -> Result<f64> {
        self.u.check_dim(x)?;
        Ok(x.dot(&self.u) - self.eta)
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_zero() && self.eta != 0.0
    }

    pub fn is_whole_space(&self) -> bool {
        self.u.is_zero() && self.eta == 0.0
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> Result<Membership> {
        let r = self.residual(x)?;
        Ok(if r.abs() <= boundary_band(&self.u, self.eta, x, tol) {
            Membership::OnPlane
        } else {
            Membership::Off
        })
    }

    /// Boundary hyperplane of the halfspace with the same data.
    pub fn as_halfspace(&self) -> Halfspace {
        Halfspace {
            u: self.u.clone(),
            eta: self.eta,
        }
    }
}

impl Halfspace {
    pub fn new(u: Vector, eta: f64) -> Result<Self> {
        check_offset(eta)?;
        Ok(Halfspace { u, eta })
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    pub fn residual(&self, x: &Vector) -> Result<f64> {
        self.u.check_dim(x)?;
        Ok(x.dot(&self.u) - self.eta)
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_zero() && self.eta < 0.0
    }

    pub fn is_whole_space(&self) -> bool {
        self.u.is_zero() && self.eta >= 0.0
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> Result<Membership> {
        let r = self.residual(x)?;
        let band = boundary_band(&self.u, self.eta, x, tol);
        Ok(if r.abs() <= band {
            Membership::Boundary
        } else if r < 0.0 {
            Membership::Inside
        } else {
            Membership::Outside
        })
    }

    pub fn boundary(&self) -> Hyperplane {
        Hyperplane {
            u: self.u.clone(),
            eta: self.eta,
        }
    }
}

fn check_offset(eta: f64) -> Result<()> {
    if eta.is_finite() {
        Ok(())
    } else {
        Err(ProjError::InvalidArgument(format!(
            "offset {eta} is not finite"
        )))
    }
}

/// Either kind of constraint set.
#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    Hyperplane(Hyperplane),
    Halfspace(Halfspace),
}

impl Constraint {
    pub fn kind(&self) -> SetKind {
        match self {
            Constraint::Hyperplane(_) => SetKind::Hyperplane,
            Constraint::Halfspace(_) => SetKind::Halfspace,
        }
    }

    pub fn normal(&self) -> &Vector {
        match self {
            Constraint::Hyperplane(h) => &h.u,
            Constraint::Halfspace(w) => &w.u,
        }
    }

    pub fn offset(&self) -> f64 {
        match self {
            Constraint::Hyperplane(h) => h.eta,
            Constraint::Halfspace(w) => w.eta,
        }
    }

    pub fn dim(&self) -> usize {
        self.normal().dim()
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Constraint::Hyperplane(h) => h.is_empty(),
            Constraint::Halfspace(w) => w.is_empty(),
        }
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> Result<Membership> {
        match self {
            Constraint::Hyperplane(h) => h.contains(x, tol),
            Constraint::Halfspace(w) => w.contains(x, tol),
        }
    }

    /// Amount by which `x` violates the constraint (0 when satisfied).
    pub fn violation(&self, x: &Vector) -> Result<f64> {
        match self {
            Constraint::Hyperplane(h) => Ok(h.residual(x)?.abs()),
            Constraint::Halfspace(w) => Ok(w.residual(x)?.max(0.0)),
        }
    }
}

impl From<Hyperplane> for Constraint {
    fn from(h: Hyperplane) -> Self {
        Constraint::Hyperplane(h)
    }
}

impl From<Halfspace> for Constraint {
    fn from(w: Halfspace) -> Self {
        Constraint::Halfspace(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SystemStatus {
    Feasible,
    Infeasible,
}

/// A hyperplane system with redundant constraints removed.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedHyperplaneSystem {
    pub retained: Vec<Hyperplane>,
    /// Positions of the retained planes in the original input.
    pub retained_indices: Vec<usize>,
    pub status: SystemStatus,
}

impl ReducedHyperplaneSystem {
    pub fn is_feasible(&self) -> bool {
        self.status == SystemStatus::Feasible
    }
}

/// Keeps a maximal subfamily of planes with independent normals (greedy,
/// input order) and checks that every dropped plane's offset agrees with the
/// combination of retained offsets implied by its normal.
pub fn reduce_hyperplane_system(
    planes: &[Hyperplane],
    tol: f64,
) -> Result<ReducedHyperplaneSystem> {
    if planes.is_empty() {
        return Ok(ReducedHyperplaneSystem {
            retained: Vec::new(),
            retained_indices: Vec::new(),
            status: SystemStatus::Feasible,
        });
    }
    let normals: Vec<Vector> = planes.iter().map(|p| p.u.clone()).collect();
    let subset = max_independent_subset(&normals, tol)?;

    let mut status = SystemStatus::Feasible;
    for ex in &subset.excluded {
        let (implied, scale) = subset.retained.iter().zip(&ex.coefficients).fold(
            (0.0, 0.0),
            |(sum, scale), (&r, &c)| {
                let term = c * planes[r].eta;
                (sum + term, scale + term.abs())
            },
        );
        let eta = planes[ex.index].eta;
        if (eta - implied).abs() > tol * (1.0 + eta.abs() + scale) {
            status = SystemStatus::Infeasible;
            break;
        }
    }

    Ok(ReducedHyperplaneSystem {
        retained: subset.retained.iter().map(|&i| planes[i].clone()).collect(),
        retained_indices: subset.retained,
        status,
    })
}

/// One constraint in the JSON instance format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetSpec {
    pub kind: SetKind,
    pub u: Vec<f64>,
    pub eta: f64,
}

/// JSON instance: ambient dimension, constraint sets and query points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub dim: usize,
    pub sets: Vec<SetSpec>,
    pub points: Vec<Vec<f64>>,
}

impl Instance {
    pub fn from_parts(dim: usize, sets: &[Constraint], points: &[Vector]) -> Self {
        Instance {
            dim,
            sets: sets
                .iter()
                .map(|c| SetSpec {
                    kind: c.kind(),
                    u: c.normal().as_slice().to_vec(),
                    eta: c.offset(),
                })
                .collect(),
            points: points.iter().map(|p| p.as_slice().to_vec()).collect(),
        }
    }

    /// Validates dimensions and finiteness and builds the typed sets.
    pub fn constraints(&self) -> Result<Vec<Constraint>> {
        self.sets
            .iter()
            .map(|s| {
                if s.u.len() != self.dim {
                    return Err(ProjError::DimensionMismatch {
                        expected: self.dim,
                        found: s.u.len(),
                    });
                }
                let u = Vector::new(s.u.clone())?;
                Ok(match s.kind {
                    SetKind::Hyperplane => Hyperplane::new(u, s.eta)?.into(),
                    SetKind::Halfspace => Halfspace::new(u, s.eta)?.into(),
                })
            })
            .collect()
    }

    pub fn point(&self, index: usize) -> Result<Vector> {
        let coords = self.points.get(index).ok_or_else(|| {
            ProjError::InvalidArgument(format!(
                "point index {index} out of range ({} points)",
                self.points.len()
            ))
        })?;
        if coords.len() != self.dim {
            return Err(ProjError::DimensionMismatch {
                expected: self.dim,
                found: coords.len(),
            });
        }
        Vector::new(coords.clone())
    }
}
