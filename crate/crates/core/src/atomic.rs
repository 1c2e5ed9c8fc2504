//! Closed-form projectors onto a single hyperplane or halfspace.

use crate::error::{ProjError, Result};
use crate::linalg::Vector;
use crate::sets::{Constraint, Halfspace, Hyperplane, DEFAULT_MEMBERSHIP_TOL};

/// Anything that maps a point to its nearest point in some closed convex set.
pub trait Projector {
    fn dim(&self) -> usize;
    fn project(&self, x: &Vector) -> Result<Vector>;
}

/// `P_H x = x + (η − ⟨x,u⟩)/‖u‖² · u`
pub fn project_hyperplane(h: &Hyperplane, x: &Vector) -> Result<Vector> {
    h.u.check_dim(x)?;
    if h.u.is_zero() {
        return if h.eta == 0.0 {
            Ok(x.clone())
        } else {
            Err(ProjError::EmptySet)
        };
    }
    let step = (h.eta - x.dot(&h.u)) / h.u.norm_sq();
    let mut p = x.clone();
    p.axpy(step, &h.u);
    Ok(p)
}

/// Projection onto `{⟨x,u⟩ ≤ η}` using the default membership tolerance.
pub fn project_halfspace(w: &Halfspace, x: &Vector) -> Result<Vector> {
    project_halfspace_with_tol(w, x, DEFAULT_MEMBERSHIP_TOL)
}

/// Points within the membership band of the boundary are returned unchanged.
pub fn project_halfspace_with_tol(w: &Halfspace, x: &Vector, tol: f64) -> Result<Vector> {
    w.u.check_dim(x)?;
    if w.u.is_zero() {
        return if w.eta >= 0.0 {
            Ok(x.clone())
        } else {
            Err(ProjError::EmptySet)
        };
    }
    if w.contains(x, tol)?.is_member() {
        Ok(x.clone())
    } else {
        project_hyperplane(&w.boundary(), x)
    }
}

impl Projector for Hyperplane {
    fn dim(&self) -> usize {
        self.u.dim()
    }

    fn project(&self, x: &Vector) -> Result<Vector> {
        project_hyperplane(self, x)
    }
}

impl Projector for Halfspace {
    fn dim(&self) -> usize {
        self.u.dim()
    }

    fn project(&self, x: &Vector) -> Result<Vector> {
        project_halfspace(self, x)
    }
}

/// Halfspace projector with an explicit boundary band; `tol = 0` applies the
/// exact formula to every point with positive residual.
#[derive(Debug, Clone, Copy)]
pub struct BandedHalfspace<'a> {
    pub set: &'a Halfspace,
    pub tol: f64,
}

impl Projector for BandedHalfspace<'_> {
    fn dim(&self) -> usize {
        self.set.u.dim()
    }

    fn project(&self, x: &Vector) -> Result<Vector> {
        project_halfspace_with_tol(self.set, x, self.tol)
    }
}

impl Projector for Constraint {
    fn dim(&self) -> usize {
        self.normal().dim()
    }

    fn project(&self, x: &Vector) -> Result<Vector> {
        match self {
            Constraint::Hyperplane(h) => project_hyperplane(h, x),
            Constraint::Halfspace(w) => project_halfspace(w, x),
        }
    }
}
