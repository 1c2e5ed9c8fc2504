//! Closed-form projectors onto intersections: a finite system of hyperplanes,
//! a pair of halfspaces, and a hyperplane with a halfspace.
//!
//! Every projector returns a [`ProjectionBreakdown`]: the projected point
//! together with one multiplier per input set, such that
//! `point = x − Σ coefficients[i] · u_i` holds exactly as computed. The
//! multipliers double as KKT certificates for the projection problem.
//!
//! Pairs with dependent normals collapse to nested sets, a slab, or an empty
//! intersection and are handled case by case. Pairs with independent normals
//! are split by the region the query point falls in; the 2×2 multiplier system
//! is solved through its explicit determinant `‖u1‖²‖u2‖² − ⟨u1,u2⟩²`.

use serde::{Deserialize, Serialize};

use crate::error::{ProjError, Result};
use crate::linalg::{classify_pair, solve_gram_with_tol, PairClass, PairTag, Vector};
use crate::sets::{reduce_hyperplane_system, Halfspace, Hyperplane};
use crate::Tolerances;

/// Cosine above which an independent pair is flagged as ill-conditioned.
pub const ILL_CONDITIONED_GAMMA: f64 = 1.0 - 1e-6;

/// Position of a point relative to a pair of sets with independent normals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// In both halfspaces.
    InsideBoth,
    /// Outside W1 and `P_{H1} x ∈ W2`: only the first constraint is active.
    C1,
    /// Outside W2 and `P_{H2} x ∈ W1`: only the second constraint is active.
    C2,
    /// `P_{H1} x ∉ W2` and `P_{H2} x ∉ W1`: both constraints are active.
    C3,
    /// Hyperplane/halfspace pair with `P_{H1} x ∉ W2`.
    InC,
    /// Hyperplane/halfspace pair with `P_{H1} x ∈ W2`.
    NotInC,
}

/// Sub-case of a pair whose normals are linearly dependent (zero normals included).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DependentCase {
    /// Both sets are the whole space.
    WholeSpace,
    /// The second set contains the first; project onto the first.
    FirstSetOnly,
    /// The first set contains the second; project onto the second.
    SecondSetOnly,
    /// Parallel halfspaces facing the same way; the tighter one wins.
    NestedHalfspaces,
    /// Opposed parallel halfspaces bounding a nonempty slab.
    Slab,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    HyperplaneSystem,
    Region(Region),
    Dependent(DependentCase),
}

impl Case {
    pub fn label(self) -> String {
        match self {
            Case::HyperplaneSystem => "HyperplaneSystem".to_string(),
            Case::Region(r) => format!("{r:?}"),
            Case::Dependent(d) => format!("{d:?}"),
        }
    }
}

/// Multiplier against the aggregated normal `u = ‖u2‖·u1` used for parallel
/// halfspaces; `point = x − multiplier · normal` as well.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateMultiplier {
    pub normal: Vector,
    pub multiplier: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionBreakdown {
    pub point: Vector,
    /// One multiplier per input set, in input order.
    pub coefficients: Vec<f64>,
    pub case: Case,
    pub aggregate: Option<AggregateMultiplier>,
    /// Independent normals with cosine within 1e-6 of 1.
    pub ill_conditioned: bool,
}

fn reconstruct(x: &Vector, normals: &[&Vector], coefficients: &[f64]) -> Vector {
    let mut p = x.clone();
    for (u, &c) in normals.iter().zip(coefficients) {
        if c != 0.0 {
            p.axpy(-c, u);
        }
    }
    p
}

/// Projection onto the intersection of finitely many hyperplanes.
///
/// Redundant planes are dropped first; the multipliers of the retained planes
/// solve `G β = (⟨u_i,x⟩ − η_i)_i` and dropped planes get zero.
pub fn project_hyperplanes(planes: &[Hyperplane], x: &Vector) -> Result<ProjectionBreakdown> {
    project_hyperplanes_with(planes, x, &Tolerances::default())
}

pub fn project_hyperplanes_with(
    planes: &[Hyperplane],
    x: &Vector,
    tol: &Tolerances,
) -> Result<ProjectionBreakdown> {
    for p in planes {
        p.u.check_dim(x)?;
    }
    let reduced = reduce_hyperplane_system(planes, tol.dependence)?;
    if !reduced.is_feasible() {
        return Err(ProjError::EmptySet);
    }
    let normals: Vec<Vector> = reduced.retained.iter().map(|p| p.u.clone()).collect();
    let rhs: Vec<f64> = reduced
        .retained
        .iter()
        .map(|p| x.dot(&p.u) - p.eta)
        .collect();
    let beta = solve_gram_with_tol(&normals, &rhs, tol.dependence)?;

    let mut coefficients = vec![0.0; planes.len()];
    for (&idx, b) in reduced.retained_indices.iter().zip(beta) {
        coefficients[idx] = b;
    }
    let all: Vec<&Vector> = planes.iter().map(|p| &p.u).collect();
    Ok(ProjectionBreakdown {
        point: reconstruct(x, &all, &coefficients),
        coefficients,
        case: Case::HyperplaneSystem,
        aggregate: None,
        ill_conditioned: false,
    })
}

/// Scalars shared by the two-set formulas.
struct PairTerms {
    /// `⟨x,u1⟩ − η1`
    r1: f64,
    /// `⟨x,u2⟩ − η2`
    r2: f64,
    n1: f64,
    n2: f64,
    g: f64,
    /// `‖u2‖²(⟨x,u1⟩−η1) − ⟨u1,u2⟩(⟨x,u2⟩−η2)`
    num1: f64,
    /// `‖u1‖²(⟨x,u2⟩−η2) − ⟨u1,u2⟩(⟨x,u1⟩−η1)`
    num2: f64,
}

impl PairTerms {
    fn new(u1: &Vector, eta1: f64, u2: &Vector, eta2: f64, x: &Vector) -> Self {
        let r1 = x.dot(u1) - eta1;
        let r2 = x.dot(u2) - eta2;
        let n1 = u1.norm_sq();
        let n2 = u2.norm_sq();
        let g = u1.dot(u2);
        PairTerms {
            r1,
            r2,
            n1,
            n2,
            g,
            num1: n2 * r1 - g * r2,
            num2: n1 * r2 - g * r1,
        }
    }

    fn det(&self) -> f64 {
        self.n1 * self.n2 - self.g * self.g
    }
}

fn check_pair_dims(u1: &Vector, u2: &Vector, x: &Vector) -> Result<()> {
    u1.check_dim(u2)?;
    u1.check_dim(x)
}

/// Region of `x` for two halfspaces with independent normals. Boundary ties
/// go to the single-constraint regions.
pub fn classify_region_halfspace_pair(
    w1: &Halfspace,
    w2: &Halfspace,
    x: &Vector,
    tol: f64,
) -> Result<Region> {
    check_pair_dims(&w1.u, &w2.u, x)?;
    let class = classify_pair(&w1.u, &w2.u, Tolerances::default().dependence)?;
    if class.tag.is_dependent() {
        return Err(ProjError::DependentNormals);
    }
    region_for(w1, w2, x, tol)
}

fn region_for(w1: &Halfspace, w2: &Halfspace, x: &Vector, tol: f64) -> Result<Region> {
    if w1.contains(x, tol)?.is_member() && w2.contains(x, tol)?.is_member() {
        return Ok(Region::InsideBoth);
    }
    let t = PairTerms::new(&w1.u, w1.eta, &w2.u, w2.eta, x);
    Ok(if t.r1 > 0.0 && t.num2 <= 0.0 {
        Region::C1
    } else if t.r2 > 0.0 && t.num1 <= 0.0 {
        Region::C2
    } else {
        Region::C3
    })
}

/// Projection onto `W1 ∩ W2`.
pub fn project_halfspace_pair(
    w1: &Halfspace,
    w2: &Halfspace,
    x: &Vector,
) -> Result<ProjectionBreakdown> {
    project_halfspace_pair_with(w1, w2, x, &Tolerances::default())
}

pub fn project_halfspace_pair_with(
    w1: &Halfspace,
    w2: &Halfspace,
    x: &Vector,
    tol: &Tolerances,
) -> Result<ProjectionBreakdown> {
    check_pair_dims(&w1.u, &w2.u, x)?;
    let class = classify_pair(&w1.u, &w2.u, tol.dependence)?;
    if class.tag.is_dependent() {
        return dependent_halfspace_pair(w1, w2, x, class, tol.membership);
    }

    let region = region_for(w1, w2, x, tol.membership)?;
    let t = PairTerms::new(&w1.u, w1.eta, &w2.u, w2.eta, x);
    let coefficients = match region {
        Region::InsideBoth => [0.0, 0.0],
        Region::C1 => [t.r1 / t.n1, 0.0],
        Region::C2 => [0.0, t.r2 / t.n2],
        Region::C3 => {
            let det = t.det();
            [t.num1 / det, t.num2 / det]
        }
        Region::InC | Region::NotInC => unreachable!("hyperplane regions"),
    };
    Ok(ProjectionBreakdown {
        point: reconstruct(x, &[&w1.u, &w2.u], &coefficients),
        coefficients: coefficients.to_vec(),
        case: Case::Region(region),
        aggregate: None,
        ill_conditioned: class.gamma > ILL_CONDITIONED_GAMMA,
    })
}

/// Multiplier for a single halfspace: `max(⟨x,u⟩ − η, 0)/‖u‖²`, zero inside
/// the membership band.
fn halfspace_multiplier(w: &Halfspace, x: &Vector, tol: f64) -> Result<f64> {
    if w.u.is_zero() || w.contains(x, tol)?.is_member() {
        Ok(0.0)
    } else {
        Ok(w.residual(x)? / w.u.norm_sq())
    }
}

fn dependent_halfspace_pair(
    w1: &Halfspace,
    w2: &Halfspace,
    x: &Vector,
    class: PairClass,
    tol: f64,
) -> Result<ProjectionBreakdown> {
    let (case, coefficients, aggregate) = match class.tag {
        PairTag::BothZero => {
            if w1.eta.min(w2.eta) < 0.0 {
                return Err(ProjError::EmptySet);
            }
            (DependentCase::WholeSpace, [0.0, 0.0], None)
        }
        PairTag::SecondZero => {
            if w2.eta < 0.0 {
                return Err(ProjError::EmptySet);
            }
            let c1 = halfspace_multiplier(w1, x, tol)?;
            (DependentCase::FirstSetOnly, [c1, 0.0], None)
        }
        PairTag::FirstZero => {
            if w1.eta < 0.0 {
                return Err(ProjError::EmptySet);
            }
            let c2 = halfspace_multiplier(w2, x, tol)?;
            (DependentCase::SecondSetOnly, [0.0, c2], None)
        }
        PairTag::DependentPositive => {
            let (m1, m2) = (w1.u.norm(), w2.u.norm());
            let b1 = w1.eta * m2;
            let b2 = w2.eta * m1;
            let merged = Halfspace {
                u: w1.u.scaled(m2),
                eta: b1.min(b2),
            };
            let t = halfspace_multiplier(&merged, x, tol)?;
            let coefficients = if b1 <= b2 {
                [t * m2, 0.0]
            } else {
                [0.0, t * m1]
            };
            let aggregate = AggregateMultiplier {
                normal: merged.u,
                multiplier: t,
            };
            (
                DependentCase::NestedHalfspaces,
                coefficients,
                Some(aggregate),
            )
        }
        PairTag::DependentNegative => {
            let (m1, m2) = (w1.u.norm(), w2.u.norm());
            let width = w1.eta * m2 + w2.eta * m1;
            let scale = 1.0 + (w1.eta * m2).abs() + (w2.eta * m1).abs();
            if width < -tol * scale {
                return Err(ProjError::EmptySet);
            }
            let u = w1.u.scaled(m2);
            let lower = -w2.eta * m1;
            let upper = w1.eta * m2;
            let s = x.dot(&u);
            let band = |bound: f64| tol * (1.0 + bound.abs() + u.norm() * x.norm());
            let nu = u.norm_sq();
            let (coefficients, t) = if s < lower - band(lower) {
                // below the slab: the second halfspace is active, u = −‖u1‖·u2
                let t = (s - lower) / nu;
                ([0.0, -t * m1], t)
            } else if s > upper + band(upper) {
                let t = (s - upper) / nu;
                ([t * m2, 0.0], t)
            } else {
                ([0.0, 0.0], 0.0)
            };
            let aggregate = AggregateMultiplier {
                normal: u,
                multiplier: t,
            };
            (DependentCase::Slab, coefficients, Some(aggregate))
        }
        _ => unreachable!("independent pair in dependent branch"),
    };
    Ok(ProjectionBreakdown {
        point: reconstruct(x, &[&w1.u, &w2.u], &coefficients),
        coefficients: coefficients.to_vec(),
        case: Case::Dependent(case),
        aggregate,
        ill_conditioned: false,
    })
}

/// Projection onto `H1 ∩ W2`.
pub fn project_hyperplane_halfspace(
    h1: &Hyperplane,
    w2: &Halfspace,
    x: &Vector,
) -> Result<ProjectionBreakdown> {
    project_hyperplane_halfspace_with(h1, w2, x, &Tolerances::default())
}

pub fn project_hyperplane_halfspace_with(
    h1: &Hyperplane,
    w2: &Halfspace,
    x: &Vector,
    tol: &Tolerances,
) -> Result<ProjectionBreakdown> {
    check_pair_dims(&h1.u, &w2.u, x)?;
    let class = classify_pair(&h1.u, &w2.u, tol.dependence)?;
    let t = PairTerms::new(&h1.u, h1.eta, &w2.u, w2.eta, x);

    let (case, coefficients, ill_conditioned) = if class.tag.is_dependent() {
        if h1.u.is_zero() {
            // H1 is either empty or the whole space
            if h1.eta != 0.0 || w2.is_empty() {
                return Err(ProjError::EmptySet);
            }
            let c2 = halfspace_multiplier(w2, x, tol.membership)?;
            (
                Case::Dependent(DependentCase::SecondSetOnly),
                [0.0, c2],
                false,
            )
        } else {
            // on H1, ⟨y,u2⟩ is constant: ⟨u1,u2⟩/‖u1‖² · η1
            let level = t.g / t.n1 * h1.eta;
            let band = tol.membership * (1.0 + w2.eta.abs() + level.abs());
            if level > w2.eta + band {
                return Err(ProjError::EmptySet);
            }
            (
                Case::Dependent(DependentCase::FirstSetOnly),
                [t.r1 / t.n1, 0.0],
                false,
            )
        }
    } else if t.num2 > 0.0 {
        let det = t.det();
        (
            Case::Region(Region::InC),
            [t.num1 / det, t.num2 / det],
            class.gamma > ILL_CONDITIONED_GAMMA,
        )
    } else {
        (
            Case::Region(Region::NotInC),
            [t.r1 / t.n1, 0.0],
            class.gamma > ILL_CONDITIONED_GAMMA,
        )
    };
    Ok(ProjectionBreakdown {
        point: reconstruct(x, &[&h1.u, &w2.u], &coefficients),
        coefficients: coefficients.to_vec(),
        case,
        aggregate: None,
        ill_conditioned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from_slice(c).unwrap()
    }

    fn hs(u: &[f64], eta: f64) -> Halfspace {
        Halfspace::new(v(u), eta).unwrap()
    }

    fn hp(u: &[f64], eta: f64) -> Hyperplane {
        Hyperplane::new(v(u), eta).unwrap()
    }

    fn close(a: &Vector, b: &[f64]) -> bool {
        a.distance(&v(b)) <= 1e-12
    }

    #[test]
    fn hyperplane_system_examples() {
        let b = project_hyperplanes(
            &[hp(&[1.0, 0.0, 0.0], 1.0), hp(&[0.0, 1.0, 0.0], 2.0)],
            &v(&[0.0, 0.0, 5.0]),
        )
        .unwrap();
        assert!(close(&b.point, &[1.0, 2.0, 5.0]));
        assert_eq!(b.case, Case::HyperplaneSystem);

        let b = project_hyperplanes(
            &[hp(&[1.0, 0.0], 1.0), hp(&[1.0, 1.0], 3.0)],
            &v(&[0.0, 0.0]),
        )
        .unwrap();
        assert!(close(&b.point, &[1.0, 2.0]));

        let b = project_hyperplanes(
            &[hp(&[1.0, 0.0], 1.0), hp(&[2.0, 0.0], 2.0)],
            &v(&[4.0, 4.0]),
        )
        .unwrap();
        assert!(close(&b.point, &[1.0, 4.0]));
        assert_eq!(b.coefficients[1], 0.0);
    }

    #[test]
    fn hyperplane_system_infeasible() {
        let r = project_hyperplanes(
            &[hp(&[1.0, 0.0], 1.0), hp(&[2.0, 0.0], 5.0)],
            &v(&[0.0, 0.0]),
        );
        assert_eq!(r, Err(ProjError::EmptySet));
    }

    #[test]
    fn region_examples() {
        let w1 = hs(&[1.0, 0.0], 0.0);
        let w2 = hs(&[0.0, 1.0], 0.0);
        let r = |x: &[f64]| classify_region_halfspace_pair(&w1, &w2, &v(x), 1e-10).unwrap();
        assert_eq!(r(&[-1.0, -1.0]), Region::InsideBoth);
        assert_eq!(r(&[1.0, 1.0]), Region::C3);
        assert_eq!(r(&[1.0, -1.0]), Region::C1);
        assert_eq!(r(&[-1.0, 1.0]), Region::C2);

        let w1 = hs(&[1.0, 0.0], 1.0);
        let w2 = hs(&[1.0, 1.0], 0.0);
        assert_eq!(
            classify_region_halfspace_pair(&w1, &w2, &v(&[2.0, 2.0]), 1e-10).unwrap(),
            Region::C2
        );
        let w3 = hs(&[2.0, 0.0], 1.0);
        assert_eq!(
            classify_region_halfspace_pair(&w1, &w3, &v(&[2.0, 2.0]), 1e-10),
            Err(ProjError::DependentNormals)
        );
    }

    #[test]
    fn halfspace_pair_examples() {
        let b = project_halfspace_pair(
            &hs(&[1.0, 0.0], 0.0),
            &hs(&[0.0, 1.0], 0.0),
            &v(&[2.0, 3.0]),
        )
        .unwrap();
        assert!(close(&b.point, &[0.0, 0.0]));
        assert_eq!(b.coefficients, vec![2.0, 3.0]);
        assert_eq!(b.case, Case::Region(Region::C3));

        let b = project_halfspace_pair(
            &hs(&[1.0, 0.0], 1.0),
            &hs(&[1.0, 1.0], 0.0),
            &v(&[2.0, 2.0]),
        )
        .unwrap();
        assert!(close(&b.point, &[0.0, 0.0]));
        assert_eq!(b.coefficients, vec![0.0, 2.0]);
        assert_eq!(b.case, Case::Region(Region::C2));

        let b = project_halfspace_pair(
            &hs(&[1.0, 0.0], 1.0),
            &hs(&[-2.0, 0.0], 1.0),
            &v(&[-3.0, 0.0]),
        )
        .unwrap();
        assert!(close(&b.point, &[-0.5, 0.0]));
        assert_eq!(b.case, Case::Dependent(DependentCase::Slab));
    }

    #[test]
    fn dependent_halfspace_cases() {
        let x = v(&[3.0, 1.0]);
        let z = [0.0, 0.0];
        let pair = |u1: &[f64], e1: f64, u2: &[f64], e2: f64| {
            project_halfspace_pair(&hs(u1, e1), &hs(u2, e2), &x)
        };
        let b = pair(&z, 1.0, &z, 0.0).unwrap();
        assert_eq!(
            (b.case, b.point.clone()),
            (Case::Dependent(DependentCase::WholeSpace), x.clone())
        );
        assert_eq!(pair(&z, 1.0, &z, -1.0), Err(ProjError::EmptySet));

        let b = pair(&[1.0, 0.0], 1.0, &z, 2.0).unwrap();
        assert_eq!(b.case, Case::Dependent(DependentCase::FirstSetOnly));
        assert!(close(&b.point, &[1.0, 1.0]));
        assert_eq!(pair(&[1.0, 0.0], 1.0, &z, -2.0), Err(ProjError::EmptySet));

        let b = pair(&z, 0.0, &[0.0, 1.0], 0.0).unwrap();
        assert_eq!(b.case, Case::Dependent(DependentCase::SecondSetOnly));
        assert!(close(&b.point, &[3.0, 0.0]));
        assert_eq!(pair(&z, -0.5, &[0.0, 1.0], 0.0), Err(ProjError::EmptySet));

        // x₁ ≤ 2 and 2x₁ ≤ 2: the second is tighter
        let b = pair(&[1.0, 0.0], 2.0, &[2.0, 0.0], 2.0).unwrap();
        assert_eq!(b.case, Case::Dependent(DependentCase::NestedHalfspaces));
        assert!(close(&b.point, &[1.0, 1.0]));
        assert_eq!(b.coefficients[0], 0.0);
        assert!((b.coefficients[1] - 1.0).abs() < 1e-15);
        let agg = b.aggregate.unwrap();
        assert!(close(
            &(&x - &agg.normal.scaled(agg.multiplier)),
            &[1.0, 1.0]
        ));

        // x₁ ≤ 1 and x₁ ≥ 2
        assert_eq!(
            pair(&[1.0, 0.0], 1.0, &[-1.0, 0.0], -2.0),
            Err(ProjError::EmptySet)
        );
        let b = pair(&[1.0, 0.0], 1.0, &[-1.0, 0.0], 0.0).unwrap();
        assert!(close(&b.point, &[1.0, 1.0]));
        assert_eq!(b.coefficients, vec![2.0, 0.0]);
    }

    #[test]
    fn degenerate_slab_is_a_hyperplane() {
        let b = project_halfspace_pair(
            &hs(&[1.0, 0.0], 1.0),
            &hs(&[-1.0, 0.0], -1.0),
            &v(&[-2.0, 4.0]),
        )
        .unwrap();
        assert!(close(&b.point, &[1.0, 4.0]));
        assert_eq!(b.coefficients, vec![0.0, 3.0]);
    }

    #[test]
    fn hyperplane_halfspace_examples() {
        let h1 = hp(&[1.0, 0.0], 1.0);
        let w2 = hs(&[0.0, 1.0], 0.0);
        let b = project_hyperplane_halfspace(&h1, &w2, &v(&[3.0, 2.0])).unwrap();
        assert!(close(&b.point, &[1.0, 0.0]));
        assert_eq!(b.coefficients, vec![2.0, 2.0]);
        assert_eq!(b.case, Case::Region(Region::InC));

        let b = project_hyperplane_halfspace(&h1, &w2, &v(&[3.0, -5.0])).unwrap();
        assert!(close(&b.point, &[1.0, -5.0]));
        assert_eq!(b.coefficients, vec![2.0, 0.0]);
        assert_eq!(b.case, Case::Region(Region::NotInC));

        let b = project_hyperplane_halfspace(&h1, &hs(&[2.0, 0.0], 4.0), &v(&[9.0, 9.0])).unwrap();
        assert!(close(&b.point, &[1.0, 9.0]));
        assert_eq!(b.case, Case::Dependent(DependentCase::FirstSetOnly));
    }

    #[test]
    fn hyperplane_halfspace_degenerate() {
        let x = v(&[2.0, 2.0]);
        let whole = hp(&[0.0, 0.0], 0.0);
        let b = project_hyperplane_halfspace(&whole, &hs(&[1.0, 1.0], 0.0), &x).unwrap();
        assert!(close(&b.point, &[0.0, 0.0]));
        assert_eq!(b.case, Case::Dependent(DependentCase::SecondSetOnly));

        let r = project_hyperplane_halfspace(&hp(&[0.0, 0.0], 1.0), &hs(&[1.0, 1.0], 0.0), &x);
        assert_eq!(r, Err(ProjError::EmptySet));
        // x₁ = 1 never meets −x₁ ≤ −2
        let r = project_hyperplane_halfspace(&hp(&[1.0, 0.0], 1.0), &hs(&[-1.0, 0.0], -2.0), &x);
        assert_eq!(r, Err(ProjError::EmptySet));
    }

    #[test]
    fn ill_conditioned_pairs_are_flagged() {
        let w1 = hs(&[1.0, 0.0], 0.0);
        let w2 = hs(&[1.0, 1e-4], 0.0);
        let b = project_halfspace_pair(&w1, &w2, &v(&[1.0, 1.0])).unwrap();
        assert!(b.ill_conditioned);
        let b = project_halfspace_pair(&w1, &hs(&[1.0, 1.0], 0.0), &v(&[1.0, 1.0])).unwrap();
        assert!(!b.ill_conditioned);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let r = project_halfspace_pair(
            &hs(&[1.0, 0.0], 0.0),
            &hs(&[1.0, 0.0, 0.0], 0.0),
            &v(&[1.0, 1.0]),
        );
        assert!(matches!(r, Err(ProjError::DimensionMismatch { .. })));
    }
}
