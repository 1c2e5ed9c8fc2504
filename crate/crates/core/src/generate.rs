//! Seeded random instances, stratified so that every case branch of the
//! closed-form projectors is exercised.
//!
//! Normals are uniform on the sphere times a scale in `[0.5, 3]`, offsets are
//! uniform in `[−2, 2]` and query points uniform in `[−5, 5]ⁿ`. Dependent
//! pairs are built by scaling one normal by `c` with `|c| ∈ [0.6, 2.5]`.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{ProjError, Result};
use crate::linalg::Vector;
use crate::sets::{Constraint, Halfspace, Hyperplane, Instance};

/// Largest cosine allowed for generated independent pairs.
pub const MAX_INDEPENDENT_COSINE: f64 = 0.999;
/// Smallest |cosine| for pairs meant to be non-orthogonal.
pub const MIN_NONORTHOGONAL_COSINE: f64 = 0.01;

/// Kinds of halfspace pairs. `Dependent(i)` follows the nine-way split of
/// dependent pairs: 1–2 both normals zero, 3–4 second zero, 5–6 first zero,
/// 7 same direction, 8–9 opposite directions; even cases are empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairStratum {
    Dependent(u8),
    Orthogonal,
    Negative,
    Positive,
}

impl PairStratum {
    pub const ALL: [PairStratum; 12] = [
        PairStratum::Dependent(1),
        PairStratum::Dependent(2),
        PairStratum::Dependent(3),
        PairStratum::Dependent(4),
        PairStratum::Dependent(5),
        PairStratum::Dependent(6),
        PairStratum::Dependent(7),
        PairStratum::Dependent(8),
        PairStratum::Dependent(9),
        PairStratum::Orthogonal,
        PairStratum::Negative,
        PairStratum::Positive,
    ];

    pub fn is_empty_case(self) -> bool {
        matches!(self, PairStratum::Dependent(i) if i % 2 == 0)
    }
}

/// Kinds of hyperplane/halfspace pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MixedStratum {
    /// Parallel normals, hyperplane inside the halfspace.
    Dependent,
    /// Parallel normals, hyperplane outside the halfspace.
    DependentEmpty,
    /// Zero-normal hyperplane with zero offset (the whole space).
    WholeSpaceHyperplane,
    Orthogonal,
    Negative,
    Positive,
}

impl MixedStratum {
    pub const ALL: [MixedStratum; 6] = [
        MixedStratum::Dependent,
        MixedStratum::DependentEmpty,
        MixedStratum::WholeSpaceHyperplane,
        MixedStratum::Orthogonal,
        MixedStratum::Negative,
        MixedStratum::Positive,
    ];

    pub fn is_dependent(self) -> bool {
        matches!(
            self,
            MixedStratum::Dependent
                | MixedStratum::DependentEmpty
                | MixedStratum::WholeSpaceHyperplane
        )
    }
}

/// Kinds of hyperplane systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SystemStratum {
    Independent,
    /// One plane is a combination of the others, offsets consistent.
    Redundant,
    /// One plane is a combination of the others with a shifted offset.
    Inconsistent,
    /// An independent system plus a zero-normal plane with zero offset.
    WithZeroPlane,
}

impl SystemStratum {
    pub const ALL: [SystemStratum; 4] = [
        SystemStratum::Independent,
        SystemStratum::Redundant,
        SystemStratum::Inconsistent,
        SystemStratum::WithZeroPlane,
    ];
}

/// Deterministic instance source.
#[derive(Debug, Clone)]
pub struct Generator {
    rng: ChaCha8Rng,
    dim: usize,
}

impl Generator {
    pub fn new(seed: u64, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(ProjError::InvalidArgument(format!(
                "dimension must be at least 2, got {dim}"
            )));
        }
        Ok(Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn unit_vector(&mut self) -> Vector {
        loop {
            let c: Vec<f64> = (0..self.dim)
                .map(|_| self.rng.sample(StandardNormal))
                .collect();
            let v = Vector::new(c).expect("finite normal samples");
            let n = v.norm();
            if n > 1e-8 {
                return v.scaled(1.0 / n);
            }
        }
    }

    pub fn normal(&mut self) -> Vector {
        let s = self.rng.random_range(0.5..3.0);
        self.unit_vector().scaled(s)
    }

    pub fn offset(&mut self) -> f64 {
        self.rng.random_range(-2.0..=2.0)
    }

    pub fn point(&mut self) -> Vector {
        let c: Vec<f64> = (0..self.dim)
            .map(|_| self.rng.random_range(-5.0..=5.0))
            .collect();
        Vector::new(c).expect("finite coordinates")
    }

    pub fn points(&mut self, count: usize) -> Vec<Vector> {
        (0..count).map(|_| self.point()).collect()
    }

    /// Base normal for dependent pairs, long enough that any scaled copy
    /// still has norm at least 0.5.
    fn dependent_base(&mut self) -> Vector {
        let s = self.rng.random_range(0.85..3.0);
        self.unit_vector().scaled(s)
    }

    fn scale_factor(&mut self) -> f64 {
        self.rng.random_range(0.6..2.5)
    }

    fn nonnegative_offset(&mut self) -> f64 {
        self.rng.random_range(0.0..=2.0)
    }

    fn negative_offset(&mut self) -> f64 {
        self.rng.random_range(-2.0..-0.01)
    }

    /// A second normal orthogonal to `u`, with its own random length.
    fn orthogonal_to(&mut self, u: &Vector) -> Vector {
        loop {
            let mut v = self.normal();
            let c = v.dot(u) / u.norm_sq();
            v.axpy(-c, u);
            // one more pass removes the residual rounding
            let c = v.dot(u) / u.norm_sq();
            v.axpy(-c, u);
            if v.norm() >= 0.5 {
                return v;
            }
        }
    }

    /// Two independent normals whose cosine has the requested sign.
    fn signed_pair(&mut self, positive: bool) -> (Vector, Vector) {
        loop {
            let u1 = self.normal();
            let mut u2 = self.normal();
            let cos = u1.dot(&u2) / (u1.norm() * u2.norm());
            if cos.abs() < MIN_NONORTHOGONAL_COSINE || cos.abs() > MAX_INDEPENDENT_COSINE {
                continue;
            }
            if (cos > 0.0) != positive {
                u2 = -&u2;
            }
            return (u1, u2);
        }
    }

    pub fn halfspace_pair(&mut self, stratum: PairStratum) -> (Halfspace, Halfspace) {
        let zero = Vector::zeros(self.dim);
        let (u1, e1, u2, e2) = match stratum {
            PairStratum::Dependent(1) => {
                let (a, b) = (self.nonnegative_offset(), self.nonnegative_offset());
                (zero.clone(), a, zero, b)
            }
            PairStratum::Dependent(2) => {
                let (a, b) = (self.negative_offset(), self.offset());
                if self.rng.random_bool(0.5) {
                    (zero.clone(), a, zero, b)
                } else {
                    (zero.clone(), b, zero, a)
                }
            }
            PairStratum::Dependent(i @ (3 | 4)) => {
                let u = self.normal();
                let e1 = self.offset();
                let e2 = if i == 3 {
                    self.nonnegative_offset()
                } else {
                    self.negative_offset()
                };
                (u, e1, zero, e2)
            }
            PairStratum::Dependent(i @ (5 | 6)) => {
                let u = self.normal();
                let e2 = self.offset();
                let e1 = if i == 5 {
                    self.nonnegative_offset()
                } else {
                    self.negative_offset()
                };
                (zero, e1, u, e2)
            }
            PairStratum::Dependent(7) => {
                let u = self.dependent_base();
                let c = self.scale_factor();
                (u.scaled(c), self.offset(), u, self.offset())
            }
            PairStratum::Dependent(i @ (8 | 9)) => {
                let u1 = self.dependent_base();
                let u2 = u1.scaled(-self.scale_factor());
                let (m1, m2) = (u1.norm(), u2.norm());
                loop {
                    let (e1, e2) = (self.offset(), self.offset());
                    let width = e1 * m2 + e2 * m1;
                    let ok = if i == 8 { width < -0.05 } else { width > 0.05 };
                    if ok {
                        break (u1, e1, u2, e2);
                    }
                }
            }
            PairStratum::Dependent(i) => panic!("no dependent case {i}"),
            PairStratum::Orthogonal => {
                let u1 = self.normal();
                let u2 = self.orthogonal_to(&u1);
                (u1, self.offset(), u2, self.offset())
            }
            PairStratum::Negative | PairStratum::Positive => {
                let (u1, u2) = self.signed_pair(stratum == PairStratum::Positive);
                (u1, self.offset(), u2, self.offset())
            }
        };
        (Halfspace { u: u1, eta: e1 }, Halfspace { u: u2, eta: e2 })
    }

    /// Mix: 25% dependent (the nine cases equally likely), 25% orthogonal,
    /// 25% negative cosine, 25% positive cosine.
    pub fn random_pair_stratum(&mut self) -> PairStratum {
        match self.rng.random_range(0..4) {
            0 => PairStratum::Dependent(self.rng.random_range(1..=9)),
            1 => PairStratum::Orthogonal,
            2 => PairStratum::Negative,
            _ => PairStratum::Positive,
        }
    }

    pub fn hyperplane_halfspace(&mut self, stratum: MixedStratum) -> (Hyperplane, Halfspace) {
        let (u1, e1, u2, e2) = match stratum {
            MixedStratum::Dependent | MixedStratum::DependentEmpty => {
                let u1 = self.dependent_base();
                let c = self.scale_factor() * if self.rng.random_bool(0.5) { 1.0 } else { -1.0 };
                let u2 = u1.scaled(c);
                let e1 = self.offset();
                // on H1, ⟨y,u2⟩ = c·η1
                let level = c * e1;
                let gap = self.rng.random_range(0.05..2.0);
                let e2 = if stratum == MixedStratum::Dependent {
                    level + gap
                } else {
                    level - gap
                };
                (u1, e1, u2, e2)
            }
            MixedStratum::WholeSpaceHyperplane => {
                (Vector::zeros(self.dim), 0.0, self.normal(), self.offset())
            }
            MixedStratum::Orthogonal => {
                let u1 = self.normal();
                let u2 = self.orthogonal_to(&u1);
                (u1, self.offset(), u2, self.offset())
            }
            MixedStratum::Negative | MixedStratum::Positive => {
                let (u1, u2) = self.signed_pair(stratum == MixedStratum::Positive);
                (u1, self.offset(), u2, self.offset())
            }
        };
        (Hyperplane { u: u1, eta: e1 }, Halfspace { u: u2, eta: e2 })
    }

    /// Mix: 10% dependent (6% feasible, 2% empty, 2% whole-space hyperplane),
    /// 15% orthogonal, 75% split evenly between the cosine signs.
    pub fn random_mixed_stratum(&mut self) -> MixedStratum {
        let r: f64 = self.rng.random();
        if r < 0.06 {
            MixedStratum::Dependent
        } else if r < 0.08 {
            MixedStratum::DependentEmpty
        } else if r < 0.10 {
            MixedStratum::WholeSpaceHyperplane
        } else if r < 0.25 {
            MixedStratum::Orthogonal
        } else if r < 0.625 {
            MixedStratum::Negative
        } else {
            MixedStratum::Positive
        }
    }

    /// `count` planes with independent normals (`count ≤ dim`).
    fn independent_planes(&mut self, count: usize) -> Vec<Hyperplane> {
        debug_assert!(count <= self.dim);
        loop {
            let planes: Vec<Hyperplane> = (0..count)
                .map(|_| Hyperplane {
                    u: self.normal(),
                    eta: self.offset(),
                })
                .collect();
            let normals: Vec<Vector> = planes.iter().map(|p| p.u.clone()).collect();
            let subset = crate::linalg::max_independent_subset(&normals, 1e-6)
                .expect("consistent dimensions");
            if subset.excluded.is_empty() {
                return planes;
            }
        }
    }

    /// A plane whose normal and offset are a random combination of `planes`.
    /// Normals shorter than 0.5 are resampled.
    fn combined_plane(&mut self, planes: &[Hyperplane]) -> Hyperplane {
        loop {
            let mut u = Vector::zeros(self.dim);
            let mut eta = 0.0;
            for p in planes {
                let c = self.scale_factor() * if self.rng.random_bool(0.5) { 1.0 } else { -1.0 };
                u.axpy(c, &p.u);
                eta += c * p.eta;
            }
            if u.norm() >= 0.5 {
                return Hyperplane { u, eta };
            }
        }
    }

    /// Three planes, the third a combination of the first two with the
    /// matching offset, placed at a random position in the list.
    pub fn redundant_hyperplane_system(&mut self) -> Vec<Hyperplane> {
        let mut planes = self.independent_planes(2);
        let extra = self.combined_plane(&planes);
        let at = self.rng.random_range(0..=2);
        planes.insert(at, extra);
        planes
    }

    pub fn hyperplane_system(&mut self, stratum: SystemStratum) -> Vec<Hyperplane> {
        let max_base = self.dim.min(4);
        let base = self.rng.random_range(1..=max_base);
        let mut planes = self.independent_planes(base);
        match stratum {
            SystemStratum::Independent => {}
            SystemStratum::Redundant | SystemStratum::Inconsistent => {
                let k = self.rng.random_range(1..=base);
                let mut extra = self.combined_plane(&planes[..k]);
                if stratum == SystemStratum::Inconsistent {
                    let shift = self.rng.random_range(0.1..2.0);
                    extra.eta += if self.rng.random_bool(0.5) {
                        shift
                    } else {
                        -shift
                    };
                }
                let at = self.rng.random_range(0..=planes.len());
                planes.insert(at, extra);
            }
            SystemStratum::WithZeroPlane => {
                let at = self.rng.random_range(0..=planes.len());
                planes.insert(
                    at,
                    Hyperplane {
                        u: Vector::zeros(self.dim),
                        eta: 0.0,
                    },
                );
            }
        }
        planes
    }

    /// An independent positive-cosine halfspace pair with a point outside
    /// both halfspaces whose projection onto the first boundary misses the
    /// second halfspace.
    pub fn one_step_witness(&mut self) -> (Halfspace, Halfspace, Vector) {
        loop {
            let (w1, w2) = self.halfspace_pair(PairStratum::Positive);
            for _ in 0..50 {
                let x = self.point();
                let r1 = w1.residual(&x).expect("dims");
                let r2 = w2.residual(&x).expect("dims");
                if r1 <= 0.05 || r2 <= 0.05 {
                    continue;
                }
                let p = crate::atomic::project_hyperplane(&w1.boundary(), &x).expect("nonzero");
                if w2.residual(&p).expect("dims") > 0.05 {
                    return (w1, w2, x);
                }
            }
        }
    }

    /// An independent non-orthogonal hyperplane/halfspace pair with a point
    /// `x` such that `P_{H1} P_{W2} x ∉ W2`.
    pub fn reverse_order_witness(&mut self, x_in_w2: bool) -> (Hyperplane, Halfspace, Vector) {
        loop {
            let stratum = if self.rng.random_bool(0.5) {
                MixedStratum::Negative
            } else {
                MixedStratum::Positive
            };
            let (h1, w2) = self.hyperplane_halfspace(stratum);
            for _ in 0..50 {
                let x = self.point();
                let r2 = w2.residual(&x).expect("dims");
                if (r2 <= -1e-6) != x_in_w2 || r2.abs() < 1e-6 {
                    continue;
                }
                let y = crate::atomic::project_halfspace(&w2, &x).expect("nonzero");
                let z = crate::atomic::project_hyperplane(&h1, &y).expect("nonzero");
                if w2.residual(&z).expect("dims") > 1e-6 {
                    return (h1, w2, x);
                }
            }
        }
    }
}

/// Instance families produced by [`generate_instance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    /// Two halfspaces, strata mixed as in [`Generator::random_pair_stratum`].
    PairHalfspace,
    /// A hyperplane then a halfspace, mixed as in [`Generator::random_mixed_stratum`].
    HyperplaneHalfspace,
    /// Three hyperplanes, one a combination of the other two.
    HyperplaneSystem,
}

/// Query points attached to every generated instance.
pub const INSTANCE_POINTS: usize = 5;

/// One instance of the given family, fully determined by `(seed, dim, kind)`.
pub fn generate_instance(seed: u64, dim: usize, kind: InstanceKind) -> Result<Instance> {
    let mut g = Generator::new(seed, dim)?;
    let sets: Vec<Constraint> = match kind {
        InstanceKind::PairHalfspace => {
            let s = g.random_pair_stratum();
            let (w1, w2) = g.halfspace_pair(s);
            pair_constraints(w1, w2)
        }
        InstanceKind::HyperplaneHalfspace => {
            let s = g.random_mixed_stratum();
            let (h1, w2) = g.hyperplane_halfspace(s);
            pair_constraints(h1, w2)
        }
        InstanceKind::HyperplaneSystem => g
            .redundant_hyperplane_system()
            .into_iter()
            .map(Constraint::from)
            .collect(),
    };
    let points = g.points(INSTANCE_POINTS);
    Ok(Instance::from_parts(dim, &sets, &points))
}

/// Convenience: the pair as constraints, in order.
pub fn pair_constraints(a: impl Into<Constraint>, b: impl Into<Constraint>) -> Vec<Constraint> {
    vec![a.into(), b.into()]
}

/// Picks one stratum uniformly from a slice.
pub fn choose<T: Copy>(rng: &mut impl Rng, items: &[T]) -> T {
    *items.choose(rng).expect("nonempty")
}
