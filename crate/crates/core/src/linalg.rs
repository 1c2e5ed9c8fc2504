//! Inner-product primitives on ℝⁿ: vectors, Gram matrices, Cholesky solves
//! and linear-dependence classification.
//!
//! Every dependence decision is made with a *relative* tolerance so that the
//! answer does not change when the inputs are rescaled.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{ProjError, Result};

/// Default relative tolerance for linear-dependence decisions.
pub const DEFAULT_DEPENDENCE_TOL: f64 = 1e-10;

/// A dense real vector with finite coordinates.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(ProjError::EmptyVector);
        }
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(ProjError::NonFinite { index });
        }
        Ok(Vector(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "vector dimension must be at least 1");
        Vector(vec![0.0; dim])
    }

    /// Unit coordinate vector `e_axis`.
    pub fn basis(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = 1.0;
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Errors unless `other` lives in the same space.
    pub fn check_dim(&self, other: &Vector) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(ProjError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    /// Unchecked dot product; callers validate dimensions first.
    #[inline]
    pub(crate) fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean distance; panics on dimension mismatch like the arithmetic operators.
    pub fn distance(&self, other: &Vector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// `self += alpha * x`
    pub fn axpy(&mut self, alpha: f64, x: &Vector) {
        assert_eq!(self.dim(), x.dim(), "dimension mismatch");
        for (s, xi) in self.0.iter_mut().zip(&x.0) {
            *s += alpha * xi;
        }
    }

    pub fn scaled(&self, alpha: f64) -> Vector {
        Vector(self.0.iter().map(|c| alpha * c).collect())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = ProjError;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Vector::new(coords)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&Vector> for f64 {
    type Output = Vector;

    fn mul(self, rhs: &Vector) -> Vector {
        rhs.scaled(self)
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        self.scaled(-1.0)
    }
}

/// Standard inner product ⟨x, y⟩.
pub fn inner(x: &Vector, y: &Vector) -> Result<f64> {
    x.check_dim(y)?;
    Ok(x.dot(y))
}

/// Relationship between two normal vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairTag {
    BothZero,
    FirstZero,
    SecondZero,
    DependentPositive,
    DependentNegative,
    IndependentOrthogonal,
    IndependentPositive,
    IndependentNegative,
}

impl PairTag {
    /// Zero normals count as dependent: the pair spans at most one direction.
    pub fn is_dependent(self) -> bool {
        !self.is_independent()
    }

    pub fn is_independent(self) -> bool {
        matches!(
            self,
            PairTag::IndependentOrthogonal
                | PairTag::IndependentPositive
                | PairTag::IndependentNegative
        )
    }

    pub fn has_zero(self) -> bool {
        matches!(
            self,
            PairTag::BothZero | PairTag::FirstZero | PairTag::SecondZero
        )
    }
}

/// Classification of a pair of normals together with the cosine of their angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairClass {
    pub tag: PairTag,
    /// `|⟨u1,u2⟩| / (‖u1‖‖u2‖)`, or 0 when either vector is zero.
    pub gamma: f64,
}

/// Classifies `(u1, u2)` as zero / dependent / independent with the sign of
/// their inner product.
///
/// The pair is dependent iff `‖u1‖‖u2‖ − |⟨u1,u2⟩| ≤ tol·‖u1‖‖u2‖`, and
/// orthogonal iff `|⟨u1,u2⟩| ≤ tol·‖u1‖‖u2‖`.
pub fn classify_pair(u1: &Vector, u2: &Vector, tol: f64) -> Result<PairClass> {
    u1.check_dim(u2)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(ProjError::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let tag = match (u1.is_zero(), u2.is_zero()) {
        (true, true) => Some(PairTag::BothZero),
        (true, false) => Some(PairTag::FirstZero),
        (false, true) => Some(PairTag::SecondZero),
        _ => None,
    };
    if let Some(tag) = tag {
        return Ok(PairClass { tag, gamma: 0.0 });
    }

    let prod = u1.norm() * u2.norm();
    let g = u1.dot(u2);
    let gamma = (g.abs() / prod).min(1.0);
    let tag = if prod - g.abs() <= tol * prod {
        if g > 0.0 {
            PairTag::DependentPositive
        } else {
            PairTag::DependentNegative
        }
    } else if g.abs() <= tol * prod {
        PairTag::IndependentOrthogonal
    } else if g > 0.0 {
        PairTag::IndependentPositive
    } else {
        PairTag::IndependentNegative
    };
    Ok(PairClass { tag, gamma })
}

/// Symmetric matrix of pairwise inner products `⟨a_i, a_j⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl GramMatrix {
    pub fn new(generators: &[Vector]) -> Result<Self> {
        if let Some(first) = generators.first() {
            for g in generators {
                first.check_dim(g)?;
            }
        }
        let size = generators.len();
        let mut entries = vec![0.0; size * size];
        for i in 0..size {
            for j in i..size {
                let v = generators[i].dot(&generators[j]);
                entries[i * size + j] = v;
                entries[j * size + i] = v;
            }
        }
        Ok(GramMatrix { size, entries })
    }

    /// Number of generating vectors.
    pub fn source_count(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.size);
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Cholesky factorization; `None` when a pivot falls below the relative
    /// dependence threshold.
    pub fn cholesky(&self, tol: f64) -> Option<Cholesky> {
        let mut chol = Cholesky::empty();
        for j in 0..self.size {
            let column: Vec<f64> = (0..j).map(|i| self.get(i, j)).collect();
            if !chol.try_push(&column, self.get(j, j), tol) {
                return None;
            }
        }
        Some(chol)
    }
}

/// Lower-triangular factor `L` with `G = L Lᵀ`, grown one generator at a time.
#[derive(Debug, Clone)]
pub struct Cholesky {
    rows: Vec<Vec<f64>>,
}

impl Cholesky {
    fn empty() -> Self {
        Cholesky { rows: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Solves `L y = b`.
    fn forward(&self, b: &[f64]) -> Vec<f64> {
        let mut y = Vec::with_capacity(b.len());
        for (i, row) in self.rows.iter().enumerate() {
            let s: f64 = row[..i].iter().zip(&y).map(|(l, yk)| l * yk).sum();
            y.push((b[i] - s) / row[i]);
        }
        y
    }

    /// Solves `Lᵀ x = y`.
    fn backward(&self, y: &[f64]) -> Vec<f64> {
        let n = self.rows.len();
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = ((i + 1)..n).map(|k| self.rows[k][i] * x[k]).sum();
            x[i] = (y[i] - s) / self.rows[i][i];
        }
        x
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.size());
        self.backward(&self.forward(b))
    }

    /// Appends a generator whose inner products with the current generators are
    /// `column` and whose squared norm is `diag`. Returns false (leaving the
    /// factor untouched) when the new generator is dependent on the others,
    /// i.e. its squared residual is at most `2·tol·diag`.
    fn try_push(&mut self, column: &[f64], diag: f64, tol: f64) -> bool {
        let y = self.forward(column);
        let pivot = diag - y.iter().map(|v| v * v).sum::<f64>();
        if diag.is_nan() || diag <= 0.0 || pivot <= 2.0 * tol * diag {
            return false;
        }
        let mut row = y;
        row.push(pivot.sqrt());
        self.rows.push(row);
        true
    }
}

/// Solves `G(a_1..a_m) β = rhs` for linearly independent generators.
pub fn solve_gram(generators: &[Vector], rhs: &[f64]) -> Result<Vec<f64>> {
    solve_gram_with_tol(generators, rhs, DEFAULT_DEPENDENCE_TOL)
}

pub fn solve_gram_with_tol(generators: &[Vector], rhs: &[f64], tol: f64) -> Result<Vec<f64>> {
    if rhs.len() != generators.len() {
        return Err(ProjError::DimensionMismatch {
            expected: generators.len(),
            found: rhs.len(),
        });
    }
    if generators.is_empty() {
        return Ok(Vec::new());
    }
    let gram = GramMatrix::new(generators)?;
    let chol = gram.cholesky(tol).ok_or(ProjError::SingularGram)?;
    Ok(chol.solve(rhs))
}

/// A vector left out of an independent subfamily, written in terms of the
/// retained vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcludedVector {
    pub index: usize,
    /// One coefficient per retained vector, in retained order.
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndependentSubset {
    pub retained: Vec<usize>,
    pub excluded: Vec<ExcludedVector>,
}

/// Greedily selects a maximal linearly independent subfamily in input order.
///
/// Zero vectors are always excluded with zero coefficients. Every excluded
/// vector comes with its expansion over the full retained family.
pub fn max_independent_subset(vectors: &[Vector], tol: f64) -> Result<IndependentSubset> {
    let Some(first) = vectors.first() else {
        return Err(ProjError::InvalidArgument(
            "independent subset of an empty family".into(),
        ));
    };
    for v in vectors {
        first.check_dim(v)?;
    }

    let mut chol = Cholesky::empty();
    let mut retained: Vec<usize> = Vec::new();
    let mut pending: Vec<(usize, Vec<f64>)> = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let column: Vec<f64> = retained.iter().map(|&r| vectors[r].dot(v)).collect();
        if v.is_zero() {
            pending.push((idx, Vec::new()));
        } else if chol.try_push(&column, v.norm_sq(), tol) {
            retained.push(idx);
        } else {
            pending.push((idx, chol.solve(&column)));
        }
    }

    // coefficients were solved against the retained prefix; later retained
    // vectors get zero weight.
    let excluded = pending
        .into_iter()
        .map(|(index, mut coefficients)| {
            coefficients.resize(retained.len(), 0.0);
            ExcludedVector {
                index,
                coefficients,
            }
        })
        .collect();
    Ok(IndependentSubset { retained, excluded })
}
