//! Discrete minimax fitting.
//!
//! The model is `L(A, x) = a₀ + Σ aᵢ gᵢ(x)` and the quantity minimized is the
//! uniform error `Ψ(A) = max_k |f(x_k) − L(A, x_k)|` over a finite point set.
//! The fit is the linear program
//!
//! ```text
//! minimize z  subject to  −z ≤ f(x_k) − L(A, x_k) ≤ z  for every k.
//! ```

use crate::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::lp::{self, LpOptions, LpProblem, LpStatus, Relation};
use crate::scalar::{dot, Scalar};
use std::cmp::Ordering;

/// Sample points `Q ⊂ R^d` with target values `f(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    dimension: usize,
    points: Vec<Vec<T>>,
    values: Vec<T>,
}

impl<T: Scalar> Dataset<T> {
    /// Validates shapes, finiteness and distinctness of the points.
    pub fn new(points: Vec<Vec<T>>, values: Vec<T>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::LengthMismatch { points: points.len(), values: values.len() });
        }
        let Some(first) = points.first() else {
            return Err(Error::EmptyDataset);
        };
        let dimension = first.len();
        if dimension == 0 {
            return Err(Error::Precondition("points must have dimension ≥ 1".into()));
        }
        for p in &points {
            if p.len() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, found: p.len() });
            }
        }
        if points.iter().flatten().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::Precondition("dataset contains a non-finite number".into()));
        }
        if let Some((first, second)) = find_duplicate(&points) {
            return Err(Error::DuplicatePoint { first, second });
        }
        Ok(Self { dimension, points, values })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn point(&self, k: usize) -> &[T] {
        &self.points[k]
    }

    /// Fewer than `n + 2` points cannot pin down a best approximation from
    /// `n + 1` basis functions.
    pub fn is_underdetermined(&self, basis_size: usize) -> bool {
        self.len() < basis_size + 1
    }
}

fn find_duplicate<T: Scalar>(points: &[Vec<T>]) -> Option<(usize, usize)> {
    let cmp = |a: &Vec<T>, b: &Vec<T>| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.partial_cmp(y).unwrap_or(Ordering::Equal))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    };
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| cmp(&points[i], &points[j]).then(i.cmp(&j)));
    order
        .windows(2)
        .find(|w| cmp(&points[w[0]], &points[w[1]]) == Ordering::Equal)
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
}

/// Model coefficients `(a₀, a₁, …, a_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients<T>(pub Vec<T>);

impl<T: Scalar> Coefficients<T> {
    pub fn zeros(len: usize) -> Self {
        Self(vec![T::zero(); len])
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self + t·direction`.
    pub fn stepped(&self, direction: &[T], t: T) -> Self {
        Self(self.0.iter().zip(direction).map(|(&a, &h)| a + t * h).collect())
    }
}

impl<T> From<Vec<T>> for Coefficients<T> {
    fn from(v: Vec<T>) -> Self {
        Self(v)
    }
}

fn check_coefficients<T: Scalar>(basis: &BasisSpec<T>, c: &Coefficients<T>) -> Result<()> {
    if c.len() != basis.size() {
        return Err(Error::DimensionMismatch { expected: basis.size(), found: c.len() });
    }
    Ok(())
}

fn check_dataset<T: Scalar>(basis: &BasisSpec<T>, data: &Dataset<T>) -> Result<()> {
    if data.dimension() != basis.dimension() {
        return Err(Error::DimensionMismatch {
            expected: basis.dimension(),
            found: data.dimension(),
        });
    }
    Ok(())
}

pub fn evaluate_model<T: Scalar>(
    basis: &BasisSpec<T>,
    coefficients: &Coefficients<T>,
    point: &[T],
) -> Result<T> {
    check_coefficients(basis, coefficients)?;
    Ok(dot(coefficients.values(), &basis.lift(point)?))
}

/// Signed deviations `f(x_k) − L(A, x_k)`.
pub fn deviations<T: Scalar>(
    basis: &BasisSpec<T>,
    coefficients: &Coefficients<T>,
    data: &Dataset<T>,
) -> Result<Vec<T>> {
    check_coefficients(basis, coefficients)?;
    check_dataset(basis, data)?;
    data.points()
        .iter()
        .zip(data.values())
        .map(|(p, &f)| Ok(f - dot(coefficients.values(), &basis.lift(p)?)))
        .collect()
}

pub fn uniform_error<T: Scalar>(
    basis: &BasisSpec<T>,
    coefficients: &Coefficients<T>,
    data: &Dataset<T>,
) -> Result<T> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let dev = deviations(basis, coefficients, data)?;
    Ok(dev.iter().fold(T::zero(), |m, d| m.max(d.abs())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult<T> {
    pub coefficients: Coefficients<T>,
    /// `Ψ(A*)`, recomputed from the deviations.
    pub error: T,
    pub deviations: Vec<T>,
}

pub fn fit_minimax<T: Scalar>(basis: &BasisSpec<T>, data: &Dataset<T>) -> Result<FitResult<T>> {
    fit_minimax_with(basis, data, &LpOptions::default())
}

pub fn fit_minimax_with<T: Scalar>(
    basis: &BasisSpec<T>,
    data: &Dataset<T>,
    opts: &LpOptions<T>,
) -> Result<FitResult<T>> {
    check_dataset(basis, data)?;
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let size = basis.size();
    let z = size;
    let mut objective = vec![T::zero(); size + 1];
    objective[z] = T::one();
    let mut problem = LpProblem::minimize(objective);
    for j in 0..size {
        problem.set_free(j);
    }
    for (p, &f) in data.points().iter().zip(data.values()) {
        let mut row = basis.lift(p)?;
        row.push(T::one());
        problem.add_row(row.clone(), Relation::Ge, f);
        row[z] = -T::one();
        problem.add_row(row, Relation::Le, f);
    }
    let out = lp::solve_with(&problem, opts)?;
    if out.status != LpStatus::Optimal {
        return Err(Error::NumericalFailure(format!("minimax LP ended {:?}", out.status)));
    }
    let coefficients = Coefficients(out.primal[..size].to_vec());
    let deviations = deviations(basis, &coefficients, data)?;
    let error = deviations.iter().fold(T::zero(), |m, d| m.max(d.abs()));
    let agreement = T::lit(1e-8).max(T::epsilon() * T::lit(1e3));
    if (error - out.objective).abs() > agreement * (T::one() + error) {
        return Err(Error::NumericalFailure(format!(
            "recomputed error {error} disagrees with LP optimum {}",
            out.objective
        )));
    }
    Ok(FitResult { coefficients, error, deviations })
}

/// Points of maximal positive (`f − L = +Ψ`) and negative (`f − L = −Ψ`)
/// deviation, as indices into the dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalSets<T> {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub error: T,
    pub tolerance: T,
}

impl<T: Scalar> ExtremalSets<T> {
    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `rel · max(1, Ψ)`, the default absolute tolerance for extremal detection.
pub fn extremal_tolerance<T: Scalar>(error: T, relative: T) -> T {
    relative * error.max(T::one())
}

pub const DEFAULT_EXTREMAL_REL: f64 = 1e-7;

pub fn extract_extremal_sets<T: Scalar>(
    basis: &BasisSpec<T>,
    coefficients: &Coefficients<T>,
    data: &Dataset<T>,
    tolerance: T,
) -> Result<ExtremalSets<T>> {
    if !(tolerance > T::zero()) {
        return Err(Error::Precondition("extremal tolerance must be positive".into()));
    }
    let dev = deviations(basis, coefficients, data)?;
    let error = dev.iter().fold(T::zero(), |m, d| m.max(d.abs()));
    if error <= tolerance {
        return Err(Error::ErrorBelowTolerance {
            error: error.to_f64().unwrap_or(f64::NAN),
            tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for (k, &d) in dev.iter().enumerate() {
        if d >= error - tolerance {
            positive.push(k);
        } else if d <= -error + tolerance {
            negative.push(k);
        }
    }
    Ok(ExtremalSets { positive, negative, error, tolerance })
}
