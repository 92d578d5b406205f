//! Scalar abstraction shared by every numerical routine in the crate.

use num_traits::{Float, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// A real floating-point scalar usable by the solvers.
///
/// Besides the arithmetic bounds, each implementation fixes the numerical
/// tolerances the simplex and certificate checks default to, since a
/// residual that is negligible in `f64` is far below `f32` resolution.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Absolute tolerance on constraint residuals.
    fn feasibility_tol() -> Self;
    /// Entries smaller than this are never used as pivots.
    fn pivot_tol() -> Self;
    /// Allowed gap between primal and dual objective values.
    fn duality_tol() -> Self;

    /// Converts an `f64` literal. Panics only if the target cannot represent
    /// finite `f64` values, which never happens for the provided impls.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must be representable")
    }
}

impl Scalar for f64 {
    fn feasibility_tol() -> Self {
        1e-9
    }
    fn pivot_tol() -> Self {
        1e-11
    }
    fn duality_tol() -> Self {
        1e-7
    }
}

impl Scalar for f32 {
    fn feasibility_tol() -> Self {
        1e-4
    }
    fn pivot_tol() -> Self {
        1e-6
    }
    fn duality_tol() -> Self {
        1e-3
    }
}

/// Largest absolute entry, zero for an empty slice.
pub(crate) fn max_abs<T: Scalar>(xs: &[T]) -> T {
    xs.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}
