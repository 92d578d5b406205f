//! Discrete minimax (Chebyshev) approximation with verifiable optimality.
//!
//! Given samples `(x_k, f_k)` and a finite basis `φ_0 = 1, φ_1, …, φ_n`,
//! [`fit_minimax`] finds coefficients minimizing `max_k |f_k − L(A, x_k)|`
//! by linear programming. [`verify_optimality`] then decides whether a given
//! coefficient vector is a minimizer: it is exactly when the convex hulls of
//! the lifted positive and negative extremal points intersect. An optimal
//! outcome carries a sparse convex-combination certificate; a non-optimal one
//! carries a separating hyperplane that doubles as a descent direction.
//!
//! The [`reduction`] module adds cheaper necessary conditions for polynomial
//! bases: degree reduction by coordinate shifts and hyperplane sign-flip cuts.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix the common choices.
//!
//! ```
//! use chebcert::{fit_minimax, verify_optimality, BasisSpec, Dataset, Verdict};
//!
//! let data: Dataset<f64> = Dataset::new(
//!     vec![vec![1.0, 1.0], vec![-1.0, 1.0], vec![0.0, -1.0], vec![0.0, 0.0]],
//!     vec![0.0, 0.0, 0.0, 2.0],
//! )
//! .unwrap();
//! let basis = BasisSpec::monomial(2, 1).unwrap();
//! let fit = fit_minimax(&basis, &data).unwrap();
//! assert!((fit.error - 1.0).abs() < 1e-9);
//! let verdict = verify_optimality(&basis, &fit.coefficients, &data, 1e-7).unwrap();
//! assert!(matches!(verdict, Verdict::Optimal(_)));
//! ```

pub mod approx;
pub mod basis;
pub mod error;
mod linalg;
pub mod lp;
pub mod optimality;
pub mod reduction;
mod scalar;

pub use approx::{
    deviations, evaluate_model, extract_extremal_sets, extremal_tolerance, fit_minimax,
    fit_minimax_with, uniform_error, Coefficients, Dataset, ExtremalSets, FitResult,
    DEFAULT_EXTREMAL_REL,
};
pub use basis::{
    enumerate_monomials, shift_coordinates, verify_shift_lemma, BasisFn, BasisSpec, CustomBasis,
    ExponentVector, MonomialBasis, ShiftIdentity,
};
pub use error::{Error, Result};
pub use lp::{LpOptions, LpOutcome, LpProblem, LpStatus, Relation};
pub use optimality::{
    caratheodory_reduce, check_isolability, check_isolability_with, descent_direction,
    hull_intersection, verify_extremal_sets, verify_optimality, verify_optimality_with,
    verify_signed_sets, zero_in_subdifferential, Descent, Isolability, OptimalityCertificate,
    SeparationWitness, SupportPoint, Verdict, CERTIFICATE_TOL, DESCENT_HALVINGS,
};
pub use reduction::{
    cut_condition_check, cut_condition_check_with, reduce_step, verify_necessary_condition,
    verify_necessary_condition_with, CutAnalysis, CutCheck, DeltaKind, LeafOutcome,
    ReductionNode, ReductionOptions, ReductionStep, ReductionTrace, ReductionVerdict, Sign,
    SignedPointSet, SkippedCut,
};
pub use scalar::Scalar;

pub type Dataset64 = Dataset<f64>;
pub type Dataset32 = Dataset<f32>;
pub type Basis64 = BasisSpec<f64>;
pub type Basis32 = BasisSpec<f32>;
pub type Coefficients64 = Coefficients<f64>;
pub type Coefficients32 = Coefficients<f32>;
pub type LpProblem64 = LpProblem<f64>;
pub type LpProblem32 = LpProblem<f32>;
pub type Verdict64 = Verdict<f64>;
pub type SignedPointSet64 = SignedPointSet<f64>;
