//! Basis functions: monomials in graded-lex order and user-supplied families.
//!
//! Every basis is used through its *lift*, the vector
//! `(1, g₁(x), …, g_n(x))` whose dot product with a coefficient vector is
//! the model value. The constant function always sits at index 0.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::fmt;
use std::sync::Arc;

/// Exponents of a monomial `x₁^e₁ ⋯ x_d^e_d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn constant(dimension: usize) -> Self {
        Self(vec![0; dimension])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The exponent vector with component `k` raised by one.
    pub fn incremented(&self, k: usize) -> Self {
        let mut e = self.0.clone();
        e[k] += 1;
        Self(e)
    }

    /// The exponent vector with component `k` lowered by one, if positive.
    pub fn decremented(&self, k: usize) -> Option<Self> {
        let mut e = self.0.clone();
        e[k] = e[k].checked_sub(1)?;
        Some(Self(e))
    }

    pub fn evaluate<T: Scalar>(&self, point: &[T]) -> T {
        self.0
            .iter()
            .zip(point)
            .fold(T::one(), |acc, (&e, &x)| acc * x.powi(e as i32))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of total degree `0..=degree` in `dimension` variables.
///
/// Ordered by total degree, then lexicographically ascending on the
/// exponent vector, so for two variables and degree two the order is
/// `1, x₂, x₁, x₂², x₁x₂, x₁²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    dimension: usize,
    degree: u32,
    monomials: Vec<ExponentVector>,
}

pub fn enumerate_monomials(dimension: usize, degree: u32) -> Result<MonomialBasis> {
    if dimension == 0 {
        return Err(Error::Precondition("monomial basis needs dimension ≥ 1".into()));
    }
    let mut monomials = Vec::new();
    let mut scratch = vec![0u32; dimension];
    for total in 0..=degree {
        compositions(total, 0, &mut scratch, &mut monomials);
    }
    Ok(MonomialBasis { dimension, degree, monomials })
}

// Exponent vectors with the given total, lexicographically ascending.
fn compositions(remaining: u32, pos: usize, scratch: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
    if pos + 1 == scratch.len() {
        scratch[pos] = remaining;
        out.push(ExponentVector(scratch.clone()));
        return;
    }
    for e in 0..=remaining {
        scratch[pos] = e;
        compositions(remaining - e, pos + 1, scratch, out);
    }
}

impl MonomialBasis {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    /// Number of basis functions including the constant (`n + 1`).
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, e: &ExponentVector) -> Option<usize> {
        self.monomials.iter().position(|m| m == e)
    }

    pub fn lift<T: Scalar>(&self, point: &[T]) -> Result<Vec<T>> {
        if point.len() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, found: point.len() });
        }
        // powers[i][k] = x_i^k
        let powers: Vec<Vec<T>> = point
            .iter()
            .map(|&x| {
                let mut p = Vec::with_capacity(self.degree as usize + 1);
                let mut acc = T::one();
                for _ in 0..=self.degree {
                    p.push(acc);
                    acc *= x;
                }
                p
            })
            .collect();
        Ok(self
            .monomials
            .iter()
            .map(|e| {
                e.0.iter()
                    .zip(&powers)
                    .fold(T::one(), |acc, (&k, p)| acc * p[k as usize])
            })
            .collect())
    }
}

pub type BasisFn<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;

/// A named family `g₁ … g_n` of functions on `R^d`. The constant term is
/// implicit.
#[derive(Clone)]
pub struct CustomBasis<T> {
    dimension: usize,
    functions: Vec<(String, BasisFn<T>)>,
}

impl<T> CustomBasis<T> {
    pub fn new(dimension: usize, functions: Vec<(String, BasisFn<T>)>) -> Result<Self> {
        if dimension == 0 || functions.is_empty() {
            return Err(Error::Precondition(
                "custom basis needs dimension ≥ 1 and at least one function".into(),
            ));
        }
        Ok(Self { dimension, functions })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.functions.iter().map(|(n, _)| n.as_str())
    }
}

impl<T> fmt::Debug for CustomBasis<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomBasis")
            .field("dimension", &self.dimension)
            .field("functions", &self.names().collect::<Vec<_>>())
            .finish()
    }
}

/// The basis a model is expanded in.
#[derive(Debug, Clone)]
pub enum BasisSpec<T> {
    Monomial(MonomialBasis),
    Custom(CustomBasis<T>),
}

impl<T: Scalar> BasisSpec<T> {
    pub fn monomial(dimension: usize, degree: u32) -> Result<Self> {
        enumerate_monomials(dimension, degree).map(Self::Monomial)
    }

    pub fn dimension(&self) -> usize {
        match self {
            Self::Monomial(m) => m.dimension,
            Self::Custom(c) => c.dimension,
        }
    }

    /// Length of the lifted vector, `n + 1`.
    pub fn size(&self) -> usize {
        match self {
            Self::Monomial(m) => m.len(),
            Self::Custom(c) => c.functions.len() + 1,
        }
    }

    pub fn names(&self) -> Vec<String> {
        match self {
            Self::Monomial(m) => m.monomials.iter().map(|e| e.to_string()).collect(),
            Self::Custom(c) => std::iter::once("1".to_string())
                .chain(c.names().map(str::to_string))
                .collect(),
        }
    }

    /// `(1, g₁(x), …, g_n(x))`.
    pub fn lift(&self, point: &[T]) -> Result<Vec<T>> {
        match self {
            Self::Monomial(m) => m.lift(point),
            Self::Custom(c) => {
                if point.len() != c.dimension {
                    return Err(Error::DimensionMismatch {
                        expected: c.dimension,
                        found: point.len(),
                    });
                }
                Ok(std::iter::once(T::one())
                    .chain(c.functions.iter().map(|(_, g)| g(point)))
                    .collect())
            }
        }
    }

    pub fn lift_all(&self, points: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
        points.iter().map(|p| self.lift(p)).collect()
    }
}

/// Replaces coordinate `j` of every point by `x_j − delta`.
///
/// # Panics
/// If `j` is out of range for any point.
pub fn shift_coordinates<T: Scalar>(points: &[Vec<T>], j: usize, delta: T) -> Vec<Vec<T>> {
    points
        .iter()
        .map(|p| {
            let mut q = p.clone();
            q[j] -= delta;
            q
        })
        .collect()
}

/// Two weighted families related by the shift identity: with
/// `Σαᵢaᵢxᵢ = Σβᵢbᵢyᵢ` and `Σαᵢaᵢ = Σβᵢbᵢ`, shifting every `x` and `y` by
/// the same `δ` keeps the two weighted sums equal.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftIdentity<T> {
    pub alpha: Vec<T>,
    pub a: Vec<T>,
    pub x: Vec<T>,
    pub beta: Vec<T>,
    pub b: Vec<T>,
    pub y: Vec<T>,
}

const SHIFT_TOL: f64 = 1e-9;

fn close<T: Scalar>(l: T, r: T) -> bool {
    (l - r).abs() <= T::lit(SHIFT_TOL) * (T::one() + l.abs())
}

impl<T: Scalar> ShiftIdentity<T> {
    fn weighted(w: &[T], c: &[T], v: Option<&[T]>, delta: T) -> T {
        match v {
            Some(v) => w.iter().zip(c).zip(v).map(|((&w, &c), &v)| w * c * (v - delta)).sum(),
            None => w.iter().zip(c).map(|(&w, &c)| w * c).sum(),
        }
    }

    pub fn weights_valid(&self) -> bool {
        let ok = |w: &[T]| {
            w.iter().all(|&v| v >= T::zero()) && close(w.iter().copied().sum::<T>(), T::one())
        };
        ok(&self.alpha) && ok(&self.beta)
    }

    pub fn premises_hold(&self) -> bool {
        let z = T::zero();
        close(
            Self::weighted(&self.alpha, &self.a, Some(&self.x), z),
            Self::weighted(&self.beta, &self.b, Some(&self.y), z),
        ) && close(
            Self::weighted(&self.alpha, &self.a, None, z),
            Self::weighted(&self.beta, &self.b, None, z),
        )
    }

    /// `(LHS, RHS)` of the shifted identity.
    pub fn shifted_sides(&self, delta: T) -> (T, T) {
        (
            Self::weighted(&self.alpha, &self.a, Some(&self.x), delta),
            Self::weighted(&self.beta, &self.b, Some(&self.y), delta),
        )
    }

    pub fn conclusion_holds(&self, delta: T) -> bool {
        let (l, r) = self.shifted_sides(delta);
        close(l, r)
    }
}

/// Whether the shifted identity `Σαᵢaᵢ(xᵢ−δ) = Σβᵢbᵢ(yᵢ−δ)` holds within a
/// relative tolerance of `1e-9`. It always does when the two unshifted
/// premises hold.
pub fn verify_shift_lemma<T: Scalar>(
    alpha: &[T],
    a: &[T],
    x: &[T],
    beta: &[T],
    b: &[T],
    y: &[T],
    delta: T,
) -> bool {
    ShiftIdentity {
        alpha: alpha.to_vec(),
        a: a.to_vec(),
        x: x.to_vec(),
        beta: beta.to_vec(),
        b: b.to_vec(),
        y: y.to_vec(),
    }
    .conclusion_holds(delta)
}
