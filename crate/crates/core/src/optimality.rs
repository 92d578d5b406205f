//! Optimality of a minimax fit as a convex-hull intersection problem.
//!
//! Coefficients `A` are optimal exactly when the convex hulls of the lifted
//! points `(1, g₁(x), …, g_n(x))` over the positive and negative extremal
//! sets intersect. Equivalently zero lies in the subdifferential of `Ψ` at
//! `A`, or the two extremal sets cannot be split by the zero set of any
//! model function.
//!
//! An intersection is reported as an [`OptimalityCertificate`]: convex
//! weights on both sides whose lifted averages coincide, trimmed to at most
//! `n + 2` points. A failure is reported as a [`SeparationWitness`]: an
//! affine function of the lifted tail that is positive on `E⁺` and negative
//! on `E⁻`. Adding a multiple of that function to the model lowers `Ψ`.

use crate::approx::{extract_extremal_sets, uniform_error, Coefficients, Dataset, ExtremalSets};
use crate::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::linalg::null_space;
use crate::lp::{self, LpOptions, LpProblem, LpStatus, Relation};
use crate::scalar::{dot, max_abs, Scalar};

/// Residual allowed on a matched hull point.
pub const CERTIFICATE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct SupportPoint<T> {
    /// Index into whatever point list the certificate was built from.
    pub index: usize,
    pub weight: T,
    pub lift: Vec<T>,
}

/// Convex weights `α` on `E⁺` and `β` on `E⁻` with
/// `Σ αᵢ lift(xᵢ⁺) = Σ βⱼ lift(xⱼ⁻)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalityCertificate<T> {
    pub positive: Vec<SupportPoint<T>>,
    pub negative: Vec<SupportPoint<T>>,
    /// Max-norm mismatch of the two weighted sums.
    pub residual: T,
}

fn weighted_sum<T: Scalar>(side: &[SupportPoint<T>], dim: usize) -> Vec<T> {
    let mut acc = vec![T::zero(); dim];
    for s in side {
        for (a, &v) in acc.iter_mut().zip(&s.lift) {
            *a += s.weight * v;
        }
    }
    acc
}

impl<T: Scalar> OptimalityCertificate<T> {
    pub fn lifted_dimension(&self) -> usize {
        self.positive
            .first()
            .or(self.negative.first())
            .map_or(0, |s| s.lift.len())
    }

    pub fn support_size(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    /// The common point `Σ αᵢ lift(xᵢ⁺)` of the two hulls.
    pub fn matched_point(&self) -> Vec<T> {
        weighted_sum(&self.positive, self.lifted_dimension())
    }

    pub fn mismatch(&self) -> T {
        let dim = self.lifted_dimension();
        let p = weighted_sum(&self.positive, dim);
        let n = weighted_sum(&self.negative, dim);
        p.iter().zip(&n).fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    /// Re-checks every invariant from scratch.
    pub fn validate(&self, tol: T) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidCertificate(m));
        if self.positive.is_empty() || self.negative.is_empty() {
            return fail("each side needs a positive weight".into());
        }
        let dim = self.lifted_dimension();
        for s in self.positive.iter().chain(&self.negative) {
            if s.lift.len() != dim {
                return fail("lifted points differ in length".into());
            }
            if !(s.weight >= T::zero()) {
                return fail(format!("negative weight on point {}", s.index));
            }
        }
        for (name, side) in [("positive", &self.positive), ("negative", &self.negative)] {
            let total: T = side.iter().map(|s| s.weight).sum();
            if (total - T::one()).abs() > tol {
                return fail(format!("{name} weights sum to {total}"));
            }
        }
        let r = self.mismatch();
        if r > tol {
            return fail(format!("hull points differ by {r}"));
        }
        if self.support_size() > dim + 1 {
            return fail(format!("support {} exceeds {}", self.support_size(), dim + 1));
        }
        Ok(())
    }
}

/// Affine separator `x ↦ ⟨u, tail(x)⟩ − offset` of two lifted point sets,
/// at least `margin` on `E⁺` and at most `−margin` on `E⁻`. `tail(x)` is
/// the lift without its leading 1. The normal is scaled to `‖u‖∞ ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationWitness<T> {
    pub normal: Vec<T>,
    pub offset: T,
    pub margin: T,
}

impl<T: Scalar> SeparationWitness<T> {
    pub fn value(&self, lift: &[T]) -> T {
        dot(&self.normal, &lift[1..]) - self.offset
    }

    /// The isolating function as model coefficients `(−offset, u)`.
    pub fn as_coefficients(&self) -> Vec<T> {
        std::iter::once(-self.offset).chain(self.normal.iter().copied()).collect()
    }

    /// Smallest signed margin over both sides; positive iff it separates.
    pub fn achieved_margin(&self, plus: &[Vec<T>], minus: &[Vec<T>]) -> T {
        let p = plus.iter().map(|l| self.value(l));
        let n = minus.iter().map(|l| -self.value(l));
        p.chain(n).fold(T::infinity(), T::min)
    }

    fn normalized(mut self, plus: &[Vec<T>], minus: &[Vec<T>]) -> Self {
        let scale = max_abs(&self.normal);
        if scale > T::zero() {
            self.normal.iter_mut().for_each(|v| *v /= scale);
            self.offset /= scale;
        }
        self.margin = self.achieved_margin(plus, minus);
        self
    }

    /// Constant separator used when one extremal side is empty.
    fn constant(size: usize, positive_side: bool) -> Self {
        let sign = if positive_side { -T::one() } else { T::one() };
        Self { normal: vec![T::zero(); size.saturating_sub(1)], offset: sign, margin: T::one() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<T> {
    Optimal(OptimalityCertificate<T>),
    NotOptimal(SeparationWitness<T>),
}

impl<T> Verdict<T> {
    pub fn is_optimal(&self) -> bool {
        matches!(self, Verdict::Optimal(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Isolability<T> {
    Isolable(SeparationWitness<T>),
    NotIsolable,
}

impl<T> Isolability<T> {
    pub fn is_isolable(&self) -> bool {
        matches!(self, Isolability::Isolable(_))
    }
}

fn check_lifts<T: Scalar>(plus: &[Vec<T>], minus: &[Vec<T>]) -> Result<usize> {
    let dim = plus.first().or(minus.first()).map(Vec::len).ok_or_else(|| {
        Error::Precondition("both extremal sets are empty".into())
    })?;
    for l in plus.iter().chain(minus) {
        if l.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: l.len() });
        }
        if l[0] != T::one() {
            return Err(Error::Precondition("lifted points must start with 1".into()));
        }
    }
    Ok(dim)
}

/// Decides whether `co(plus) ∩ co(minus)` is non-empty for lifted points.
/// Certificate indices refer to positions in `plus` and `minus`.
pub fn hull_intersection<T: Scalar>(
    plus: &[Vec<T>],
    minus: &[Vec<T>],
    opts: &LpOptions<T>,
) -> Result<Verdict<T>> {
    let dim = check_lifts(plus, minus)?;
    if minus.is_empty() {
        return Ok(Verdict::NotOptimal(SeparationWitness::constant(dim, true)));
    }
    if plus.is_empty() {
        return Ok(Verdict::NotOptimal(SeparationWitness::constant(dim, false)));
    }
    let (p, q) = (plus.len(), minus.len());
    let mut problem = LpProblem::feasibility(p + q);
    for k in 0..dim {
        let row = plus.iter().map(|l| l[k]).chain(minus.iter().map(|l| -l[k])).collect();
        problem.add_row(row, Relation::Eq, T::zero());
    }
    let ones = |first: bool| {
        (0..p + q)
            .map(|i| if (i < p) == first { T::one() } else { T::zero() })
            .collect::<Vec<_>>()
    };
    problem.add_row(ones(true), Relation::Eq, T::one());
    problem.add_row(ones(false), Relation::Eq, T::one());

    let out = lp::feasibility_with(&problem, opts)?;
    match out.status {
        LpStatus::Optimal => {
            let side = |range: std::ops::Range<usize>, lifts: &[Vec<T>], offset: usize| {
                let mut v: Vec<SupportPoint<T>> = range
                    .filter(|&i| out.primal[i] > T::zero())
                    .map(|i| SupportPoint {
                        index: i - offset,
                        weight: out.primal[i],
                        lift: lifts[i - offset].clone(),
                    })
                    .collect();
                let total: T = v.iter().map(|s| s.weight).sum();
                v.iter_mut().for_each(|s| s.weight /= total);
                v
            };
            let mut cert = OptimalityCertificate {
                positive: side(0..p, plus, 0),
                negative: side(p..p + q, minus, p),
                residual: T::zero(),
            };
            cert.residual = cert.mismatch();
            caratheodory_reduce(&cert).map(Verdict::Optimal)
        }
        LpStatus::Infeasible => {
            let y = &out.dual;
            let (w, pm, qm) = (&y[..dim], y[dim], y[dim + 1]);
            // w·lift ≥ −pm on E⁺, ≤ qm on E⁻, and −pm > qm.
            let threshold = (qm - pm) / T::lit(2.0);
            let witness = SeparationWitness {
                normal: w[1..].to_vec(),
                offset: threshold - w[0],
                margin: T::zero(),
            }
            .normalized(plus, minus);
            if witness.margin > T::zero() {
                Ok(Verdict::NotOptimal(witness))
            } else {
                match max_margin_separator(plus, minus, opts)? {
                    Isolability::Isolable(w) => Ok(Verdict::NotOptimal(w)),
                    Isolability::NotIsolable => Err(Error::NumericalFailure(
                        "hull system infeasible but no separating hyperplane found".into(),
                    )),
                }
            }
        }
        LpStatus::Unbounded => Err(Error::NumericalFailure("feasibility LP unbounded".into())),
    }
}

/// Maximizes the separation margin over `‖u‖∞ ≤ 1`.
fn max_margin_separator<T: Scalar>(
    plus: &[Vec<T>],
    minus: &[Vec<T>],
    opts: &LpOptions<T>,
) -> Result<Isolability<T>> {
    let dim = check_lifts(plus, minus)?;
    let n = dim - 1;
    let (offset, margin) = (n, n + 1);
    let mut objective = vec![T::zero(); n + 2];
    objective[margin] = -T::one();
    let mut problem = LpProblem::minimize(objective);
    for j in 0..n {
        problem.set_bounds(j, Some(-T::one()), Some(T::one()));
    }
    problem.set_free(offset).set_free(margin);
    for l in plus {
        let mut row = l[1..].to_vec();
        row.push(-T::one());
        row.push(-T::one());
        problem.add_row(row, Relation::Ge, T::zero());
    }
    for l in minus {
        let mut row = l[1..].to_vec();
        row.push(-T::one());
        row.push(T::one());
        problem.add_row(row, Relation::Le, T::zero());
    }
    let out = lp::solve_with(&problem, opts)?;
    if out.status != LpStatus::Optimal {
        return Err(Error::NumericalFailure(format!("margin LP ended {:?}", out.status)));
    }
    if out.primal[margin] <= opts.feasibility_tol {
        return Ok(Isolability::NotIsolable);
    }
    let witness = SeparationWitness {
        normal: out.primal[..n].to_vec(),
        offset: out.primal[offset],
        margin: T::zero(),
    };
    let margin = witness.achieved_margin(plus, minus);
    Ok(Isolability::Isolable(SeparationWitness { margin, ..witness }))
}

/// Whether the lifted positive and negative point sets can be strictly
/// separated by the zero set of a model function.
pub fn check_isolability<T: Scalar>(
    plus: &[Vec<T>],
    minus: &[Vec<T>],
    basis: &BasisSpec<T>,
) -> Result<Isolability<T>> {
    check_isolability_with(plus, minus, basis, &LpOptions::default())
}

pub fn check_isolability_with<T: Scalar>(
    plus: &[Vec<T>],
    minus: &[Vec<T>],
    basis: &BasisSpec<T>,
    opts: &LpOptions<T>,
) -> Result<Isolability<T>> {
    match (plus.is_empty(), minus.is_empty()) {
        (true, true) => {
            return Err(Error::Precondition("both point sets are empty".into()));
        }
        (false, true) | (true, false) => {
            let positive_side = !plus.is_empty();
            return Ok(Isolability::Isolable(SeparationWitness::constant(basis.size(), positive_side)));
        }
        (false, false) => {}
    }
    max_margin_separator(&basis.lift_all(plus)?, &basis.lift_all(minus)?, opts)
}

fn extremal_lifts<T: Scalar>(
    basis: &BasisSpec<T>,
    data: &Dataset<T>,
    ext: &ExtremalSets<T>,
) -> Result<(Vec<Vec<T>>, Vec<Vec<T>>)> {
    let lift = |idx: &[usize]| -> Result<Vec<Vec<T>>> {
        idx.iter().map(|&k| basis.lift(data.point(k))).collect()
    };
    Ok((lift(&ext.positive)?, lift(&ext.negative)?))
}

/// Tests optimality of `coefficients` on `data`. Certificate indices refer
/// to dataset rows.
pub fn verify_optimality<T: Scalar>(
    basis: &BasisSpec<T>,
    coefficients: &Coefficients<T>,
    data: &Dataset<T>,
    tolerance: T,
) -> Result<Verdict<T>> {
    verify_optimality_with(basis, coefficients, data, tolerance, &LpOptions::default())
}

pub fn verify_optimality_with<T: Scalar>(
    basis: &BasisSpec<T>,
    coefficients: &Coefficients<T>,
    data: &Dataset<T>,
    tolerance: T,
    opts: &LpOptions<T>,
) -> Result<Verdict<T>> {
    let ext = extract_extremal_sets(basis, coefficients, data, tolerance)?;
    verify_extremal_sets(basis, data, &ext, opts)
}

/// Optimality test on already extracted extremal sets.
pub fn verify_extremal_sets<T: Scalar>(
    basis: &BasisSpec<T>,
    data: &Dataset<T>,
    ext: &ExtremalSets<T>,
    opts: &LpOptions<T>,
) -> Result<Verdict<T>> {
    let (plus, minus) = extremal_lifts(basis, data, ext)?;
    Ok(match hull_intersection(&plus, &minus, opts)? {
        Verdict::Optimal(mut cert) => {
            cert.positive.iter_mut().for_each(|s| s.index = ext.positive[s.index]);
            cert.negative.iter_mut().for_each(|s| s.index = ext.negative[s.index]);
            Verdict::Optimal(cert)
        }
        other => other,
    })
}

/// Optimality test for explicitly given signed point sets.
pub fn verify_signed_sets<T: Scalar>(
    basis: &BasisSpec<T>,
    plus: &[Vec<T>],
    minus: &[Vec<T>],
) -> Result<Verdict<T>> {
    hull_intersection(&basis.lift_all(plus)?, &basis.lift_all(minus)?, &LpOptions::default())
}

/// Direct test of `0 ∈ co{−lift(x) : x ∈ E⁺} ∪ {lift(x) : x ∈ E⁻}`, the
/// subdifferential of `Ψ` at `coefficients`.
pub fn zero_in_subdifferential<T: Scalar>(
    basis: &BasisSpec<T>,
    coefficients: &Coefficients<T>,
    data: &Dataset<T>,
    tolerance: T,
) -> Result<bool> {
    let ext = extract_extremal_sets(basis, coefficients, data, tolerance)?;
    let (plus, minus) = extremal_lifts(basis, data, &ext)?;
    let gradients: Vec<Vec<T>> = plus
        .iter()
        .map(|l| l.iter().map(|&v| -v).collect())
        .chain(minus)
        .collect();
    let dim = basis.size();
    let mut problem = LpProblem::feasibility(gradients.len());
    for k in 0..dim {
        problem.add_row(gradients.iter().map(|g| g[k]).collect(), Relation::Eq, T::zero());
    }
    problem.add_row(vec![T::one(); gradients.len()], Relation::Eq, T::one());
    Ok(lp::feasibility(&problem)?.is_optimal())
}

/// Trims a certificate to at most `n + 2` support points without moving the
/// matched hull point.
///
/// Signed lifts `s = +lift(x⁺)`, `−lift(x⁻)` satisfy `Σ w s = 0` with
/// `Σ w = 2`. While the support exceeds `n + 2`, an affine dependence
/// `Σ μ s = 0, Σ μ = 0` exists; stepping along `−μ` until a weight hits zero
/// keeps both identities and drops a point. The leading coordinate keeps
/// `Σ α = Σ β`, so both sides still sum to one.
pub fn caratheodory_reduce<T: Scalar>(
    cert: &OptimalityCertificate<T>,
) -> Result<OptimalityCertificate<T>> {
    let tol = T::lit(CERTIFICATE_TOL);
    let dim = cert.lifted_dimension();
    let mut merged = cert.clone();
    for side in [&mut merged.positive, &mut merged.negative] {
        side.sort_by_key(|s| s.index);
        side.dedup_by(|b, a| {
            if a.index == b.index {
                a.weight += b.weight;
                true
            } else {
                false
            }
        });
    }
    {
        let loose = OptimalityCertificate { residual: merged.mismatch(), ..merged.clone() };
        if loose.positive.is_empty() || loose.negative.is_empty() {
            return Err(Error::InvalidCertificate("a side has no support".into()));
        }
        for s in loose.positive.iter().chain(&loose.negative) {
            if s.lift.len() != dim || !(s.weight >= T::zero()) {
                return Err(Error::InvalidCertificate(format!("bad support point {}", s.index)));
            }
        }
        for side in [&loose.positive, &loose.negative] {
            let total: T = side.iter().map(|s| s.weight).sum();
            if (total - T::one()).abs() > tol {
                return Err(Error::InvalidCertificate(format!("weights sum to {total}")));
            }
        }
        if loose.residual > tol {
            return Err(Error::InvalidCertificate(format!("hull points differ by {}", loose.residual)));
        }
    }
    let before = merged.matched_point();

    let p_len = merged.positive.len();
    let mut weights: Vec<T> = merged.positive.iter().chain(&merged.negative).map(|s| s.weight).collect();
    let signed: Vec<Vec<T>> = merged
        .positive
        .iter()
        .map(|s| s.lift.clone())
        .chain(merged.negative.iter().map(|s| s.lift.iter().map(|&v| -v).collect()))
        .collect();
    let mut alive: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > T::zero()).collect();

    while alive.len() > dim + 1 {
        let mut rows: Vec<Vec<T>> = (0..dim)
            .map(|k| alive.iter().map(|&i| signed[i][k]).collect())
            .collect();
        rows.push(vec![T::one(); alive.len()]);
        let scale = rows.iter().map(|r| max_abs(r)).fold(T::one(), T::max);
        let mut mu = null_space(&rows, alive.len(), T::pivot_tol() * scale)
            .into_iter()
            .next()
            .ok_or_else(|| Error::NumericalFailure("no affine dependence found".into()))?;
        if !mu.iter().any(|&m| m > T::zero()) {
            mu.iter_mut().for_each(|m| *m = -*m);
        }
        let (drop, theta) = mu
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > T::zero())
            .map(|(k, &m)| (k, weights[alive[k]] / m))
            .fold((usize::MAX, T::infinity()), |b, c| if c.1 < b.1 { c } else { b });
        if drop == usize::MAX {
            return Err(Error::NumericalFailure("degenerate dependence vector".into()));
        }
        for (k, &i) in alive.iter().enumerate() {
            weights[i] = (weights[i] - theta * mu[k]).max(T::zero());
        }
        weights[alive[drop]] = T::zero();
        alive.retain(|&i| weights[i] > T::zero());
    }

    let rebuild = |range: std::ops::Range<usize>, src: &[SupportPoint<T>], offset: usize| {
        let mut side: Vec<SupportPoint<T>> = range
            .filter(|&i| weights[i] > T::zero())
            .map(|i| SupportPoint { weight: weights[i], ..src[i - offset].clone() })
            .collect();
        let total: T = side.iter().map(|s| s.weight).sum();
        side.iter_mut().for_each(|s| s.weight /= total);
        side
    };
    let mut out = OptimalityCertificate {
        positive: rebuild(0..p_len, &merged.positive, 0),
        negative: rebuild(p_len..weights.len(), &merged.negative, p_len),
        residual: T::zero(),
    };
    out.residual = out.mismatch();
    let after = out.matched_point();
    let moved = before.iter().zip(&after).fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()));
    if out.positive.is_empty() || out.negative.is_empty() || moved > tol || out.residual > tol {
        return Err(Error::NumericalFailure(format!(
            "reduction moved the matched point by {moved} (residual {})",
            out.residual
        )));
    }
    Ok(out)
}

/// A direction that strictly lowers `Ψ`, with the step that confirmed it.
#[derive(Debug, Clone, PartialEq)]
pub struct Descent<T> {
    pub direction: Vec<T>,
    pub step: T,
    pub error_before: T,
    pub error_after: T,
}

pub const DESCENT_HALVINGS: usize = 20;

/// Turns a separation witness into a descent direction for `Ψ`.
///
/// The isolating function `h(x) = ⟨u, tail(x)⟩ − offset` is positive where
/// the model is too low and negative where it is too high, so moving the
/// coefficients along `(−offset, u)` shrinks every active deviation. The
/// step starts at `1e-3 · Ψ / ‖h‖` and is halved until `Ψ` drops.
pub fn descent_direction<T: Scalar>(
    basis: &BasisSpec<T>,
    coefficients: &Coefficients<T>,
    data: &Dataset<T>,
    witness: &SeparationWitness<T>,
) -> Result<Descent<T>> {
    if witness.normal.len() + 1 != basis.size() {
        return Err(Error::DimensionMismatch {
            expected: basis.size() - 1,
            found: witness.normal.len(),
        });
    }
    let direction = witness.as_coefficients();
    let norm = direction.iter().map(|&v| v * v).sum::<T>().sqrt();
    let error_before = uniform_error(basis, coefficients, data)?;
    if error_before == T::zero() || norm == T::zero() {
        return Err(Error::Precondition("coefficients already interpolate the data".into()));
    }
    let required = T::lit(1e-12);
    let mut step = T::lit(1e-3) * error_before / norm;
    for _ in 0..=DESCENT_HALVINGS {
        let error_after = uniform_error(basis, &coefficients.stepped(&direction, step), data)?;
        if error_after < error_before - required {
            return Ok(Descent { direction, step, error_before, error_after });
        }
        step /= T::lit(2.0);
    }
    Err(Error::WitnessInconsistent { halvings: DESCENT_HALVINGS })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uneven() -> Dataset<f64> {
        Dataset::new(
            vec![vec![1.0, 1.0], vec![-1.0, 1.0], vec![0.0, -1.0], vec![0.0, 0.0]],
            vec![0.0, 0.0, 0.0, 2.0],
        )
        .unwrap()
    }

    fn linear() -> BasisSpec<f64> {
        BasisSpec::monomial(2, 1).unwrap()
    }

    fn weight_of(side: &[SupportPoint<f64>], index: usize) -> f64 {
        side.iter().find(|s| s.index == index).map_or(0.0, |s| s.weight)
    }

    #[test]
    fn uneven_example_is_optimal_with_barycentric_weights() {
        let v = verify_optimality(&linear(), &Coefficients(vec![1.0, 0.0, 0.0]), &uneven(), 1e-9)
            .unwrap();
        let Verdict::Optimal(cert) = v else { panic!("expected optimal") };
        cert.validate(1e-7).unwrap();
        assert_eq!(cert.support_size(), 4);
        assert!((weight_of(&cert.positive, 3) - 1.0).abs() < 1e-9);
        // (0,0) = ¼(1,1) + ¼(−1,1) + ½(0,−1)
        assert!((weight_of(&cert.negative, 0) - 0.25).abs() < 1e-9);
        assert!((weight_of(&cert.negative, 1) - 0.25).abs() < 1e-9);
        assert!((weight_of(&cert.negative, 2) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn shifted_constant_is_not_optimal() {
        let c = Coefficients(vec![0.5, 0.0, 0.0]);
        let v = verify_optimality(&linear(), &c, &uneven(), 1e-9).unwrap();
        let Verdict::NotOptimal(w) = v else { panic!("expected witness") };
        assert!(w.margin > 0.0);
        let d = descent_direction(&linear(), &c, &uneven(), &w).unwrap();
        assert!(d.error_after < d.error_before);
        assert!(d.direction[0] > 0.0);
    }

    #[test]
    fn zero_coefficients_descend_by_raising_constant() {
        let c = Coefficients::zeros(3);
        let Verdict::NotOptimal(w) = verify_optimality(&linear(), &c, &uneven(), 1e-9).unwrap() else {
            panic!("expected witness")
        };
        let d = descent_direction(&linear(), &c, &uneven(), &w).unwrap();
        assert!(d.direction[0] > 0.0);
        assert!(d.error_after < 2.0);
    }

    #[test]
    fn isolability_examples() {
        let e_plus = vec![vec![0.0, 0.0]];
        let e_minus = vec![vec![1.0, 1.0], vec![-1.0, 1.0], vec![0.0, -1.0]];
        assert_eq!(check_isolability(&e_plus, &e_minus, &linear()).unwrap(), Isolability::NotIsolable);

        let iso = check_isolability(&[vec![0.0, 0.0]], &[vec![1.0, 0.0]], &linear()).unwrap();
        let Isolability::Isolable(w) = iso else { panic!("two points are isolable") };
        // Normal over (x₂, x₁); x₂ vanishes on both points so only the x₁
        // component is pinned: the separator is x₁ = 1/2.
        assert!((w.normal[1] + 1.0).abs() < 1e-9);
        assert!((w.offset + 0.5).abs() < 1e-9);
        assert!((w.margin - 0.5).abs() < 1e-9);
        let Isolability::Isolable(c) = check_isolability(&[], &e_minus, &linear()).unwrap() else {
            panic!("a constant isolates a one-sided set")
        };
        assert_eq!((c.offset, c.margin), (1.0, 1.0));
        assert!(check_isolability(&[], &[], &linear()).is_err());
    }

    #[test]
    fn subdifferential_route_agrees() {
        let d = uneven();
        assert!(zero_in_subdifferential(&linear(), &Coefficients(vec![1.0, 0.0, 0.0]), &d, 1e-9).unwrap());
        assert!(!zero_in_subdifferential(&linear(), &Coefficients(vec![0.5, 0.0, 0.0]), &d, 1e-9).unwrap());
    }

    fn support(index: usize, weight: f64, lift: &[f64]) -> SupportPoint<f64> {
        SupportPoint { index, weight, lift: lift.to_vec() }
    }

    #[test]
    fn reduction_keeps_small_certificates() {
        let cert = OptimalityCertificate {
            positive: vec![support(0, 1.0, &[1.0, 0.5])],
            negative: vec![support(1, 1.0, &[1.0, 0.5])],
            residual: 0.0,
        };
        assert_eq!(caratheodory_reduce(&cert).unwrap(), cert);
    }

    #[test]
    fn reduction_merges_duplicated_points() {
        let cert = OptimalityCertificate {
            positive: vec![support(0, 0.4, &[1.0, 0.5]), support(0, 0.6, &[1.0, 0.5])],
            negative: vec![support(1, 1.0, &[1.0, 0.5])],
            residual: 0.0,
        };
        let r = caratheodory_reduce(&cert).unwrap();
        assert_eq!(r.positive.len(), 1);
        assert!((r.positive[0].weight - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reduction_rejects_invalid_input() {
        let cert = OptimalityCertificate {
            positive: vec![support(0, 1.0, &[1.0, 0.0])],
            negative: vec![support(1, 1.0, &[1.0, 1.0])],
            residual: 1.0,
        };
        assert!(matches!(caratheodory_reduce(&cert), Err(Error::InvalidCertificate(_))));
    }

    #[test]
    fn one_sided_extremal_set_gets_constant_witness() {
        let c = Coefficients(vec![0.9, 0.0, 0.0]);
        let Verdict::NotOptimal(w) = verify_optimality(&linear(), &c, &uneven(), 1e-9).unwrap() else {
            panic!("expected witness")
        };
        assert_eq!(w.normal, vec![0.0, 0.0]);
        assert_eq!(w.as_coefficients()[0], 1.0);
    }
}
