//! Dense two-phase simplex for small linear programs.
//!
//! Problems are stated in the general form
//!
//! ```text
//! minimize    c·x
//! subject to  a_i·x  (≤ | = | ≥)  b_i      for every row i
//!             l_j ≤ x_j ≤ u_j              (either bound may be absent)
//! ```
//!
//! and are rewritten internally into equality form over non-negative
//! columns. Phase one drives a set of artificial columns to zero; phase two
//! optimizes the real objective. Pivoting uses Dantzig's rule for a bounded
//! number of iterations and then falls back to Bland's rule, which cannot
//! cycle.
//!
//! Every outcome is checked before it is returned: optimal points must be
//! feasible and match their dual bound, infeasibility certificates must
//! produce an actual contradiction. A check that fails is reported as
//! [`Error::NumericalFailure`] instead of an answer.
//!
//! Sign conventions for the row multipliers `y`:
//!
//! * dual prices (optimal outcomes): `y_i ≥ 0` on `≥` rows, `y_i ≤ 0` on `≤`
//!   rows, free on `=` rows, so that `c·x ≥ y·b + min_box((c − Aᵀy)·x)`;
//! * Farkas certificates (infeasible outcomes): `y_i ≤ 0` on `≥` rows,
//!   `y_i ≥ 0` on `≤` rows. Every feasible `x` would satisfy
//!   `(Aᵀy)·x ≤ y·b`, while the certificate guarantees
//!   `min_box((Aᵀy)·x) > y·b`. With `x ≥ 0` this is the familiar
//!   `yᵀA ≥ 0, yᵀb < 0`.

use crate::error::{Error, Result};
use crate::scalar::{dot, max_abs, Scalar};

/// Relation of a constraint row to its right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Eq => Relation::Eq,
            Relation::Ge => Relation::Le,
        }
    }
}

/// A linear program in general form. Variables default to `0 ≤ x_j < ∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem<T> {
    pub objective: Vec<T>,
    pub rows: Vec<Vec<T>>,
    pub relations: Vec<Relation>,
    pub rhs: Vec<T>,
    pub lower: Vec<Option<T>>,
    pub upper: Vec<Option<T>>,
}

impl<T: Scalar> LpProblem<T> {
    /// Minimize `objective·x` over non-negative variables, no rows yet.
    pub fn minimize(objective: Vec<T>) -> Self {
        let n = objective.len();
        Self {
            objective,
            rows: Vec::new(),
            relations: Vec::new(),
            rhs: Vec::new(),
            lower: vec![Some(T::zero()); n],
            upper: vec![None; n],
        }
    }

    /// Pure feasibility problem over `num_vars` non-negative variables.
    pub fn feasibility(num_vars: usize) -> Self {
        Self::minimize(vec![T::zero(); num_vars])
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn add_row(&mut self, row: Vec<T>, relation: Relation, rhs: T) -> &mut Self {
        self.rows.push(row);
        self.relations.push(relation);
        self.rhs.push(rhs);
        self
    }

    pub fn with_row(mut self, row: Vec<T>, relation: Relation, rhs: T) -> Self {
        self.add_row(row, relation, rhs);
        self
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<T>, upper: Option<T>) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.set_bounds(var, None, None)
    }

    /// Checks the shape invariants and that every number is finite.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        let bad = |msg: String| Err(Error::MalformedProblem(msg));
        if self.relations.len() != self.rows.len() || self.rhs.len() != self.rows.len() {
            return bad(format!(
                "{} rows, {} relations, {} right-hand sides",
                self.rows.len(),
                self.relations.len(),
                self.rhs.len()
            ));
        }
        if self.lower.len() != n || self.upper.len() != n {
            return bad(format!("{} variables but {} bound pairs", n, self.lower.len()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {i} has {} entries, expected {n}", row.len()));
            }
            if row.iter().any(|v| !v.is_finite()) || !self.rhs[i].is_finite() {
                return bad(format!("row {i} contains a non-finite value"));
            }
        }
        if self.objective.iter().any(|v| !v.is_finite()) {
            return bad("objective contains a non-finite value".into());
        }
        for j in 0..n {
            if let (Some(l), Some(u)) = (self.lower[j], self.upper[j]) {
                if !(l <= u) {
                    return bad(format!("variable {j} has lower bound above upper bound"));
                }
            }
            if self.lower[j].is_some_and(|l| !l.is_finite())
                || self.upper[j].is_some_and(|u| !u.is_finite())
            {
                return bad(format!("variable {j} has a non-finite bound"));
            }
        }
        Ok(())
    }

    /// Largest violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[T]) -> T {
        let mut worst = T::zero();
        for ((row, rel), &b) in self.rows.iter().zip(&self.relations).zip(&self.rhs) {
            let lhs = dot(row, x);
            let v = match rel {
                Relation::Le => lhs - b,
                Relation::Ge => b - lhs,
                Relation::Eq => (lhs - b).abs(),
            };
            worst = worst.max(v);
        }
        for (j, &xj) in x.iter().enumerate() {
            if let Some(l) = self.lower[j] {
                worst = worst.max(l - xj);
            }
            if let Some(u) = self.upper[j] {
                worst = worst.max(xj - u);
            }
        }
        worst
    }

    fn transpose_times(&self, y: &[T]) -> Vec<T> {
        let mut r = vec![T::zero(); self.num_vars()];
        for (row, &yi) in self.rows.iter().zip(y) {
            for (rj, &a) in r.iter_mut().zip(row) {
                *rj += yi * a;
            }
        }
        r
    }

    /// `min over the variable box of coeffs·x`, or `None` when unbounded
    /// below. Coefficients within `tol` of zero are treated as zero.
    fn box_minimum(&self, coeffs: &[T], tol: T) -> Option<T> {
        let mut total = T::zero();
        for (j, &c) in coeffs.iter().enumerate() {
            if c.abs() <= tol {
                continue;
            }
            let bound = if c > T::zero() { self.lower[j] } else { self.upper[j] };
            total += c * bound?;
        }
        Some(total)
    }

    fn multiplier_signs_ok(&self, y: &[T], farkas: bool, tol: T) -> bool {
        self.relations.iter().zip(y).all(|(rel, &yi)| {
            let ge_sign_nonneg = !farkas;
            match rel {
                Relation::Eq => true,
                Relation::Ge if ge_sign_nonneg => yi >= -tol,
                Relation::Ge => yi <= tol,
                Relation::Le if ge_sign_nonneg => yi <= tol,
                Relation::Le => yi >= -tol,
            }
        })
    }

    /// Lagrangian dual bound `y·b + min_box((c − Aᵀy)·x)` for dual prices `y`.
    /// `None` when the multipliers have the wrong signs or the bound is −∞.
    pub fn dual_objective(&self, y: &[T]) -> Option<T> {
        if y.len() != self.num_rows() {
            return None;
        }
        let tol = T::feasibility_tol() * (T::one() + max_abs(y));
        if !self.multiplier_signs_ok(y, false, tol) {
            return None;
        }
        let aty = self.transpose_times(y);
        let reduced: Vec<T> = self.objective.iter().zip(&aty).map(|(&c, &a)| c - a).collect();
        Some(dot(y, &self.rhs) + self.box_minimum(&reduced, tol)?)
    }

    /// Margin `min_box((Aᵀy)·x) − y·b` of a Farkas certificate. A positive
    /// value proves the constraint system has no solution.
    pub fn farkas_margin(&self, y: &[T]) -> Option<T> {
        if y.len() != self.num_rows() {
            return None;
        }
        let tol = T::feasibility_tol() * (T::one() + max_abs(y));
        if !self.multiplier_signs_ok(y, true, tol) {
            return None;
        }
        let aty = self.transpose_times(y);
        Some(self.box_minimum(&aty, tol)? - dot(y, &self.rhs))
    }
}

/// Termination status of a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of a solve.
///
/// * `Optimal`: `primal` is a minimizer, `objective` its value, `dual` the
///   row prices.
/// * `Infeasible`: `dual` is a Farkas certificate, `primal` is empty and
///   `objective` is `+∞`.
/// * `Unbounded`: `primal` is a feasible point and `ray` a direction along
///   which the objective decreases without bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome<T> {
    pub status: LpStatus,
    pub primal: Vec<T>,
    pub objective: T,
    pub dual: Vec<T>,
    pub ray: Vec<T>,
}

impl<T> LpOutcome<T> {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Solver knobs. Defaults come from the scalar type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpOptions<T> {
    pub feasibility_tol: T,
    pub pivot_tol: T,
    pub duality_tol: T,
    /// Dantzig pivots allowed before switching to Bland's rule. `None` scales
    /// with the tableau size.
    pub dantzig_pivots: Option<usize>,
    pub max_iterations: usize,
}

impl<T: Scalar> Default for LpOptions<T> {
    fn default() -> Self {
        Self {
            feasibility_tol: T::feasibility_tol(),
            pivot_tol: T::pivot_tol(),
            duality_tol: T::duality_tol(),
            dantzig_pivots: None,
            max_iterations: 100_000,
        }
    }
}

pub fn solve<T: Scalar>(problem: &LpProblem<T>) -> Result<LpOutcome<T>> {
    solve_with(problem, &LpOptions::default())
}

pub fn solve_with<T: Scalar>(problem: &LpProblem<T>, opts: &LpOptions<T>) -> Result<LpOutcome<T>> {
    problem.validate()?;
    Simplex::new(problem, opts).run(problem, opts, true)
}

/// Phase one only: decides whether the constraints admit a solution. The
/// objective of `problem` is ignored.
pub fn feasibility<T: Scalar>(problem: &LpProblem<T>) -> Result<LpOutcome<T>> {
    feasibility_with(problem, &LpOptions::default())
}

pub fn feasibility_with<T: Scalar>(
    problem: &LpProblem<T>,
    opts: &LpOptions<T>,
) -> Result<LpOutcome<T>> {
    problem.validate()?;
    Simplex::new(problem, opts).run(problem, opts, false)
}

#[derive(Debug, Clone, Copy)]
enum VarMap<T> {
    /// x = lower + x'
    Shifted { col: usize, lower: T },
    /// x = upper − x'
    Reflected { col: usize, upper: T },
    /// x = x⁺ − x⁻
    Split { pos: usize, neg: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

enum PhaseEnd {
    Optimal,
    Unbounded(usize),
}

struct Simplex<T> {
    maps: Vec<VarMap<T>>,
    /// Sign applied to each row to make its right-hand side non-negative.
    row_sign: Vec<T>,
    original_rows: usize,
    m: usize,
    width: usize,
    kinds: Vec<ColKind>,
    /// Column that formed the initial identity in each row.
    identity: Vec<usize>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    tab: Vec<T>,
    /// Structural objective in standard form, plus the constant it drops.
    cost: Vec<T>,
    iterations: usize,
    dantzig_limit: usize,
}

impl<T: Scalar> Simplex<T> {
    fn new(p: &LpProblem<T>, opts: &LpOptions<T>) -> Self {
        let n = p.num_vars();
        let mut maps = Vec::with_capacity(n);
        let mut ncols = 0;
        let mut bound_rows = Vec::new();
        for j in 0..n {
            match (p.lower[j], p.upper[j]) {
                (Some(l), u) => {
                    maps.push(VarMap::Shifted { col: ncols, lower: l });
                    if let Some(u) = u {
                        bound_rows.push((ncols, u - l));
                    }
                    ncols += 1;
                }
                (None, Some(u)) => {
                    maps.push(VarMap::Reflected { col: ncols, upper: u });
                    ncols += 1;
                }
                (None, None) => {
                    maps.push(VarMap::Split { pos: ncols, neg: ncols + 1 });
                    ncols += 2;
                }
            }
        }

        let mut cost = vec![T::zero(); ncols];
        for (j, map) in maps.iter().enumerate() {
            let c = p.objective[j];
            match *map {
                VarMap::Shifted { col, .. } => cost[col] += c,
                VarMap::Reflected { col, .. } => cost[col] -= c,
                VarMap::Split { pos, neg } => {
                    cost[pos] += c;
                    cost[neg] -= c;
                }
            }
        }

        // Standard-form rows before slack/artificial columns.
        let mut std_rows: Vec<(Vec<T>, Relation, T)> = Vec::new();
        for ((row, &rel), &b) in p.rows.iter().zip(&p.relations).zip(&p.rhs) {
            let mut coef = vec![T::zero(); ncols];
            let mut rhs = b;
            for (j, map) in maps.iter().enumerate() {
                let a = row[j];
                if a == T::zero() {
                    continue;
                }
                match *map {
                    VarMap::Shifted { col, lower } => {
                        coef[col] += a;
                        rhs -= a * lower;
                    }
                    VarMap::Reflected { col, upper } => {
                        coef[col] -= a;
                        rhs -= a * upper;
                    }
                    VarMap::Split { pos, neg } => {
                        coef[pos] += a;
                        coef[neg] -= a;
                    }
                }
            }
            std_rows.push((coef, rel, rhs));
        }
        for (col, width) in bound_rows {
            let mut coef = vec![T::zero(); ncols];
            coef[col] = T::one();
            std_rows.push((coef, Relation::Le, width));
        }

        let m = std_rows.len();
        let mut row_sign = Vec::with_capacity(m);
        for (coef, rel, rhs) in std_rows.iter_mut() {
            if *rhs < T::zero() {
                coef.iter_mut().for_each(|v| *v = -*v);
                *rhs = -*rhs;
                *rel = rel.flipped();
                row_sign.push(-T::one());
            } else {
                row_sign.push(T::one());
            }
        }

        let n_slack = std_rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = std_rows.iter().filter(|r| r.1 != Relation::Le).count();
        let total = ncols + n_slack + n_art;
        let width = total + 1;
        let mut kinds = vec![ColKind::Structural; ncols];
        kinds.extend(std::iter::repeat_n(ColKind::Slack, n_slack));
        kinds.extend(std::iter::repeat_n(ColKind::Artificial, n_art));

        let mut tab = vec![T::zero(); m * width];
        let mut identity = Vec::with_capacity(m);
        let mut next_slack = ncols;
        let mut next_art = ncols + n_slack;
        for (i, (coef, rel, rhs)) in std_rows.iter().enumerate() {
            let r = &mut tab[i * width..(i + 1) * width];
            r[..ncols].copy_from_slice(coef);
            r[total] = *rhs;
            match rel {
                Relation::Le => {
                    r[next_slack] = T::one();
                    identity.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    r[next_slack] = -T::one();
                    next_slack += 1;
                    r[next_art] = T::one();
                    identity.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    r[next_art] = T::one();
                    identity.push(next_art);
                    next_art += 1;
                }
            }
        }
        let mut is_basic = vec![false; total];
        for &c in &identity {
            is_basic[c] = true;
        }
        cost.resize(total, T::zero());

        Self {
            maps,
            row_sign,
            original_rows: p.num_rows(),
            m,
            width,
            kinds,
            basis: identity.clone(),
            identity,
            is_basic,
            tab,
            cost,
            iterations: 0,
            dantzig_limit: opts.dantzig_pivots.unwrap_or(10 * (m + total + 1)),
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> T {
        self.tab[i * self.width + j]
    }

    fn rhs_col(&self) -> usize {
        self.width - 1
    }

    /// Reduced-cost row for column costs `c` under the current basis. The
    /// last entry holds the negated objective value.
    fn reduced_costs(&self, c: &[T]) -> Vec<T> {
        let mut d = vec![T::zero(); self.width];
        d[..c.len()].copy_from_slice(c);
        for i in 0..self.m {
            let cb = c[self.basis[i]];
            if cb == T::zero() {
                continue;
            }
            for j in 0..self.width {
                d[j] -= cb * self.at(i, j);
            }
        }
        d
    }

    fn pivot(&mut self, r: usize, q: usize, d: &mut [T]) {
        let w = self.width;
        let p = self.tab[r * w + q];
        for j in 0..w {
            self.tab[r * w + j] /= p;
        }
        self.tab[r * w + q] = T::one();
        let (before, rest) = self.tab.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for row in before.chunks_mut(w).chain(after.chunks_mut(w)) {
            let f = row[q];
            if f != T::zero() {
                for (x, &pj) in row.iter_mut().zip(prow.iter()) {
                    *x -= f * pj;
                }
                row[q] = T::zero();
            }
        }
        let f = d[q];
        if f != T::zero() {
            for (x, &pj) in d.iter_mut().zip(prow.iter()) {
                *x -= f * pj;
            }
            d[q] = T::zero();
        }
        let leaving = self.basis[r];
        self.is_basic[leaving] = false;
        self.is_basic[q] = true;
        self.basis[r] = q;
    }

    fn iterate(&mut self, d: &mut [T], allow_artificial: bool, opts: &LpOptions<T>) -> Result<PhaseEnd> {
        let total = self.width - 1;
        let tol = opts.feasibility_tol;
        loop {
            if self.iterations >= opts.max_iterations {
                return Err(Error::NumericalFailure(format!(
                    "simplex did not terminate within {} pivots",
                    opts.max_iterations
                )));
            }
            let bland = self.iterations >= self.dantzig_limit;
            let mut entering = None;
            let mut best = -tol;
            for j in 0..total {
                if self.is_basic[j] || (!allow_artificial && self.kinds[j] == ColKind::Artificial) {
                    continue;
                }
                if d[j] < best {
                    entering = Some(j);
                    if bland {
                        break;
                    }
                    best = d[j];
                }
            }
            let Some(q) = entering else {
                return Ok(PhaseEnd::Optimal);
            };

            let rc = self.rhs_col();
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.m {
                let a = self.at(i, q);
                if a <= opts.pivot_tol {
                    continue;
                }
                let ratio = self.at(i, rc).max(T::zero()) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best_ratio)) => {
                        let slack = opts.pivot_tol * (T::one() + best_ratio.abs());
                        if ratio < best_ratio - slack {
                            Some((i, ratio))
                        } else if ratio <= best_ratio + slack {
                            let prefer = if bland {
                                self.basis[i] < self.basis[r]
                            } else {
                                a > self.at(r, q)
                            };
                            if prefer {
                                Some((i, ratio.min(best_ratio)))
                            } else {
                                Some((r, best_ratio.min(ratio)))
                            }
                        } else {
                            Some((r, best_ratio))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Ok(PhaseEnd::Unbounded(q));
            };
            self.pivot(r, q, d);
            self.iterations += 1;
        }
    }

    /// Replace basic artificial columns by structural or slack ones where
    /// the row allows it. Rows that cannot be repaired are redundant.
    fn expel_artificials(&mut self, d: &mut [T], opts: &LpOptions<T>) {
        let total = self.width - 1;
        for r in 0..self.m {
            if self.kinds[self.basis[r]] != ColKind::Artificial {
                continue;
            }
            let mut best: Option<(usize, T)> = None;
            for j in 0..total {
                if self.kinds[j] == ColKind::Artificial || self.is_basic[j] {
                    continue;
                }
                let a = self.at(r, j).abs();
                if a > opts.pivot_tol && best.is_none_or(|(_, b)| a > b) {
                    best = Some((j, a));
                }
            }
            if let Some((q, _)) = best {
                self.pivot(r, q, d);
            }
        }
    }

    fn primal_std(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.width - 1];
        let rc = self.rhs_col();
        for i in 0..self.m {
            x[self.basis[i]] = self.at(i, rc).max(T::zero());
        }
        x
    }

    fn to_original(&self, xs: &[T], affine: bool) -> Vec<T> {
        self.maps
            .iter()
            .map(|map| match *map {
                VarMap::Shifted { col, lower } => {
                    if affine {
                        lower + xs[col]
                    } else {
                        xs[col]
                    }
                }
                VarMap::Reflected { col, upper } => {
                    if affine {
                        upper - xs[col]
                    } else {
                        -xs[col]
                    }
                }
                VarMap::Split { pos, neg } => xs[pos] - xs[neg],
            })
            .collect()
    }

    /// `c_B B⁻¹`, read off the reduced costs of the initial identity columns.
    fn row_multipliers(&self, d: &[T], col_cost: impl Fn(usize) -> T) -> Vec<T> {
        self.identity.iter().map(|&k| col_cost(k) - d[k]).collect()
    }

    fn run(mut self, p: &LpProblem<T>, opts: &LpOptions<T>, optimize: bool) -> Result<LpOutcome<T>> {
        let total = self.width - 1;
        let phase1_cost: Vec<T> = self
            .kinds
            .iter()
            .map(|k| if *k == ColKind::Artificial { T::one() } else { T::zero() })
            .collect();
        let mut d = self.reduced_costs(&phase1_cost);
        match self.iterate(&mut d, true, opts)? {
            PhaseEnd::Optimal => {}
            PhaseEnd::Unbounded(_) => {
                return Err(Error::NumericalFailure("phase one reported unbounded".into()));
            }
        }
        let infeasibility = -d[total];
        if infeasibility > opts.feasibility_tol {
            let y_std = self.row_multipliers(&d, |k| phase1_cost[k]);
            let farkas: Vec<T> = (0..self.original_rows)
                .map(|i| -self.row_sign[i] * y_std[i])
                .collect();
            match p.farkas_margin(&farkas) {
                Some(margin) if margin > T::zero() => {}
                other => {
                    return Err(Error::NumericalFailure(format!(
                        "infeasibility certificate failed validation (margin {other:?})"
                    )))
                }
            }
            return Ok(LpOutcome {
                status: LpStatus::Infeasible,
                primal: Vec::new(),
                objective: T::infinity(),
                dual: farkas,
                ray: Vec::new(),
            });
        }

        self.expel_artificials(&mut d, opts);
        let cost = self.cost.clone();
        let mut d = if optimize {
            self.reduced_costs(&cost)
        } else {
            vec![T::zero(); self.width]
        };
        let end = if optimize {
            self.iterate(&mut d, false, opts)?
        } else {
            PhaseEnd::Optimal
        };

        let x = self.to_original(&self.primal_std(), true);
        let violation = p.max_violation(&x);
        if violation > opts.feasibility_tol {
            return Err(Error::NumericalFailure(format!(
                "primal point violates constraints by {violation}"
            )));
        }
        let objective = dot(&p.objective, &x);

        if let PhaseEnd::Unbounded(q) = end {
            let mut dir = vec![T::zero(); total];
            dir[q] = T::one();
            for i in 0..self.m {
                dir[self.basis[i]] = -self.at(i, q);
            }
            let ray = self.to_original(&dir, false);
            return Ok(LpOutcome {
                status: LpStatus::Unbounded,
                primal: x,
                objective: T::neg_infinity(),
                dual: Vec::new(),
                ray,
            });
        }

        let dual: Vec<T> = if optimize {
            let y_std = self.row_multipliers(&d, |_| T::zero());
            (0..self.original_rows).map(|i| self.row_sign[i] * y_std[i]).collect()
        } else {
            vec![T::zero(); self.original_rows]
        };
        if optimize {
            let bound = p.dual_objective(&dual).ok_or_else(|| {
                Error::NumericalFailure("dual prices failed sign or boundedness checks".into())
            })?;
            let gap = (objective - bound).abs();
            if gap > opts.duality_tol * (T::one() + objective.abs()) {
                return Err(Error::NumericalFailure(format!(
                    "duality gap {gap} exceeds tolerance"
                )));
            }
        }
        Ok(LpOutcome {
            status: LpStatus::Optimal,
            primal: x,
            objective,
            dual,
            ray: Vec::new(),
        })
    }
}
