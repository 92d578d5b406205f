//! Cheaper necessary conditions for optimality of polynomial fits.
//!
//! Two families are implemented on top of the exact hull test:
//!
//! * **Degree reduction.** Multiplying the moment identities by the linear
//!   polynomial `x_j − δ` with `δ` the smallest (or `δ − x_j` with `δ` the
//!   largest) `j`-th coordinate of the extremal points gives non-negative
//!   weights that vanish on the points attaining the extreme. Those points
//!   drop out and the degree falls by one. Repeating until degree one leaves
//!   a plain convex-hull intersection test in `R^d`. Every choice of
//!   coordinate and extreme must survive, so all branches are explored.
//! * **Hyperplane cuts.** Multiplying by `⟨u, x⟩ − a` instead and moving the
//!   negative terms across flips the signs of the points on one side of the
//!   hyperplane. The re-signed sets must then satisfy the hull condition one
//!   degree lower. Hyperplanes through every `d`-subset of the points are
//!   tried.
//!
//! Neither family is sufficient in more than one variable.

use crate::basis::{enumerate_monomials, BasisSpec};
use crate::error::{Error, Result};
use crate::approx::{Dataset, ExtremalSets};
use crate::linalg::null_space;
use crate::lp::LpOptions;
use crate::optimality::{hull_intersection, Verdict};
use crate::scalar::{max_abs, Scalar};
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Extremal points with deviation signs at a given polynomial degree.
/// `ids` tracks each point's position in the set the analysis started from.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedPointSet<T> {
    pub points: Vec<Vec<T>>,
    pub signs: Vec<Sign>,
    pub ids: Vec<usize>,
    pub degree: u32,
}

impl<T: Scalar> SignedPointSet<T> {
    pub fn new(points: Vec<Vec<T>>, signs: Vec<Sign>, degree: u32) -> Result<Self> {
        if points.len() != signs.len() {
            return Err(Error::LengthMismatch { points: points.len(), values: signs.len() });
        }
        if degree < 1 {
            return Err(Error::Precondition("signed point sets need degree ≥ 1".into()));
        }
        if let Some(d) = points.first().map(Vec::len) {
            if d == 0 {
                return Err(Error::Precondition("points must have dimension ≥ 1".into()));
            }
            if let Some(p) = points.iter().find(|p| p.len() != d) {
                return Err(Error::DimensionMismatch { expected: d, found: p.len() });
            }
        }
        let ids = (0..points.len()).collect();
        Ok(Self { points, signs, ids, degree })
    }

    /// Builds the set from positive and negative point lists, positives first.
    pub fn from_sides(plus: Vec<Vec<T>>, minus: Vec<Vec<T>>, degree: u32) -> Result<Self> {
        let signs = std::iter::repeat_n(Sign::Plus, plus.len())
            .chain(std::iter::repeat_n(Sign::Minus, minus.len()))
            .collect();
        Self::new(plus.into_iter().chain(minus).collect(), signs, degree)
    }

    /// The extremal points of a fit; `ids` are dataset row indices.
    pub fn from_extremal(data: &Dataset<T>, ext: &ExtremalSets<T>, degree: u32) -> Result<Self> {
        let mut set = Self::from_sides(
            ext.positive.iter().map(|&k| data.point(k).to_vec()).collect(),
            ext.negative.iter().map(|&k| data.point(k).to_vec()).collect(),
            degree,
        )?;
        set.ids = ext.positive.iter().chain(&ext.negative).copied().collect();
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn side(&self, sign: Sign) -> Vec<Vec<T>> {
        self.points
            .iter()
            .zip(&self.signs)
            .filter(|(_, &s)| s == sign)
            .map(|(p, _)| p.clone())
            .collect()
    }

    pub fn has_both_signs(&self) -> bool {
        self.signs.contains(&Sign::Plus) && self.signs.contains(&Sign::Minus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaKind {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionStep<T> {
    pub dimension: usize,
    pub kind: DeltaKind,
    pub delta: T,
    /// `ids` of the points that were dropped.
    pub removed: Vec<usize>,
}

fn zero_tol<T: Scalar>(scale: T) -> T {
    T::feasibility_tol() * (T::one() + scale)
}

/// One degree-reduction step along coordinate `j`.
///
/// `Min` shifts `x_j ← x_j − min`, `Max` maps `x_j ← max − x_j`; both keep
/// the coordinate non-negative. Points whose shifted coordinate is zero are
/// removed and the degree drops by one. An empty result is legal.
pub fn reduce_step<T: Scalar>(
    set: &SignedPointSet<T>,
    j: usize,
    kind: DeltaKind,
) -> Result<(SignedPointSet<T>, ReductionStep<T>)> {
    if set.degree <= 1 {
        return Err(Error::Precondition("degree reduction needs degree > 1".into()));
    }
    if j >= set.dimension() {
        return Err(Error::Precondition(format!(
            "coordinate {j} out of range for dimension {}",
            set.dimension()
        )));
    }
    let coords = set.points.iter().map(|p| p[j]);
    let delta = match kind {
        DeltaKind::Min => coords.fold(T::infinity(), T::min),
        DeltaKind::Max => coords.fold(T::neg_infinity(), T::max),
    };
    let tol = zero_tol(delta.abs());
    let mut next = SignedPointSet {
        points: Vec::new(),
        signs: Vec::new(),
        ids: Vec::new(),
        degree: set.degree - 1,
    };
    let mut removed = Vec::new();
    for ((p, &s), &id) in set.points.iter().zip(&set.signs).zip(&set.ids) {
        let shifted = match kind {
            DeltaKind::Min => p[j] - delta,
            DeltaKind::Max => delta - p[j],
        };
        if shifted.abs() <= tol {
            removed.push(id);
            continue;
        }
        let mut q = p.clone();
        q[j] = shifted;
        next.points.push(q);
        next.signs.push(s);
        next.ids.push(id);
    }
    Ok((next, ReductionStep { dimension: j, kind, delta, removed }))
}

/// How a branch of the reduction ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafOutcome {
    /// A side ran out of points; the branch carries no constraint.
    Exhausted,
    /// Degree one with intersecting hulls.
    Intersect,
    /// Degree one with disjoint hulls: the fit is not optimal.
    Disjoint,
    /// The starting set already lacks one sign.
    OneSided,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionNode<T> {
    pub parent: Option<usize>,
    pub step: Option<ReductionStep<T>>,
    pub set: SignedPointSet<T>,
    pub outcome: Option<LeafOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionVerdict {
    NecessaryConditionHolds,
    /// `leaf` is the first violating node in canonical order; `path` lists
    /// the `(coordinate, extreme)` choices leading to it.
    Violated { leaf: usize, path: Vec<(usize, DeltaKind)> },
    /// The node budget ran out before every branch was decided.
    Inconclusive,
}

/// Every explored node in depth-first order (coordinates ascending, `Min`
/// before `Max`), plus the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionTrace<T> {
    pub nodes: Vec<ReductionNode<T>>,
    pub verdict: ReductionVerdict,
}

impl<T> ReductionTrace<T> {
    /// Node indices from the root to `node`.
    pub fn path_to(&self, node: usize) -> Vec<usize> {
        let mut path = vec![node];
        let mut cur = node;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn leaves(&self) -> impl Iterator<Item = (usize, &ReductionNode<T>)> {
        self.nodes.iter().enumerate().filter(|(_, n)| n.outcome.is_some())
    }

    pub fn holds(&self) -> bool {
        self.verdict == ReductionVerdict::NecessaryConditionHolds
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionOptions<T> {
    pub node_budget: usize,
    /// Follow only the first branch (`x₁`, `Min`) at every level.
    pub single_branch: bool,
    pub lp: LpOptions<T>,
}

impl<T: Scalar> Default for ReductionOptions<T> {
    fn default() -> Self {
        Self { node_budget: 10_000, single_branch: false, lp: LpOptions::default() }
    }
}

fn linear_hulls_intersect<T: Scalar>(set: &SignedPointSet<T>, lp: &LpOptions<T>) -> Result<bool> {
    let basis = enumerate_monomials(set.dimension(), 1)?;
    let lift = |s: Sign| -> Result<Vec<Vec<T>>> {
        set.side(s).iter().map(|p| basis.lift(p)).collect()
    };
    Ok(hull_intersection(&lift(Sign::Plus)?, &lift(Sign::Minus)?, lp)?.is_optimal())
}

pub fn verify_necessary_condition<T: Scalar>(set: &SignedPointSet<T>) -> Result<ReductionTrace<T>> {
    verify_necessary_condition_with(set, &ReductionOptions::default())
}

/// Runs the degree-reduction test over every branch.
pub fn verify_necessary_condition_with<T: Scalar>(
    set: &SignedPointSet<T>,
    opts: &ReductionOptions<T>,
) -> Result<ReductionTrace<T>> {
    let mut nodes = vec![ReductionNode { parent: None, step: None, set: set.clone(), outcome: None }];
    let mut truncated = false;

    if !set.has_both_signs() {
        nodes[0].outcome = Some(LeafOutcome::OneSided);
        return Ok(ReductionTrace {
            nodes,
            verdict: ReductionVerdict::Violated { leaf: 0, path: Vec::new() },
        });
    }

    let mut stack = vec![0usize];
    while let Some(id) = stack.pop() {
        let node_set = nodes[id].set.clone();
        if !node_set.has_both_signs() {
            nodes[id].outcome = Some(LeafOutcome::Exhausted);
            continue;
        }
        if node_set.degree == 1 {
            let outcome = if linear_hulls_intersect(&node_set, &opts.lp)? {
                LeafOutcome::Intersect
            } else {
                LeafOutcome::Disjoint
            };
            nodes[id].outcome = Some(outcome);
            continue;
        }
        let mut children = Vec::new();
        for j in 0..node_set.dimension() {
            for kind in [DeltaKind::Min, DeltaKind::Max] {
                children.push((j, kind));
                if opts.single_branch {
                    break;
                }
            }
            if opts.single_branch {
                break;
            }
        }
        if nodes.len() + children.len() > opts.node_budget {
            truncated = true;
            continue;
        }
        let first_child = nodes.len();
        for (j, kind) in children {
            let (child, step) = reduce_step(&node_set, j, kind)?;
            nodes.push(ReductionNode { parent: Some(id), step: Some(step), set: child, outcome: None });
        }
        // Reverse so the stack pops children in canonical order.
        stack.extend((first_child..nodes.len()).rev());
    }

    // Node indices follow creation order, not traversal order.
    let verdict = match first_violation_preorder(&nodes) {
        Some(leaf) => {
            let path = path_choices(&nodes, leaf);
            ReductionVerdict::Violated { leaf, path }
        }
        None if truncated => ReductionVerdict::Inconclusive,
        None => ReductionVerdict::NecessaryConditionHolds,
    };
    Ok(ReductionTrace { nodes, verdict })
}

fn first_violation_preorder<T>(nodes: &[ReductionNode<T>]) -> Option<usize> {
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (i, n) in nodes.iter().enumerate() {
        if let Some(p) = n.parent {
            children[p].push(i);
        }
    }
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        if nodes[i].outcome == Some(LeafOutcome::Disjoint) {
            return Some(i);
        }
        stack.extend(children[i].iter().rev());
    }
    None
}

fn path_choices<T>(nodes: &[ReductionNode<T>], leaf: usize) -> Vec<(usize, DeltaKind)> {
    let mut path = Vec::new();
    let mut cur = leaf;
    while let Some(step) = &nodes[cur].step {
        path.push((step.dimension, step.kind));
        cur = nodes[cur].parent.expect("non-root nodes have parents");
    }
    path.reverse();
    path
}

/// One hyperplane cut with its re-signed point groups. Indices are `ids`
/// of the input set.
#[derive(Debug, Clone, PartialEq)]
pub struct CutCheck<T> {
    /// Points the hyperplane was constructed through.
    pub through: Vec<usize>,
    pub normal: Vec<T>,
    pub offset: T,
    /// Every point lying on the hyperplane; these are excluded from both groups.
    pub on_plane: Vec<usize>,
    /// `(E⁺ ∩ H⁺) ∪ (E⁻ ∩ H⁻)`
    pub positive: Vec<usize>,
    /// `(E⁻ ∩ H⁺) ∪ (E⁺ ∩ H⁻)`
    pub negative: Vec<usize>,
    pub degree_after: u32,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCut {
    pub subset: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutAnalysis<T> {
    pub checks: Vec<CutCheck<T>>,
    pub skipped: Vec<SkippedCut>,
}

impl<T> CutAnalysis<T> {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.feasible)
    }

    pub fn violations(&self) -> impl Iterator<Item = &CutCheck<T>> {
        self.checks.iter().filter(|c| !c.feasible)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Hyperplane `⟨u, x⟩ = a` through the given points, if unique.
fn hyperplane_through<T: Scalar>(points: &[&Vec<T>]) -> Option<(Vec<T>, T)> {
    let d = points[0].len();
    let rows: Vec<Vec<T>> = points
        .iter()
        .map(|p| p.iter().copied().chain(std::iter::once(-T::one())).collect())
        .collect();
    let scale = rows.iter().map(|r| max_abs(r)).fold(T::one(), T::max);
    let ns = null_space(&rows, d + 1, T::pivot_tol() * scale);
    if ns.len() != 1 {
        return None;
    }
    let v = &ns[0];
    let mut u = v[..d].to_vec();
    let mut a = v[d];
    let norm = max_abs(&u);
    if norm <= T::pivot_tol() {
        return None;
    }
    let lead = *u.iter().find(|x| x.abs() > T::pivot_tol() * norm)?;
    let s = if lead < T::zero() { -norm } else { norm };
    u.iter_mut().for_each(|x| *x /= s);
    a /= s;
    Some((u, a))
}

pub fn cut_condition_check<T: Scalar>(set: &SignedPointSet<T>) -> Result<CutAnalysis<T>> {
    cut_condition_check_with(set, &LpOptions::default())
}

/// Checks every hyperplane cut through `d` of the points at degree
/// `set.degree − 1`.
///
/// A cut whose re-signed groups leave one side empty is recorded as
/// feasible: all weight of a valid certificate then lies on the hyperplane
/// and the cut says nothing.
pub fn cut_condition_check_with<T: Scalar>(
    set: &SignedPointSet<T>,
    lp: &LpOptions<T>,
) -> Result<CutAnalysis<T>> {
    if set.degree < 2 {
        return Err(Error::Precondition("cut conditions need degree ≥ 2".into()));
    }
    let d = set.dimension();
    if set.len() < d {
        return Ok(CutAnalysis { checks: Vec::new(), skipped: Vec::new() });
    }
    let lower = BasisSpec::<T>::monomial(d, set.degree - 1)?;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut checks = Vec::new();
    let mut skipped = Vec::new();

    for subset in combinations(set.len(), d) {
        let pts: Vec<&Vec<T>> = subset.iter().map(|&i| &set.points[i]).collect();
        let ids: Vec<usize> = subset.iter().map(|&i| set.ids[i]).collect();
        let Some((normal, offset)) = hyperplane_through(&pts) else {
            skipped.push(SkippedCut {
                subset: ids,
                reason: "points are affinely dependent".into(),
            });
            continue;
        };
        let side: Vec<T> = set
            .points
            .iter()
            .map(|p| p.iter().zip(&normal).map(|(&x, &u)| x * u).sum::<T>() - offset)
            .collect();
        let scale = set.points.iter().map(|p| max_abs(p)).fold(offset.abs(), T::max);
        let tol = zero_tol(scale);
        let on_plane: Vec<usize> = (0..set.len()).filter(|&i| side[i].abs() <= tol).collect();
        if !seen.insert(on_plane.clone()) {
            continue;
        }
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        let mut pos_pts = Vec::new();
        let mut neg_pts = Vec::new();
        for i in 0..set.len() {
            if side[i].abs() <= tol {
                continue;
            }
            let sign = if side[i] > T::zero() { set.signs[i] } else { set.signs[i].flipped() };
            let (ids_out, pts_out) = match sign {
                Sign::Plus => (&mut positive, &mut pos_pts),
                Sign::Minus => (&mut negative, &mut neg_pts),
            };
            ids_out.push(set.ids[i]);
            pts_out.push(lower.lift(&set.points[i])?);
        }
        let feasible = if pos_pts.is_empty() || neg_pts.is_empty() {
            true
        } else {
            matches!(hull_intersection(&pos_pts, &neg_pts, lp)?, Verdict::Optimal(_))
        };
        checks.push(CutCheck {
            through: ids,
            normal,
            offset,
            on_plane: on_plane.iter().map(|&i| set.ids[i]).collect(),
            positive,
            negative,
            degree_after: set.degree - 1,
            feasible,
        });
    }
    Ok(CutAnalysis { checks, skipped })
}
