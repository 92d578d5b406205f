//! Independent reference computations and instance generators shared by the
//! integration test targets. Nothing here calls into the crate's solvers.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Left null space of `rows` (k × c), i.e. solutions of `λᵀ R = 0`, by
/// Gauss-Jordan elimination on the transpose.
fn left_null_space(rows: &[&Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let k = rows.len();
    let c = rows[0].len();
    // Build Rᵀ (c × k).
    let mut m: Vec<Vec<f64>> = (0..c).map(|j| (0..k).map(|i| rows[i][j]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        if r == c {
            break;
        }
        let (best, val) = (r..c)
            .map(|i| (i, m[i][col].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= tol {
            continue;
        }
        m.swap(r, best);
        let p = m[r][col];
        for v in m[r].iter_mut() {
            *v /= p;
        }
        for i in 0..c {
            if i != r && m[i][col] != 0.0 {
                let f = m[i][col];
                let pivot_row = m[r].clone();
                for (v, pv) in m[i].iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..k).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&fcol| {
            let mut v = vec![0.0; k];
            v[fcol] = 1.0;
            for (row, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -m[row][fcol];
            }
            v
        })
        .collect()
}

fn subsets(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        visit(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact discrete minimax error by enumerating circuits of the lifted design.
///
/// The dual of `min z s.t. |f − Φa| ≤ z` is `max λ·f` over `Φᵀλ = 0`,
/// `‖λ‖₁ ≤ 1`, whose vertices are normalized minimal dependencies among the
/// rows of `Φ`. Every such dependency lives on at most `n + 2` rows, so the
/// optimum is the largest `|λ·f| / ‖λ‖₁` over subsets with a one-dimensional
/// left null space.
pub fn circuit_minimax_error(lifts: &[Vec<f64>], values: &[f64]) -> f64 {
    let width = lifts[0].len();
    let mut best: f64 = 0.0;
    for k in 2..=(width + 1).min(lifts.len()) {
        subsets(lifts.len(), k, |s| {
            let rows: Vec<&Vec<f64>> = s.iter().map(|&i| &lifts[i]).collect();
            let scale = rows.iter().flat_map(|r| r.iter()).fold(1.0f64, |m, v| m.max(v.abs()));
            let ns = left_null_space(&rows, 1e-10 * scale);
            if ns.len() != 1 {
                return;
            }
            let l = &ns[0];
            let norm: f64 = l.iter().map(|v| v.abs()).sum();
            let val: f64 = l.iter().zip(s).map(|(w, &i)| w * values[i]).sum();
            best = best.max(val.abs() / norm);
        });
    }
    best
}

/// Monomial lift with the same ordering convention as the crate, built
/// independently: by total degree, then exponent vectors ascending.
pub fn reference_monomials(d: usize, m: u32) -> Vec<Vec<u32>> {
    let mut all = Vec::new();
    let mut cur = vec![0u32; d];
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, all: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            all.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, all);
        }
        cur[pos] = 0;
    }
    rec(0, m, &mut cur, &mut all);
    all.sort_by(|a, b| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    all
}

pub fn reference_lift(exps: &[Vec<u32>], x: &[f64]) -> Vec<f64> {
    exps.iter()
        .map(|e| e.iter().zip(x).map(|(&p, &v)| v.powi(p as i32)).product())
        .collect()
}

/// Longest alternating-sign subsequence of signs ordered along the line.
pub fn alternation_length(signs: &[bool]) -> usize {
    if signs.is_empty() {
        return 0;
    }
    1 + signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Univariate minimax instance on `n` equispaced nodes in `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct UnivariateCase {
    pub degree: u32,
    pub points: Vec<Vec<f64>>,
    pub values: Vec<f64>,
}

pub fn univariate_case(rng: &mut TestRng) -> UnivariateCase {
    let degree = rng.gen_range(1..=3u32);
    let n = rng.gen_range(6..=12usize);
    let points = (0..n).map(|i| vec![-1.0 + 2.0 * i as f64 / (n - 1) as f64]).collect();
    let values = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    UnivariateCase { degree, points, values }
}

/// Small instance with `d ≤ 2` and at most six basis functions.
#[derive(Debug, Clone)]
pub struct SmallCase {
    pub dimension: usize,
    pub degree: u32,
    pub points: Vec<Vec<f64>>,
    pub values: Vec<f64>,
}

pub fn small_case(rng: &mut TestRng) -> SmallCase {
    let dimension = rng.gen_range(1..=2usize);
    let degree = if dimension == 1 { rng.gen_range(1..=5u32) } else { rng.gen_range(1..=2u32) };
    let count = rng.gen_range(2..=8usize);
    // Half of the instances sit on an integer grid to exercise degenerate
    // configurations (collinear points, repeated coordinates).
    let on_grid = rng.gen_bool(0.5);
    let points = if on_grid {
        let mut grid: Vec<Vec<f64>> = if dimension == 1 {
            (-4..=4).map(|i| vec![i as f64]).collect()
        } else {
            (-2..=2).flat_map(|i| (-2..=2).map(move |j| vec![i as f64, j as f64])).collect()
        };
        grid.shuffle(rng);
        grid.truncate(count);
        grid
    } else {
        (0..count)
            .map(|_| (0..dimension).map(|_| rng.gen_range(-2.0..2.0)).collect())
            .collect()
    };
    let values = if on_grid {
        (0..count).map(|_| rng.gen_range(-3..=3) as f64).collect()
    } else {
        (0..count).map(|_| rng.gen_range(-1.0..1.0)).collect()
    };
    SmallCase { dimension, degree, points, values }
}

/// Random premise-satisfying instance of the shift identity.
pub struct ShiftCase {
    pub alpha: Vec<f64>,
    pub a: Vec<f64>,
    pub x: Vec<f64>,
    pub beta: Vec<f64>,
    pub b: Vec<f64>,
    pub y: Vec<f64>,
}

fn simplex(rng: &mut TestRng, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|v| v / s).collect()
}

pub fn shift_case(rng: &mut TestRng) -> ShiftCase {
    loop {
        let p = rng.gen_range(1..=6usize);
        let q = rng.gen_range(2..=6usize);
        let alpha = simplex(rng, p);
        let a: Vec<f64> = (0..p).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let x: Vec<f64> = (0..p).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let beta = simplex(rng, q);
        let y: Vec<f64> = (0..q).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let mut b: Vec<f64> = (0..q).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let s0: f64 = alpha.iter().zip(&a).map(|(w, c)| w * c).sum();
        let s1: f64 = alpha.iter().zip(&a).zip(&x).map(|((w, c), v)| w * c * v).sum();
        // Solve for b[0], b[1] so that Σβb = s0 and Σβby = s1.
        let r0 = s0 - (2..q).map(|i| beta[i] * b[i]).sum::<f64>();
        let r1 = s1 - (2..q).map(|i| beta[i] * b[i] * y[i]).sum::<f64>();
        let det = beta[0] * beta[1] * (y[1] - y[0]);
        if det.abs() < 1e-3 {
            continue;
        }
        b[0] = (r0 * beta[1] * y[1] - r1 * beta[1]) / det;
        b[1] = (r1 * beta[0] - r0 * beta[0] * y[0]) / det;
        return ShiftCase { alpha, a, x, beta, b, y };
    }
}

/// Both sides of the shifted identity, computed directly.
pub fn shift_sides(c: &ShiftCase, delta: f64) -> (f64, f64) {
    let l = c.alpha.iter().zip(&c.a).zip(&c.x).map(|((w, k), v)| w * k * (v - delta)).sum();
    let r = c.beta.iter().zip(&c.b).zip(&c.y).map(|((w, k), v)| w * k * (v - delta)).sum();
    (l, r)
}

/// Stated counterexample extremal sets (positive first), degree two.
pub fn stated_counterexample() -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    (
        vec![vec![0.0, 0.0], vec![1.0, 2.0], vec![2.0, 0.0]],
        vec![vec![0.0, 1.0], vec![1.0, -1.0], vec![2.0, 1.0]],
    )
}

/// Sets that pass every line cut at degree two but fail the full test.
pub fn gap_example() -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    (
        vec![vec![2.0, 0.0], vec![-1.0, 0.0], vec![0.0, 2.0]],
        vec![vec![2.0, 1.0], vec![1.0, -2.0], vec![-2.0, 2.0]],
    )
}

pub fn uneven_points() -> (Vec<Vec<f64>>, Vec<f64>) {
    (
        vec![vec![1.0, 1.0], vec![-1.0, 1.0], vec![0.0, -1.0], vec![0.0, 0.0]],
        vec![0.0, 0.0, 0.0, 2.0],
    )
}
