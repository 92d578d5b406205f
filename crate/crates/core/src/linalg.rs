//! Small dense helpers: reduced row echelon form and null vectors.

use crate::scalar::Scalar;

/// Reduces `a` (row-major, `cols` wide) in place with partial pivoting and
/// returns the pivot column of each pivot row.
pub(crate) fn rref<T: Scalar>(a: &mut [Vec<T>], cols: usize, tol: T) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (best, mag) = (r..rows)
            .map(|i| (i, a[i][c].abs()))
            .fold((r, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= tol {
            continue;
        }
        a.swap(r, best);
        let p = a[r][c];
        for v in a[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != T::zero() {
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the null space of `a`, one vector per free column.
pub(crate) fn null_space<T: Scalar>(a: &[Vec<T>], cols: usize, tol: T) -> Vec<Vec<T>> {
    let mut m: Vec<Vec<T>> = a.to_vec();
    let pivots = rref(&mut m, cols, tol);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![T::zero(); cols];
            v[free] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][free];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_vector_of_rank_deficient_matrix() {
        let a = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]];
        let ns = null_space(&a, 3, 1e-12);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let s: f64 = row.iter().zip(&v).map(|(x, y)| x * y).sum();
                assert!(s.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn full_rank_square_has_trivial_null_space() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        assert!(null_space(&a, 2, 1e-12).is_empty());
    }
}
