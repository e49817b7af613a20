//! Dense exact linear algebra over a [`Scalar`] field.

use crate::scalar::Scalar;

/// Pivots of the symmetric elimination `M = L D Lᵀ` taken in natural order.
///
/// Returns `None` as soon as a zero pivot appears; a symmetric matrix is
/// negative definite iff this succeeds with every pivot negative.
pub fn symmetric_pivots<T: Scalar>(matrix: &[Vec<i64>]) -> Option<Vec<T>> {
    let n = matrix.len();
    let mut work: Vec<Vec<T>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| T::from_i64(x)).collect())
        .collect();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = work[k][k].clone();
        if pivot.is_zero() {
            return None;
        }
        for i in (k + 1)..n {
            if work[i][k].is_zero() {
                continue;
            }
            let factor = work[i][k].clone() / pivot.clone();
            for j in k..n {
                let delta = factor.clone() * work[k][j].clone();
                work[i][j] = work[i][j].clone() - delta;
            }
        }
        pivots.push(pivot);
    }
    Some(pivots)
}

pub fn is_negative_definite<T: Scalar>(matrix: &[Vec<i64>]) -> bool {
    match symmetric_pivots::<T>(matrix) {
        Some(pivots) => pivots.iter().all(|p| p.is_negative()),
        None => false,
    }
}

/// Solves `M x = rhs` by Gaussian elimination with nonzero pivoting.
///
/// Returns `None` when `M` is singular.
pub fn solve<T: Scalar>(matrix: &[Vec<i64>], rhs: &[T]) -> Option<Vec<T>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n, "right-hand side length mismatch");
    let mut aug: Vec<Vec<T>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r: Vec<T> = row.iter().map(|&x| T::from_i64(x)).collect();
            r.push(b.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot_row);
        let pivot = aug[col][col].clone();
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone() / pivot.clone();
            for c in col..=n {
                let delta = factor.clone() * aug[col][c].clone();
                aug[r][c] = aug[r][c].clone() - delta;
            }
        }
    }
    Some(
        aug.into_iter()
            .enumerate()
            .map(|(i, row)| row[n].clone() / row[i].clone())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn solves_small_system() {
        let m = vec![vec![-2, 1], vec![1, -2]];
        let x = solve::<BigRational>(&m, &[q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(x, vec![q(-2, 3), q(-1, 3)]);
    }

    #[test]
    fn singular_system_has_no_solution() {
        let m = vec![vec![-1, 1], vec![1, -1]];
        assert!(solve::<Rational64>(&m, &[Rational64::from(0), Rational64::from(0)]).is_none());
    }

    #[test]
    fn zero_leading_pivot_still_solves() {
        let m = vec![vec![0, 1], vec![1, 0]];
        let x = solve::<BigRational>(&m, &[q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(x, vec![q(5, 1), q(3, 1)]);
    }

    #[test]
    fn definiteness() {
        assert!(is_negative_definite::<BigRational>(&[
            vec![-2, 1],
            vec![1, -2]
        ]));
        assert!(!is_negative_definite::<BigRational>(&[
            vec![-1, 1],
            vec![1, -1]
        ]));
        assert!(!is_negative_definite::<BigRational>(&[vec![0]]));
        assert!(!is_negative_definite::<Rational64>(&[
            vec![-1, 2],
            vec![2, -1]
        ]));
    }
}
