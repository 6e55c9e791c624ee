//! Fraction-free integer linear algebra.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, pivot);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Rank of an integer matrix (rows need not be square).
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            let (top, rest) = m.split_at_mut(i);
            for (x, p) in rest[0][c..].iter_mut().zip(&top[r][c..]) {
                *x = &*x * &a - p * &b;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub(crate) fn to_big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Affine rank of a point set: rank of the differences to the first point.
pub(crate) fn affine_rank(points: &[Vec<i64>]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let rows: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| to_big(a - b)).collect())
        .collect();
    if rows.is_empty() {
        0
    } else {
        rank(&rows)
    }
}

/// |det(p_1 - p_0, ..., p_d - p_0)| for d+1 points in Z^d.
pub(crate) fn simplex_det(points: &[&[i64]]) -> BigInt {
    let base = points[0];
    let m = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| to_big(a - b)).collect())
        .collect();
    determinant(m).abs()
}
