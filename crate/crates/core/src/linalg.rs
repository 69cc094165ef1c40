//! Small dense linear algebra over exact rationals and over the Novikov ring.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::novikov::NovikovScalar;
use crate::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// Gauss-Jordan inverse. `None` when the matrix is singular or not square.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for x in inv[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let da = &f * &a[col][c];
                a[r][c] -= da;
                let di = &f * &inv[col][c];
                inv[r][c] -= di;
            }
        }
    }
    Some(inv)
}

/// Determinant of a square matrix over the Novikov ring, by Laplace expansion
/// along rows memoised on the set of used columns. Division free.
pub fn novikov_det(m: &[Vec<NovikovScalar>]) -> NovikovScalar {
    let n = m.len();
    assert!(n < 64, "matrix too large for bitmask determinant");
    let mut memo: HashMap<u64, NovikovScalar> = HashMap::new();
    det_rec(m, 0, 0, &mut memo)
}

fn det_rec(
    m: &[Vec<NovikovScalar>],
    row: usize,
    used: u64,
    memo: &mut HashMap<u64, NovikovScalar>,
) -> NovikovScalar {
    let n = m.len();
    if row == n {
        return NovikovScalar::one();
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut acc = NovikovScalar::zero();
    // sign = parity of the position of c among the remaining columns
    for c in 0..n {
        if used & (1 << c) != 0 || m[row][c].is_zero() {
            continue;
        }
        let left = (used & ((1u64 << c) - 1)).count_ones();
        let minor = det_rec(m, row + 1, used | (1 << c), memo);
        if minor.is_zero() {
            continue;
        }
        let term = &m[row][c] * &minor;
        if (c as u32 - left).is_multiple_of(2) {
            acc += &term;
        } else {
            acc += &(-term);
        }
    }
    memo.insert(used, acc.clone());
    acc
}
