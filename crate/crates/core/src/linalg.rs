//! Small dense linear algebra over the rationals (Gaussian elimination).

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Determinant of a square matrix; the empty matrix has determinant 1.
pub fn det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut a: Matrix = rows.to_vec();
    let mut sign = Rational::one();
    let mut acc = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            sign = -sign;
        }
        let pivot = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
        acc *= pivot;
    }
    sign * acc
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut Matrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    rref(&mut a).len()
}

/// Basis of the right null space `{x : A x = 0}`.
pub fn kernel(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -a[r][f].clone();
            }
            x
        })
        .collect()
}

/// Unique solution of a square system, or `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}
