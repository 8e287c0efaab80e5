use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{RatMatrix, RatVector};
use crate::error::{Error, Result};

/// Outcome of an exact linear solve `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(RatVector),
    /// One particular solution plus a basis of the kernel of `A`.
    Underdetermined { particular: RatVector, kernel: Vec<RatVector> },
    Inconsistent,
}

impl Solution {
    /// Some solution if the system is consistent.
    pub fn any(self) -> Option<RatVector> {
        match self {
            Solution::Unique(x) => Some(x),
            Solution::Underdetermined { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }

    pub fn unique(self) -> Option<RatVector> {
        match self {
            Solution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = BigRational::one() / &m[(r, c)];
        for j in c..cols {
            m[(r, j)] = &m[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..cols {
                let v = &f * &m[(r, j)];
                m[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    rref(&mut m.clone()).len()
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination on `[A | b]`.
pub fn solve_rational(a: &RatMatrix, b: &[BigRational]) -> Result<Solution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let n = a.cols();
    let mut aug = RatMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return Ok(Solution::Inconsistent);
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, n)].clone();
    }
    if pivots.len() == n {
        return Ok(Solution::Unique(x));
    }
    let kernel = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut k = vec![BigRational::zero(); n];
            k[free] = BigRational::one();
            for (r, &c) in pivots.iter().enumerate() {
                k[c] = -aug[(r, free)].clone();
            }
            k
        })
        .collect();
    Ok(Solution::Underdetermined { particular: x, kernel })
}
