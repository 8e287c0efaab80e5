use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{affine_lattice_basis, solve_rational, AffineLatticeBasis, IntVector, RatMatrix};

/// Point configuration together with coordinates in the affine lattice
/// spanned by its points, where it is full-dimensional.
#[derive(Clone, Debug)]
pub(crate) struct Config {
    pub points: Vec<IntVector>,
    pub affine: AffineLatticeBasis,
    pub local: Vec<IntVector>,
}

impl Config {
    pub fn new(points: &[IntVector]) -> Result<Self> {
        let affine = affine_lattice_basis(points)?;
        let mut local = Vec::with_capacity(points.len());
        for p in points {
            match affine.to_local(p) {
                Some(c) => local.push(c),
                None => return Err(Error::DimensionMismatch { expected: affine.ambient_dim(), found: p.len() }),
            }
        }
        Ok(Config { points: points.to_vec(), affine, local })
    }

    pub fn dim(&self) -> usize {
        self.affine.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn check_index(&self, v: usize) -> Result<()> {
        if v >= self.len() {
            return Err(Error::IndexOutOfRange { index: v, len: self.len() });
        }
        Ok(())
    }
}

/// Affine function `c -> <alpha, c> + beta` on local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct AffineFn {
    pub alpha: Vec<BigRational>,
    pub beta: BigRational,
}

impl AffineFn {
    /// The affine function taking the given heights on the given points, if
    /// the points pin it down and the heights are consistent.
    pub fn interpolate(points: &[&IntVector], heights: &[&BigRational], k: usize) -> Option<AffineFn> {
        let mut a = RatMatrix::zeros(points.len(), k + 1);
        for (i, p) in points.iter().enumerate() {
            for j in 0..k {
                a[(i, j)] = BigRational::from_integer(p[j].clone());
            }
            a[(i, k)] = BigRational::one();
        }
        let b: Vec<BigRational> = heights.iter().map(|h| (*h).clone()).collect();
        let mut x = solve_rational(&a, &b).ok()?.unique()?;
        let beta = x.pop().expect("k + 1 unknowns");
        Some(AffineFn { alpha: x, beta })
    }

    pub fn eval(&self, c: &[BigInt]) -> BigRational {
        let mut acc = self.beta.clone();
        for (a, x) in self.alpha.iter().zip(c) {
            if !a.is_zero() && !x.is_zero() {
                acc += a * BigRational::from_integer(x.clone());
            }
        }
        acc
    }
}
