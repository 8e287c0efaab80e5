use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Vector of arbitrary-precision integers, e.g. a lattice point of `Z^d`.
pub type IntVector = Vec<BigInt>;
/// Vector of exact rationals.
pub type RatVector = Vec<BigRational>;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix whose rows are the given vectors. All rows must have
    /// length `cols`; an empty row list gives a `0 x cols` matrix.
    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<T> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    /// Convenience constructor from machine integers, mostly for tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| BigInt::from(x))
            })
            .collect();
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<IntVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }
}

/// Exact determinant of a square integer matrix (fraction-free Bareiss
/// elimination, so intermediate entries stay integral).
pub fn exact_det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(bareiss_det(m.clone()))
}

fn bareiss_det(mut a: IntMatrix) -> BigInt {
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(p) => {
                    a.swap_rows(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = v / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}

/// Determinant of the matrix whose rows are `rows` (must be square).
pub fn det_of_rows(rows: &[IntVector]) -> BigInt {
    let n = rows.len();
    let m = IntMatrix::from_rows(rows, n).expect("square row list");
    bareiss_det(m)
}

/// Integer normal vector of the hyperplane spanned by `k - 1` vectors in
/// `Z^k` (generalized cross product by cofactor expansion). Zero iff the
/// vectors are linearly dependent.
pub fn cofactor_normal(vectors: &[IntVector], k: usize) -> IntVector {
    debug_assert_eq!(vectors.len() + 1, k);
    (0..k)
        .map(|j| {
            let minor: Vec<IntVector> = vectors
                .iter()
                .map(|v| v.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = det_of_rows(&minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[BigInt], c: &BigInt) -> IntVector {
    a.iter().map(|x| x * c).collect()
}

/// Gcd of all entries (non-negative; zero for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the positive gcd of the entries.
pub fn primitive_part(v: &[BigInt]) -> Result<IntVector> {
    let g = content(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Machine-integer vector to `IntVector`.
pub fn ivec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn abs_det_rows(rows: &[IntVector]) -> BigInt {
    det_of_rows(rows).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_part_examples() {
        assert_eq!(primitive_part(&ivec(&[2, 4, 6])).unwrap(), ivec(&[1, 2, 3]));
        assert_eq!(primitive_part(&ivec(&[1, 0, 0])).unwrap(), ivec(&[1, 0, 0]));
        let p = primitive_part(&ivec(&[-3, 6])).unwrap();
        assert_eq!(p, ivec(&[-1, 2]));
        assert_eq!(content(&p), BigInt::one());
        assert_eq!(primitive_part(&ivec(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(exact_det(&IntMatrix::identity(3)).unwrap(), BigInt::one());
        assert_eq!(exact_det(&IntMatrix::from_i64_rows(&[&[1, 1], &[0, 2]])).unwrap(), BigInt::from(2));
        let key = IntMatrix::from_i64_rows(&[&[1, 1, 1, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(exact_det(&key).unwrap(), BigInt::one());
        assert!(matches!(
            exact_det(&IntMatrix::from_i64_rows(&[&[1, 2, 3]])),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = IntMatrix::from_i64_rows(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 5]]);
        // expansion along the second row: -3 * (2*5 - 1*1)
        assert_eq!(exact_det(&m).unwrap(), BigInt::from(-27));
        let singular = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(exact_det(&singular).unwrap().is_zero());
    }

    #[test]
    fn cofactor_normal_is_orthogonal() {
        let vs = vec![ivec(&[1, 0, 2]), ivec(&[0, 1, 3])];
        let n = cofactor_normal(&vs, 3);
        for v in &vs {
            assert!(dot(&n, v).is_zero());
        }
        assert_eq!(cofactor_normal(&[], 1), ivec(&[1]));
    }
}
