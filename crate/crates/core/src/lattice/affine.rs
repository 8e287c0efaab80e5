use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::{dot, sub, IntMatrix, IntVector};
use super::normal_form::{hermite_rows, integer_kernel, pivot_columns, reduce_modulo, smith_normal_form};
use crate::error::{Error, Result};

/// The affine lattice `aff(points) ∩ Z^d`, written as `origin + Z basis`.
///
/// The basis is saturated and kept in Hermite form, so it only depends on
/// the affine hull and not on how the points were listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLatticeBasis {
    pub origin: IntVector,
    pub basis: Vec<IntVector>,
    pivots: Vec<usize>,
    // integer basis of the vectors annihilating every basis vector,
    // echelonized from the right
    annihilator: Vec<IntVector>,
    // n = lift * (a, 0) solves <n, basis_i> = a_i
    lift: IntMatrix,
}

/// Computes the saturated affine lattice spanned by `points`, with the
/// first point as origin.
pub fn affine_lattice_basis(points: &[IntVector]) -> Result<AffineLatticeBasis> {
    let origin = points.first().ok_or(Error::Empty("point list"))?.clone();
    let d = origin.len();
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.len() });
        }
    }
    let diffs: Vec<IntVector> = points[1..].iter().map(|p| sub(p, &origin)).collect();
    let basis = if diffs.is_empty() {
        Vec::new()
    } else {
        let m = IntMatrix::from_rows(&diffs, d)?;
        let snf = smith_normal_form(&m);
        let sat: Vec<IntVector> = (0..snf.rank).map(|i| snf.right_inv.row_vec(i)).collect();
        if sat.is_empty() {
            sat
        } else {
            hermite_rows(&IntMatrix::from_rows(&sat, d)?)
        }
    };
    Ok(AffineLatticeBasis::from_parts(origin, basis))
}

impl AffineLatticeBasis {
    fn from_parts(origin: IntVector, basis: Vec<IntVector>) -> Self {
        let d = origin.len();
        let k = basis.len();
        let pivots = pivot_columns(&basis);
        let (annihilator, lift) = if k == 0 {
            ((0..d).map(|i| unit(d, i)).collect(), IntMatrix::zeros(d, 0))
        } else {
            let b = IntMatrix::from_rows(&basis, d).expect("uniform basis");
            let snf = smith_normal_form(&b);
            debug_assert!(snf.divisors.iter().all(|x| x == &BigInt::from(1)));
            // n = Q (P a, 0): keep the first k columns of Q times P
            let mut q_head = IntMatrix::zeros(d, k);
            for i in 0..d {
                for j in 0..k {
                    q_head[(i, j)] = snf.right[(i, j)].clone();
                }
            }
            let lift = q_head.mul(&snf.left).expect("shapes agree");
            (integer_kernel(&b), lift)
        };
        let annihilator = right_echelon(&annihilator, d);
        AffineLatticeBasis { origin, basis, pivots, annihilator, lift }
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Integer vectors `e` with `<e, x> = <e, origin>` on the affine hull.
    pub fn equations(&self) -> &[IntVector] {
        &self.annihilator
    }

    /// Whether the integer point `p` lies in the affine hull.
    pub fn contains(&self, p: &[BigInt]) -> bool {
        let v = sub(p, &self.origin);
        self.annihilator.iter().all(|e| dot(e, &v).is_zero())
    }

    /// Integer coordinates of `p - origin` in the basis, or `None` when `p`
    /// is not a lattice point of the affine hull.
    pub fn to_local(&self, p: &[BigInt]) -> Option<IntVector> {
        if p.len() != self.origin.len() {
            return None;
        }
        let mut v = sub(p, &self.origin);
        let mut c = Vec::with_capacity(self.basis.len());
        for (b, &piv) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = v[piv].div_rem(&b[piv]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x -= &q * y;
            }
            c.push(q);
        }
        v.iter().all(Zero::is_zero).then_some(c)
    }

    pub fn from_local(&self, c: &[BigInt]) -> IntVector {
        let mut p = self.origin.clone();
        for (ci, b) in c.iter().zip(&self.basis) {
            for (x, y) in p.iter_mut().zip(b) {
                *x += ci * y;
            }
        }
        p
    }

    /// Ambient integer functional `n` with `<n, basis_i> = a_i` for all `i`,
    /// reduced modulo the annihilator so the choice is canonical.
    pub fn lift_functional(&self, a: &[BigInt]) -> IntVector {
        debug_assert_eq!(a.len(), self.basis.len());
        let n = self.lift.mul_vec(a).expect("local functional length");
        reduce_modulo_right(&n, &self.annihilator)
    }
}

fn unit(d: usize, i: usize) -> IntVector {
    let mut v = vec![BigInt::zero(); d];
    v[i] = BigInt::from(1);
    v
}

fn reversed(v: &[BigInt]) -> IntVector {
    v.iter().rev().cloned().collect()
}

// Hermite form with pivots taken from the last column backwards.
fn right_echelon(rows: &[IntVector], d: usize) -> Vec<IntVector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let rev: Vec<IntVector> = rows.iter().map(|r| reversed(r)).collect();
    let m = IntMatrix::from_rows(&rev, d).expect("uniform rows");
    hermite_rows(&m).iter().map(|r| reversed(r)).collect()
}

fn reduce_modulo_right(v: &[BigInt], basis: &[IntVector]) -> IntVector {
    let rev: Vec<IntVector> = basis.iter().map(|r| reversed(r)).collect();
    reversed(&reduce_modulo(&reversed(v), &rev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::ivec;

    #[test]
    fn slice_triangle_saturates() {
        let pts = vec![ivec(&[1, 0, 0]), ivec(&[1, 2, 0]), ivec(&[1, 0, 2])];
        let a = affine_lattice_basis(&pts).unwrap();
        assert_eq!(a.origin, ivec(&[1, 0, 0]));
        assert_eq!(a.basis, vec![ivec(&[0, 1, 0]), ivec(&[0, 0, 1])]);
        assert_eq!(a.to_local(&ivec(&[1, 3, -1])), Some(ivec(&[3, -1])));
        assert_eq!(a.to_local(&ivec(&[2, 0, 0])), None);
        assert_eq!(a.equations(), &[ivec(&[1, 0, 0])]);
    }

    #[test]
    fn point_and_segment() {
        let a = affine_lattice_basis(&[ivec(&[1, 0])]).unwrap();
        assert!(a.basis.is_empty());
        assert_eq!(a.dim(), 0);
        let a = affine_lattice_basis(&[ivec(&[1, 0]), ivec(&[1, 3])]).unwrap();
        assert_eq!(a.basis, vec![ivec(&[0, 1])]);
        assert_eq!(a.to_local(&ivec(&[1, 2])), Some(ivec(&[2])));
        assert!(affine_lattice_basis(&[]).is_err());
    }

    #[test]
    fn lifted_functionals_restrict_correctly() {
        let pts = vec![ivec(&[1, 0, 0, 0]), ivec(&[1, 1, 1, 0]), ivec(&[1, 2, 0, 1])];
        let a = affine_lattice_basis(&pts).unwrap();
        for target in [ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-3, 5])] {
            let n = a.lift_functional(&target);
            let got: IntVector = a.basis.iter().map(|b| dot(&n, b)).collect();
            assert_eq!(got, target);
        }
        for p in &pts {
            assert!(a.contains(p));
            assert_eq!(&a.from_local(&a.to_local(p).unwrap()), p);
        }
    }
}
