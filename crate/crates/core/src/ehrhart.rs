//! Lattice-point counts of dilations, Ehrhart polynomials, δ-vectors and
//! the cohomology dimensions of crepant resolutions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::matrix::dot;
use crate::lattice::{solve_rational, RatMatrix};
use crate::nakajima::FreeParameterSequence;
use crate::polytope::{bounding_box, for_each_box_point, LatticePolytope};

/// Ehrhart polynomial coefficients `a_0..a_k` and δ-vector `δ_0..δ_k` of a
/// `k`-dimensional lattice polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartData {
    pub dim: usize,
    pub coefficients: Vec<BigRational>,
    pub delta: Vec<BigInt>,
}

impl EhrhartData {
    pub fn evaluate(&self, nu: u64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(nu));
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, a| acc * &x + a)
    }
}

/// `#(nu P ∩ Z^d)`, counted in the affine lattice of `P`.
pub fn count_points(p: &LatticePolytope, nu: u64) -> BigInt {
    if nu == 0 {
        return BigInt::one();
    }
    let nu = BigInt::from(nu);
    let k = p.dim();
    let (lo, hi) = bounding_box(p.local_vertices(), k);
    let lo: Vec<BigInt> = lo.iter().map(|x| x * &nu).collect();
    let hi: Vec<BigInt> = hi.iter().map(|x| x * &nu).collect();
    let facets: Vec<(&[BigInt], BigInt)> =
        p.facet_data().iter().map(|f| (f.local_normal.as_slice(), &f.local_rhs * &nu)).collect();
    let mut count = BigInt::zero();
    for_each_box_point(&lo, &hi, |c| {
        if facets.iter().all(|(a, r)| &dot(a, c) <= r) {
            count += 1;
        }
    });
    count
}

/// Interpolates the Ehrhart polynomial through `nu = 0..=dim` and checks it
/// against direct counts at `dim + 1` and `dim + 2`.
pub fn ehrhart_polynomial(p: &LatticePolytope) -> Result<EhrhartData> {
    let k = p.dim();
    let counts: Vec<BigInt> = (0..=k as u64 + 2).map(|nu| count_points(p, nu)).collect();
    let mut vander = RatMatrix::zeros(k + 1, k + 1);
    for nu in 0..=k {
        let mut pw = BigInt::one();
        for j in 0..=k {
            vander[(nu, j)] = BigRational::from_integer(pw.clone());
            pw *= nu;
        }
    }
    let rhs: Vec<BigRational> = counts[..=k].iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let coefficients = solve_rational(&vander, &rhs)?.unique().expect("Vandermonde matrix is invertible");
    let delta = delta_vector(&coefficients, k)?;
    let data = EhrhartData { dim: k, coefficients, delta };
    for nu in [k as u64 + 1, k as u64 + 2] {
        if data.evaluate(nu) != BigRational::from_integer(counts[nu as usize].clone()) {
            return Err(Error::InterpolationMismatch { nu });
        }
    }
    Ok(data)
}

/// `n choose r`, zero when `r > n` or `n < 0`.
pub fn binomial(n: i64, r: i64) -> BigInt {
    if r < 0 || n < 0 || r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

// x^e with 0^0 = 1
fn power(x: i64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(x), e)
}

/// `δ_j = Σ_i (Σ_{ξ=0}^{j} (-1)^ξ C(k+1, ξ) (j-ξ)^i) a_i` for `j = 0..=k`.
pub fn delta_vector(coefficients: &[BigRational], k: usize) -> Result<Vec<BigInt>> {
    weighted_transform(coefficients, k, k + 1)
}

fn weighted_transform(coefficients: &[BigRational], k: usize, n: usize) -> Result<Vec<BigInt>> {
    (0..=k)
        .map(|j| {
            let mut total = BigRational::zero();
            for (i, a) in coefficients.iter().enumerate() {
                let mut w = BigInt::zero();
                for xi in 0..=j {
                    let term = binomial(n as i64, xi as i64) * power((j - xi) as i64, i);
                    if xi % 2 == 0 {
                        w += term;
                    } else {
                        w -= term;
                    }
                }
                total += BigRational::from_integer(w) * a;
            }
            if !total.is_integer() {
                return Err(Error::NonIntegralDelta { index: j, value: total.to_string() });
            }
            Ok(total.to_integer())
        })
        .collect()
}

/// Evaluates the nested sum over `0 <= μ_j <= m_{j,1} ν + Σ_{κ=2}^{j} m_{j,κ} μ_{κ-1}`.
pub fn ehrhart_nakajima(m: &FreeParameterSequence, nu: u64) -> Result<BigInt> {
    m.check_admissible()?;
    let mut x = vec![BigInt::from(nu)];
    Ok(nested_sum(m.rows(), &mut x))
}

fn nested_sum(rows: &[Vec<BigInt>], x: &mut Vec<BigInt>) -> BigInt {
    let j = x.len() - 1;
    if j == rows.len() {
        return BigInt::one();
    }
    let bound = dot(&rows[j][..x.len()], x);
    if bound.is_negative() {
        return BigInt::zero();
    }
    if j + 1 == rows.len() {
        return bound + 1;
    }
    let mut total = BigInt::zero();
    let mut mu = BigInt::zero();
    while mu <= bound {
        x.push(mu.clone());
        total += nested_sum(rows, x);
        x.pop();
        mu += 1;
    }
    total
}

/// Closed-form Ehrhart coefficients `a_0..a_{d-1}` of `P_m^(d)` for
/// `d <= 4`; `None` for larger `d`.
pub fn ehrhart_closed_form(m: &FreeParameterSequence) -> Option<Vec<BigRational>> {
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let e = |i: usize, j: usize| BigRational::from_integer(m.entry(i, j).clone());
    let one = BigRational::one();
    match m.d() {
        1 => Some(vec![one]),
        2 => Some(vec![one, e(1, 1)]),
        3 => {
            let (m11, m21, m22) = (e(1, 1), e(2, 1), e(2, 2));
            let a2 = q(1, 2) * &m22 * &m11 * &m11 + &m21 * &m11;
            let a1 = &m11 + q(1, 2) * &m22 * &m11 + &m21;
            Some(vec![one, a1, a2])
        }
        4 => {
            let (m11, m21, m22) = (e(1, 1), e(2, 1), e(2, 2));
            let (m31, m32, m33) = (e(3, 1), e(3, 2), e(3, 3));
            let m11_2 = &m11 * &m11;
            let m11_3 = &m11_2 * &m11;
            let a3 = &m31 * &m21 * &m11
                + q(1, 2) * &m32 * &m21 * &m11_2
                + q(1, 2) * &m33 * &m21 * &m21 * &m11
                + q(1, 6) * &m33 * &m22 * &m22 * &m11_3
                + q(1, 2) * &m33 * &m22 * &m21 * &m11_2
                + q(1, 2) * &m31 * &m22 * &m11_2
                + q(1, 3) * &m32 * &m22 * &m11_3;
            let a2 = &m21 * &m11
                + q(1, 2) * &m33 * &m21 * &m21
                + q(1, 2) * &m31 * &m22 * &m11
                + q(1, 4) * &m33 * &m22 * &m22 * &m11_2
                + &m31 * &m21
                + q(1, 2) * &m22 * &m11_2
                + q(1, 2) * &m32 * &m11_2
                + q(1, 2) * &m32 * &m22 * &m11_2
                + q(1, 4) * &m33 * &m22 * &m11_2
                + q(1, 2) * &m33 * &m21 * &m11
                + &m31 * &m11
                + q(1, 2) * &m32 * &m21 * &m11
                + q(1, 2) * &m33 * &m22 * &m21 * &m11;
            let a1 = q(1, 2) * &m32 * &m11
                + &m21
                + &m11
                + q(1, 2) * &m33 * &m21
                + q(1, 2) * &m22 * &m11
                + &m31
                + q(1, 12) * &m33 * &m22 * &m22 * &m11
                + q(1, 6) * &m32 * &m22 * &m11
                + q(1, 4) * &m33 * &m22 * &m11;
            Some(vec![one, a1, a2, a3])
        }
        _ => None,
    }
}

/// Dimensions of the even cohomology groups of a crepant full resolution:
/// the δ-vector, padded with zeros to `d` entries.
pub fn cohomology_dims(p: &LatticePolytope) -> Result<Vec<BigInt>> {
    let mut delta = ehrhart_polynomial(p)?.delta;
    delta.resize(p.ambient_dim().max(delta.len()), BigInt::zero());
    Ok(delta)
}

/// `Σ_{i=0}^{j} (-1)^i C(d, i) C(k(j-i) + d - 1, d - 1)` for `j = 0..d-1`.
pub fn hypersurface_cohomology(d: usize, k: i64) -> Vec<BigInt> {
    let d = d as i64;
    (0..d)
        .map(|j| {
            (0..=j).fold(BigInt::zero(), |acc, i| {
                let term = binomial(d, i) * binomial(k * (j - i) + d - 1, d - 1);
                if i % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// Elementary symmetric polynomials `s_0 = 1, s_1, ..., s_n` of `ks`.
pub fn elementary_symmetric(ks: &[i64]) -> Vec<BigInt> {
    let mut s = vec![BigInt::one()];
    for &k in ks {
        let k = BigInt::from(k);
        let mut next = s.clone();
        next.push(BigInt::zero());
        for i in 1..next.len() {
            next[i] += &s[i - 1] * &k;
        }
        s = next;
    }
    s
}

/// Cohomology dimensions for the box `RP(k_1, ..., k_{d-1})`, from the
/// elementary symmetric polynomials of the `k_i`.
pub fn rp_cohomology(ks: &[i64]) -> Vec<BigInt> {
    let s: Vec<BigRational> = elementary_symmetric(ks).into_iter().map(BigRational::from_integer).collect();
    weighted_transform(&s, ks.len(), ks.len() + 1).expect("integer coefficients")
}
