//! Free-parameter sequences and the polytopes they build, plus the special
//! families (hypersurface simplices, boxes, zonotopes, del Pezzo type Fano
//! polytopes).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::matrix::{dot, ivec, sub};
use crate::lattice::{abs_det_rows, IntVector};
use crate::polytope::{hull_vertices, Halfspace, LatticePolytope};

/// Lower-triangular parameter matrix: `d - 1` rows of length `d`, where row
/// `i` (1-based) may only be nonzero in its first `i` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeParameterSequence {
    d: usize,
    rows: Vec<IntVector>,
}

impl FreeParameterSequence {
    pub fn new(d: usize, rows: Vec<IntVector>) -> Result<Self> {
        if d == 0 {
            return Err(Error::MalformedSequence("d must be at least 1".into()));
        }
        if rows.len() != d - 1 {
            return Err(Error::MalformedSequence(format!("expected {} rows for d = {d}, got {}", d - 1, rows.len())));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != d {
                return Err(Error::MalformedSequence(format!("row {} has length {}, expected {d}", i + 1, r.len())));
            }
            if let Some(j) = (i + 1..d).find(|&j| !r[j].is_zero()) {
                return Err(Error::MalformedSequence(format!(
                    "row {} has a nonzero entry in column {} above the diagonal",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(FreeParameterSequence { d, rows })
    }

    pub fn from_i64(d: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::new(d, rows.iter().map(|r| ivec(r)).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    /// `m_{i,j}` with 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i - 1][j - 1]
    }

    /// Ok when every row is nonzero and each row functional is nonnegative
    /// on the polytope built from the previous rows; otherwise the first
    /// violation.
    pub fn check_admissible(&self) -> Result<()> {
        self.build_stages().map(|_| ())
    }

    pub fn is_admissible(&self) -> bool {
        self.check_admissible().is_ok()
    }

    /// The polytope `P_m^(d)` in the slice `x_1 = 1` of `Z^d`.
    pub fn build(&self) -> Result<LatticePolytope> {
        Ok(self.build_stages()?.pop().expect("at least one stage"))
    }

    /// All stages `P^(1), ..., P^(d)`, each embedded in `Z^d`.
    pub fn build_stages(&self) -> Result<Vec<LatticePolytope>> {
        let d = self.d;
        let mut start = vec![BigInt::zero(); d];
        start[0] = BigInt::one();
        let mut stages = vec![LatticePolytope::from_vertices_unchecked(vec![start])];
        for (i, row) in self.rows.iter().enumerate() {
            if row.iter().all(Zero::is_zero) {
                return Err(Error::ZeroRow { row: i + 1 });
            }
            let prev = stages.last().expect("nonempty");
            let mut cands = prev.vertices().to_vec();
            for v in prev.vertices() {
                let val = dot(row, v);
                if val.is_negative() {
                    return Err(Error::Inadmissible { row: i + 1, vertex: v.clone() });
                }
                let mut lifted = v.clone();
                lifted[i + 1] = val;
                cands.push(lifted);
            }
            stages.push(hull_vertices(&cands)?);
        }
        Ok(stages)
    }

    /// The inequalities `0 <= x_{j+1} <= <m_j, x>` (homogeneous, valid
    /// together with `x_1 = 1`).
    pub fn hrep(&self) -> Result<Vec<Halfspace>> {
        self.check_admissible()?;
        let d = self.d;
        let mut out = Vec::with_capacity(2 * (d - 1));
        for (j, row) in self.rows.iter().enumerate() {
            let mut lower = vec![BigInt::zero(); d];
            lower[j + 1] = -BigInt::one();
            out.push(Halfspace { normal: lower, rhs: BigInt::zero() });
            let mut upper: IntVector = row.iter().map(|x| -x).collect();
            upper[j + 1] += 1;
            out.push(Halfspace { normal: upper, rhs: BigInt::zero() });
        }
        Ok(out)
    }

    /// Splits off the last row: the sequence of the base polytope in
    /// `Z^{d-1}` and the cutting functional `lambda`.
    pub fn reduce(&self) -> Result<(FreeParameterSequence, IntVector)> {
        self.check_admissible()?;
        let d = self.d;
        if d == 1 {
            return Err(Error::Invalid("a point cannot be reduced".into()));
        }
        let rows: Vec<IntVector> = self.rows[..d - 2].iter().map(|r| r[..d - 1].to_vec()).collect();
        let lambda = self.rows[d - 2][..d - 1].to_vec();
        Ok((FreeParameterSequence { d: d - 1, rows }, lambda))
    }
}

/// `(Q x R_{>=0}) ∩ { x_d <= <lambda, x> }` for a slice polytope `Q` in
/// `Z^{d-1}` and `lambda` nonnegative on `Q`.
pub fn prism_and_cut(q: &LatticePolytope, lambda: &[BigInt]) -> Result<LatticePolytope> {
    let mut cands = Vec::with_capacity(2 * q.vertices().len());
    for v in q.vertices() {
        let h = dot(lambda, v);
        if h.is_negative() {
            return Err(Error::NegativeFunctional);
        }
        let mut base = v.clone();
        base.push(BigInt::zero());
        let mut top = v.clone();
        top.push(h);
        cands.push(base);
        cands.push(top);
    }
    hull_vertices(&cands)
}

fn slice_point(y: &[BigInt]) -> IntVector {
    let mut v = Vec::with_capacity(y.len() + 1);
    v.push(BigInt::one());
    v.extend(y.iter().cloned());
    v
}

fn unit(n: usize, i: usize) -> IntVector {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// `conv(e_1, e_1 + k e_2, ..., e_1 + k (e_2 + ... + e_d))`.
pub fn hypersurface_simplex(d: usize, k: i64) -> LatticePolytope {
    let k = BigInt::from(k);
    let vs = (0..d)
        .map(|j| {
            let y: IntVector = (1..d).map(|i| if i <= j { k.clone() } else { BigInt::zero() }).collect();
            slice_point(&y)
        })
        .collect();
    LatticePolytope::from_vertices_unchecked(vs)
}

/// Sequence with `m_{1,1} = k`, `m_{i,i} = 1` for `i >= 2`.
pub fn hypersurface_sequence(d: usize, k: i64) -> FreeParameterSequence {
    let rows = (1..d)
        .map(|i| {
            let mut r = vec![BigInt::zero(); d];
            r[i - 1] = if i == 1 { BigInt::from(k) } else { BigInt::one() };
            r
        })
        .collect();
    FreeParameterSequence::new(d, rows).expect("lower triangular")
}

/// The box `{1} x [0, k_1] x ... x [0, k_{d-1}]`.
pub fn rp_polytope(ks: &[i64]) -> LatticePolytope {
    let n = ks.len();
    let mut vs = Vec::with_capacity(1 << n);
    for mask in 0u64..(1u64 << n) {
        let y: IntVector =
            (0..n).map(|i| if mask >> i & 1 == 1 { BigInt::from(ks[i]) } else { BigInt::zero() }).collect();
        vs.push(slice_point(&y));
    }
    LatticePolytope::from_vertices_unchecked(vs)
}

/// Sequence with `m_{i,1} = k_i` and zeros elsewhere.
pub fn rp_sequence(ks: &[i64]) -> FreeParameterSequence {
    let d = ks.len() + 1;
    let rows = ks
        .iter()
        .map(|&k| {
            let mut r = vec![BigInt::zero(); d];
            r[0] = BigInt::from(k);
            r
        })
        .collect();
    FreeParameterSequence::new(d, rows).expect("lower triangular")
}

/// `conv([-1,0]^{d-1} ∪ [0,1]^{d-1})` in the slice `x_1 = 1`.
pub fn zonotope(d: usize) -> LatticePolytope {
    let n = d - 1;
    let mut cands = Vec::new();
    for mask in 0u64..(1u64 << n) {
        for sign in [1i64, -1] {
            let y: IntVector = (0..n).map(|i| BigInt::from(if mask >> i & 1 == 1 { sign } else { 0 })).collect();
            cands.push(slice_point(&y));
        }
    }
    hull_vertices(&cands).expect("nonempty")
}

/// Polar of a slice polytope whose only interior lattice point is `e_1`,
/// computed from its facets and placed back in the slice `x_1 = 1`. Fails
/// unless `e_1` is interior and the polar is a lattice polytope.
pub fn polar(p: &LatticePolytope) -> Result<LatticePolytope> {
    let d = p.ambient_dim();
    if !p.is_slice() || p.dim() + 1 != d {
        return Err(Error::Invalid("polar needs a full-dimensional slice polytope".into()));
    }
    let mut vs = Vec::new();
    for h in p.facets() {
        // n_0 + <n', y> <= 0 becomes <n', y> <= -n_0
        let r = -&h.normal[0];
        if !r.is_positive() {
            return Err(Error::Invalid("e_1 is not an interior point".into()));
        }
        let mut y = Vec::with_capacity(d - 1);
        for x in &h.normal[1..] {
            let (q, rem) = x.div_rem(&r);
            if !rem.is_zero() {
                return Err(Error::Invalid("polar is not a lattice polytope".into()));
            }
            y.push(q);
        }
        vs.push(slice_point(&y));
    }
    Ok(LatticePolytope::from_vertices_unchecked(vs))
}

/// The polar of [`zonotope`]: vertices `±e_i` and `±(e_i - e_j)`.
pub fn zonotope_polar(d: usize) -> LatticePolytope {
    polar(&zonotope(d)).expect("the zonotope is reflexive")
}

/// `conv(e_1 ± e_j (2 <= j <= d), e_1 ± (e_2 + ... + e_d))` for odd `d >= 3`.
pub fn delpezzo_polytope(d: usize) -> Result<LatticePolytope> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Invalid(format!("del Pezzo polytope needs odd d >= 3, got {d}")));
    }
    let n = d - 1;
    let mut vs = Vec::new();
    for i in 0..n {
        let e = unit(n, i);
        vs.push(slice_point(&e));
        vs.push(slice_point(&e.iter().map(|x| -x).collect::<Vec<_>>()));
    }
    vs.push(slice_point(&vec![BigInt::one(); n]));
    vs.push(slice_point(&vec![-BigInt::one(); n]));
    Ok(LatticePolytope::from_vertices_unchecked(vs))
}

/// Exactly one relative-interior lattice point `n_0`, and for every facet
/// the vertices together with `n_0` form an affine lattice basis (so each
/// facet is a simplex with `dim P` vertices).
pub fn is_fano(p: &LatticePolytope) -> bool {
    fano_center(p).is_some()
}

/// The interior point `n_0` when [`is_fano`] holds.
pub fn fano_center(p: &LatticePolytope) -> Option<IntVector> {
    if p.dim() == 0 {
        return None;
    }
    let interior = p.interior_points();
    if interior.len() != 1 {
        return None;
    }
    let n0 = interior.into_iter().next().expect("one point");
    let aff = p.affine_basis();
    let c0 = aff.to_local(&n0).expect("interior point on hull");
    for f in p.facet_data() {
        if f.vertices.len() != p.dim() {
            return None;
        }
        let rows: Vec<IntVector> = f.vertices.iter().map(|&i| sub(&p.local_vertices()[i], &c0)).collect();
        if !abs_det_rows(&rows).is_one() {
            return None;
        }
    }
    Some(n0)
}

/// Every facet hyperplane, in the slice coordinates `x_2..x_d`, has the
/// form `x_i = κ` or `x_i - x_j = κ`. Only defined for full-dimensional
/// slice polytopes; anything else gives `false`.
pub fn is_hd_compatible(p: &LatticePolytope) -> bool {
    let d = p.ambient_dim();
    if !p.is_slice() || p.dim() + 1 != d {
        return false;
    }
    p.facets().iter().all(|h| {
        let n = &h.normal[1..];
        let nonzero: Vec<&BigInt> = n.iter().filter(|x| !x.is_zero()).collect();
        match nonzero.as_slice() {
            [a] => a.abs().is_one(),
            [a, b] => a.abs().is_one() && (*a + *b).is_zero(),
            _ => false,
        }
    })
}
