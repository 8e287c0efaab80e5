//! Pointed rational polyhedral cones: duals, multiplicities, Gorenstein
//! functional and Hilbert bases.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::lp::{has_nontrivial_zero_combination, in_cone};
use crate::lattice::matrix::{cofactor_normal, dot, primitive_part, sub};
use crate::lattice::{
    affine_lattice_basis, elementary_divisors, smith_normal_form, solve_rational, AffineLatticeBasis, IntMatrix,
    IntVector,
};
use crate::polytope::LatticePolytope;

/// Pointed cone spanned by primitive, pairwise non-proportional rays.
#[derive(Clone)]
pub struct RationalCone {
    generators: Vec<IntVector>,
    linear: AffineLatticeBasis,
    local: Vec<IntVector>,
    facets: OnceLock<Vec<(IntVector, Vec<usize>)>>,
}

impl std::fmt::Debug for RationalCone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gs: Vec<Vec<String>> =
            self.generators.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        f.debug_struct("RationalCone").field("generators", &gs).finish()
    }
}

impl PartialEq for RationalCone {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for RationalCone {}

/// Dual of a possibly lower-dimensional cone: `cone(rays) + span(lineality)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualDescription {
    pub rays: Vec<IntVector>,
    pub lineality: Vec<IntVector>,
}

impl RationalCone {
    /// Cone spanned by `gens`. Generators are made primitive and redundant
    /// ones are dropped.
    pub fn new(gens: &[IntVector]) -> Result<Self> {
        let first = gens.first().ok_or(Error::Empty("generator list"))?;
        let d = first.len();
        let mut prim = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: g.len() });
            }
            prim.push(primitive_part(g)?);
        }
        prim.sort();
        prim.dedup();
        if has_nontrivial_zero_combination(&prim) {
            return Err(Error::NotPointed);
        }
        let mut keep = prim.clone();
        let mut i = 0;
        while i < keep.len() {
            let others: Vec<IntVector> =
                keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            if in_cone(&keep[i], &others) {
                keep.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(Self::from_rays(keep))
    }

    fn from_rays(mut generators: Vec<IntVector>) -> Self {
        generators.sort();
        let d = generators[0].len();
        let mut pts = vec![vec![BigInt::zero(); d]];
        pts.extend(generators.iter().cloned());
        let linear = affine_lattice_basis(&pts).expect("nonempty");
        let local = generators.iter().map(|g| linear.to_local(g).expect("generator in span")).collect();
        RationalCone { generators, linear, local, facets: OnceLock::new() }
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.linear.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn is_simplicial(&self) -> bool {
        self.generators.len() == self.dim()
    }

    /// Inner facet normals in local coordinates, with the generators on
    /// each facet.
    fn local_facets(&self) -> &[(IntVector, Vec<usize>)] {
        self.facets.get_or_init(|| cone_facets(&self.local, self.dim()))
    }

    /// Whether the integer point `x` lies in the cone.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        match self.linear.to_local(x) {
            Some(c) => self.contains_local(&c),
            None => false,
        }
    }

    fn contains_local(&self, c: &[BigInt]) -> bool {
        self.local_facets().iter().all(|(n, _)| !dot(n, c).is_negative())
    }

    /// Rays and lineality space of the dual cone.
    pub fn dual_description(&self) -> DualDescription {
        let mut rays: Vec<IntVector> =
            self.local_facets().iter().map(|(n, _)| self.linear.lift_functional(n)).collect();
        rays.sort();
        DualDescription { rays, lineality: self.linear.equations().to_vec() }
    }

    /// The dual cone; requires a full-dimensional cone so that the dual is
    /// pointed.
    pub fn dual_cone(&self) -> Result<RationalCone> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        Ok(RationalCone::from_rays(self.dual_description().rays))
    }

    /// Index of the sublattice generated by the rays in the lattice of
    /// their span.
    pub fn multiplicity(&self) -> Result<BigInt> {
        if !self.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        let m = IntMatrix::from_rows(&self.generators, self.ambient_dim())?;
        Ok(elementary_divisors(&m).into_iter().filter(|x| !x.is_zero()).product())
    }

    /// The primitive functional taking value 1 on every generator, if one
    /// exists (the Gorenstein condition). A single ray is Gorenstein.
    pub fn gorenstein_functional(&self) -> Option<IntVector> {
        let k = self.dim();
        let a = IntMatrix::from_rows(&self.local, k).ok()?.to_rational();
        let ones = vec![BigRational::one(); self.local.len()];
        let m = solve_rational(&a, &ones).ok()?.unique()?;
        if !m.iter().all(|x| x.is_integer()) {
            return None;
        }
        let m: IntVector = m.into_iter().map(|x| x.to_integer()).collect();
        Some(self.linear.lift_functional(&m))
    }

    /// The minimal generating set of the monoid of lattice points, sorted.
    pub fn hilbert_basis(&self) -> Vec<IntVector> {
        let k = self.dim();
        let mut candidates: BTreeSet<IntVector> = self.local.iter().cloned().collect();
        for simplex in simplicial_pieces(&self.local, k) {
            let gens: Vec<IntVector> = simplex.iter().map(|&i| self.local[i].clone()).collect();
            candidates.extend(parallelepiped_points(&gens, k));
        }
        candidates.retain(|c| c.iter().any(|x| !x.is_zero()));
        let cands: Vec<IntVector> = candidates.into_iter().collect();
        let irreducible: Vec<&IntVector> = cands
            .iter()
            .filter(|x| !cands.iter().any(|y| y != *x && self.contains_local(&sub(x, y))))
            .collect();
        let mut out: Vec<IntVector> = irreducible.into_iter().map(|c| self.linear.from_local(c)).collect();
        out.sort();
        out
    }

    /// Number of Hilbert basis elements of the dual cone, i.e. the minimal
    /// number of generators of the semigroup algebra of the cone.
    pub fn embedding_dimension(&self) -> Result<usize> {
        Ok(self.dual_cone()?.hilbert_basis().len())
    }
}

/// The cone over a slice polytope; its rays are the vertices.
pub fn cone_over(p: &LatticePolytope) -> Result<RationalCone> {
    if !p.is_slice() {
        return Err(Error::NotSlice);
    }
    Ok(RationalCone::from_rays(p.vertices().to_vec()))
}

/// Inner facet normals (primitive) of the full-dimensional cone spanned by
/// `gens` in `Z^k`, with the generators lying on each facet.
pub(crate) fn cone_facets(gens: &[IntVector], k: usize) -> Vec<(IntVector, Vec<usize>)> {
    let n = gens.len();
    let mut out: Vec<(IntVector, Vec<usize>)> = Vec::new();
    if k == 0 || n + 1 < k {
        return out;
    }
    let s = k - 1;
    let mut tight_sets: Vec<Vec<bool>> = Vec::new();
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        if !tight_sets.iter().any(|t| idx.iter().all(|&i| t[i])) {
            let vs: Vec<IntVector> = idx.iter().map(|&i| gens[i].clone()).collect();
            if let Ok(mut a) = primitive_part(&cofactor_normal(&vs, k)) {
                let vals: Vec<BigInt> = gens.iter().map(|g| dot(&a, g)).collect();
                let pos = vals.iter().any(|v| v.is_positive());
                let neg = vals.iter().any(|v| v.is_negative());
                if !(pos && neg) {
                    if neg {
                        a.iter_mut().for_each(|x| *x = -&*x);
                    }
                    let tight: Vec<bool> = vals.iter().map(|v| v.is_zero()).collect();
                    out.push((a, (0..n).filter(|&i| tight[i]).collect()));
                    tight_sets.push(tight);
                }
            }
        }
        let mut i = s;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if idx[i] < n - s + i {
                idx[i] += 1;
                for j in i + 1..s {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Splits the full-dimensional pointed cone spanned by `gens` in `Z^k` into
/// simplicial cones on its generators (pulling the first generator
/// recursively). Returns generator index sets.
pub(crate) fn simplicial_pieces(gens: &[IntVector], k: usize) -> Vec<Vec<usize>> {
    if gens.len() == k {
        return vec![(0..k).collect()];
    }
    let mut out = Vec::new();
    for (_, on_facet) in cone_facets(gens, k) {
        if on_facet.contains(&0) {
            continue;
        }
        let sub_gens: Vec<IntVector> = on_facet.iter().map(|&i| gens[i].clone()).collect();
        let mut pts = vec![vec![BigInt::zero(); k]];
        pts.extend(sub_gens.iter().cloned());
        let span = affine_lattice_basis(&pts).expect("nonempty");
        let local: Vec<IntVector> = sub_gens.iter().map(|g| span.to_local(g).expect("in span")).collect();
        for piece in simplicial_pieces(&local, k - 1) {
            let mut cell: Vec<usize> = piece.iter().map(|&j| on_facet[j]).collect();
            cell.push(0);
            cell.sort();
            out.push(cell);
        }
    }
    out
}

/// Lattice points `sum l_i g_i` with `0 <= l_i < 1`, for linearly
/// independent `g_1..g_k` in `Z^k`.
pub(crate) fn parallelepiped_points(gens: &[IntVector], k: usize) -> Vec<IntVector> {
    let g = IntMatrix::from_rows(gens, k).expect("square generator matrix");
    let snf = smith_normal_form(&g);
    // Z^k / (Z^k g) has representatives r * right_inv with 0 <= r_i < d_i
    let gt = g.transpose().to_rational();
    let mut out = Vec::new();
    let d = snf.divisors.clone();
    let zero = vec![BigInt::zero(); k];
    let hi: Vec<BigInt> = d.iter().map(|x| x - 1).collect();
    crate::polytope::for_each_box_point(&zero, &hi, |r| {
        let x: IntVector =
            (0..k).map(|j| (0..k).map(|i| &r[i] * &snf.right_inv[(i, j)]).sum::<BigInt>()).collect();
        let rx: Vec<BigRational> = x.iter().map(|v| BigRational::from_integer(v.clone())).collect();
        let lambda = solve_rational(&gt, &rx).expect("shapes").unique().expect("independent generators");
        let mut y = x;
        for (l, gi) in lambda.iter().zip(gens) {
            let f = l.numer().div_floor(l.denom());
            if !f.is_zero() {
                for (yj, gj) in y.iter_mut().zip(gi) {
                    *yj -= &f * gj;
                }
            }
        }
        out.push(y);
    });
    out
}
