//! Lattice polytopes given by their vertices, with lazily computed facets,
//! lattice points and normalized volume.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::lp::in_convex_hull;
use crate::lattice::matrix::{add, cofactor_normal, dot, primitive_part, sub};
use crate::lattice::{affine_lattice_basis, AffineLatticeBasis, IntVector};

/// `<normal, x> <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: IntVector,
    pub rhs: BigInt,
}

impl Halfspace {
    /// `rhs - <normal, x>`; nonnegative exactly on the halfspace.
    pub fn slack(&self, x: &[BigInt]) -> BigInt {
        &self.rhs - dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        !self.slack(x).is_negative()
    }
}

/// A facet together with its description in affine-lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub halfspace: Halfspace,
    /// Primitive normal in the local coordinates of the affine lattice.
    pub local_normal: IntVector,
    pub local_rhs: BigInt,
    /// Indices into the polytope's vertex list of the vertices on the facet.
    pub vertices: Vec<usize>,
}

pub struct LatticePolytope {
    vertices: Vec<IntVector>,
    affine: AffineLatticeBasis,
    local: Vec<IntVector>,
    facets: OnceLock<Vec<Facet>>,
    points: OnceLock<Vec<IntVector>>,
    volume: OnceLock<BigInt>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        LatticePolytope {
            vertices: self.vertices.clone(),
            affine: self.affine.clone(),
            local: self.local.clone(),
            facets: self.facets.clone(),
            points: self.points.clone(),
            volume: self.volume.clone(),
        }
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<Vec<String>> =
            self.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        f.debug_struct("LatticePolytope").field("vertices", &vs).finish()
    }
}

/// Convex hull of `points`: keeps exactly the extreme points.
pub fn hull_vertices(points: &[IntVector]) -> Result<LatticePolytope> {
    let first = points.first().ok_or(Error::Empty("point list"))?;
    let d = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: p.len() });
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let affine = affine_lattice_basis(&pts)?;
    let local: Vec<IntVector> =
        pts.iter().map(|p| affine.to_local(p).expect("point lies on its own hull")).collect();
    // midpoints of two other points are never vertices; this cheap pass
    // leaves far fewer points for the LP test
    let n = pts.len();
    let index: HashMap<&IntVector, usize> = local.iter().enumerate().map(|(i, q)| (q, i)).collect();
    let mut keep = vec![true; n];
    let two = BigInt::from(2);
    for i in 0..n {
        for j in i + 1..n {
            let sum = add(&local[i], &local[j]);
            if sum.iter().all(|x| x.is_even()) {
                let mid: IntVector = sum.iter().map(|x| x / &two).collect();
                if let Some(&m) = index.get(&mid) {
                    keep[m] = false;
                }
            }
        }
    }
    for i in 0..n {
        if !keep[i] {
            continue;
        }
        let others: Vec<IntVector> = (0..n).filter(|&j| j != i && keep[j]).map(|j| local[j].clone()).collect();
        keep[i] = !in_convex_hull(&local[i], &others);
    }
    let vertices: Vec<IntVector> =
        pts.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(p, _)| p).collect();
    Ok(LatticePolytope::from_vertices_unchecked(vertices))
}

impl LatticePolytope {
    /// Builds a polytope from points already known to be its vertices
    /// (distinct and extreme). The list is sorted.
    pub fn from_vertices_unchecked(mut vertices: Vec<IntVector>) -> Self {
        vertices.sort();
        vertices.dedup();
        let affine = affine_lattice_basis(&vertices).expect("nonempty vertex list");
        let local = vertices.iter().map(|v| affine.to_local(v).expect("vertex on hull")).collect();
        LatticePolytope {
            vertices,
            affine,
            local,
            facets: OnceLock::new(),
            points: OnceLock::new(),
            volume: OnceLock::new(),
        }
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.affine.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.affine.dim()
    }

    pub fn affine_basis(&self) -> &AffineLatticeBasis {
        &self.affine
    }

    /// Vertex coordinates in the affine lattice basis.
    pub fn local_vertices(&self) -> &[IntVector] {
        &self.local
    }

    /// All vertices satisfy `x_1 = 1`.
    pub fn is_slice(&self) -> bool {
        self.vertices.iter().all(|v| v.first().is_some_and(One::is_one))
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim() + 1
    }

    pub fn facet_data(&self) -> &[Facet] {
        self.facets.get_or_init(|| self.compute_facets())
    }

    /// Facet-defining halfspaces relative to the affine hull. For slice
    /// polytopes they are homogenized (`rhs = 0`), so the normals are the
    /// inner facet normals of the cone over the polytope, negated.
    pub fn facets(&self) -> Vec<Halfspace> {
        self.facet_data().iter().map(|f| f.halfspace.clone()).collect()
    }

    fn compute_facets(&self) -> Vec<Facet> {
        let slice = self.is_slice();
        let mut out: Vec<Facet> = enumerate_facets(&self.local, self.dim())
            .into_iter()
            .map(|(a, r, vertices)| {
                let mut normal = self.affine.lift_functional(&a);
                let mut rhs = &r + dot(&normal, &self.affine.origin);
                if slice {
                    normal[0] -= &rhs;
                    rhs = BigInt::zero();
                }
                Facet { halfspace: Halfspace { normal, rhs }, local_normal: a, local_rhs: r, vertices }
            })
            .collect();
        out.sort_by(|a, b| a.halfspace.cmp(&b.halfspace));
        out
    }

    /// Equations `<e, x> = c` cutting out the affine hull.
    pub fn equations(&self) -> Vec<Halfspace> {
        self.affine
            .equations()
            .iter()
            .map(|e| Halfspace { normal: e.clone(), rhs: dot(e, &self.affine.origin) })
            .collect()
    }

    /// Whether the integer point `x` lies in the polytope.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        match self.affine.to_local(x) {
            Some(c) => self.contains_local(&c),
            None => false,
        }
    }

    fn contains_local(&self, c: &[BigInt]) -> bool {
        self.facet_data().iter().all(|f| dot(&f.local_normal, c) <= f.local_rhs)
    }

    /// Whether `x` lies in the relative interior.
    pub fn contains_in_interior(&self, x: &[BigInt]) -> bool {
        match self.affine.to_local(x) {
            Some(c) => self.facet_data().iter().all(|f| dot(&f.local_normal, &c) < f.local_rhs),
            None => false,
        }
    }

    /// All lattice points, sorted lexicographically.
    pub fn lattice_points(&self) -> &[IntVector] {
        self.points.get_or_init(|| {
            let k = self.dim();
            let (lo, hi) = bounding_box(&self.local, k);
            let mut pts = Vec::new();
            for_each_box_point(&lo, &hi, |c| {
                if self.contains_local(c) {
                    pts.push(self.affine.from_local(c));
                }
            });
            pts.sort();
            pts
        })
    }

    /// Lattice points in the relative interior.
    pub fn interior_points(&self) -> Vec<IntVector> {
        self.lattice_points().iter().filter(|p| self.contains_in_interior(p)).cloned().collect()
    }

    /// Lattice points that are not vertices; for a slice polytope these
    /// index the exceptional divisors of a crepant resolution.
    pub fn exceptional_points(&self) -> Vec<IntVector> {
        self.lattice_points()
            .iter()
            .filter(|p| self.vertices.binary_search(p).is_err())
            .cloned()
            .collect()
    }

    /// `{ nu * x : x in P }`.
    pub fn dilate(&self, nu: i64) -> Result<LatticePolytope> {
        if nu <= 0 {
            return Err(Error::NonPositiveDilation(nu));
        }
        let f = BigInt::from(nu);
        let vs = self.vertices.iter().map(|v| v.iter().map(|x| x * &f).collect()).collect();
        Ok(LatticePolytope::from_vertices_unchecked(vs))
    }

    /// `dim(P)!` times the volume measured in the affine lattice.
    pub fn normalized_volume(&self) -> BigInt {
        self.volume.get_or_init(|| self.compute_volume()).clone()
    }

    fn compute_volume(&self) -> BigInt {
        if self.dim() == 0 {
            return BigInt::one();
        }
        if self.is_simplex() {
            return simplex_volume_local(&self.local);
        }
        // pyramids from the first vertex over the facets avoiding it
        let apex = &self.local[0];
        let mut total = BigInt::zero();
        for f in self.facet_data() {
            if f.vertices.contains(&0) {
                continue;
            }
            let height = &f.local_rhs - dot(&f.local_normal, apex);
            let fv: Vec<IntVector> = f.vertices.iter().map(|&i| self.vertices[i].clone()).collect();
            total += height * LatticePolytope::from_vertices_unchecked(fv).normalized_volume();
        }
        total
    }
}

/// `|det|` of the edge vectors of a full-dimensional simplex in local
/// coordinates (`k + 1` points in `Z^k`).
pub(crate) fn simplex_volume_local(pts: &[IntVector]) -> BigInt {
    let rows: Vec<IntVector> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
    crate::lattice::abs_det_rows(&rows)
}

pub(crate) fn bounding_box(pts: &[IntVector], k: usize) -> (IntVector, IntVector) {
    let mut lo = pts[0].clone();
    let mut hi = pts[0].clone();
    for p in pts {
        for i in 0..k {
            if p[i] < lo[i] {
                lo[i] = p[i].clone();
            }
            if p[i] > hi[i] {
                hi[i] = p[i].clone();
            }
        }
    }
    (lo, hi)
}

/// Visits every integer point of the box `[lo, hi]` in lexicographic order.
pub(crate) fn for_each_box_point<F: FnMut(&[BigInt])>(lo: &[BigInt], hi: &[BigInt], mut f: F) {
    let k = lo.len();
    if (0..k).any(|i| lo[i] > hi[i]) {
        return;
    }
    let mut cur = lo.to_vec();
    loop {
        f(&cur);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i].clone();
        }
    }
}

/// Facets of the full-dimensional hull of `points` in `Z^k`, as
/// `(primitive normal a, rhs r, tight point indices)` with `<a, x> <= r`
/// valid on all points. Brute force over affinely independent `k`-subsets.
pub(crate) fn enumerate_facets(points: &[IntVector], k: usize) -> Vec<(IntVector, BigInt, Vec<usize>)> {
    let n = points.len();
    let mut found: Vec<(IntVector, BigInt, Vec<usize>)> = Vec::new();
    if k == 0 {
        return found;
    }
    let mut tight_sets: Vec<Vec<bool>> = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if n < k {
        return found;
    }
    loop {
        let covered = tight_sets.iter().any(|t| idx.iter().all(|&i| t[i]));
        if !covered {
            let base = &points[idx[0]];
            let diffs: Vec<IntVector> = idx[1..].iter().map(|&i| sub(&points[i], base)).collect();
            let normal = cofactor_normal(&diffs, k);
            if let Ok(mut a) = primitive_part(&normal) {
                let mut r = dot(&a, base);
                let vals: Vec<BigInt> = points.iter().map(|p| dot(&a, p)).collect();
                let above = vals.iter().any(|v| v > &r);
                let below = vals.iter().any(|v| v < &r);
                if !(above && below) {
                    let tight: Vec<bool> = vals.iter().map(|v| v == &r).collect();
                    if above {
                        a.iter_mut().for_each(|x| *x = -&*x);
                        r = -r;
                    }
                    let verts = (0..n).filter(|&i| tight[i]).collect();
                    tight_sets.push(tight);
                    found.push((a, r, verts));
                }
            }
        }
        // next k-subset in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return found;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
