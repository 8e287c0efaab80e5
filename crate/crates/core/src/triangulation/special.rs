use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::config::Config;
use super::pulling::pull_all_in;
use super::{CertifiedTriangulation, Triangulation};
use crate::error::{Error, Result};
use crate::lattice::IntVector;
use crate::nakajima::{fano_center, is_hd_compatible};
use crate::polytope::{enumerate_facets, simplex_volume_local, LatticePolytope};

fn simplex_config(points: &[IntVector]) -> Result<Config> {
    let cfg = Config::new(points)?;
    if cfg.dim() + 1 != points.len() {
        return Err(Error::NotSimplex(format!("{} points spanning dimension {}", points.len(), cfg.dim())));
    }
    Ok(cfg)
}

/// The simplex `conv(points)` has no lattice points besides its vertices.
pub fn is_elementary_simplex(points: &[IntVector]) -> Result<bool> {
    let cfg = simplex_config(points)?;
    if simplex_volume_local(&cfg.local).is_one() {
        return Ok(true);
    }
    let p = LatticePolytope::from_vertices_unchecked(points.to_vec());
    Ok(p.lattice_points().len() == points.len())
}

/// The simplex `conv(points)` has normalized volume 1 in its affine lattice.
pub fn is_basic_simplex(points: &[IntVector]) -> Result<bool> {
    let cfg = simplex_config(points)?;
    Ok(simplex_volume_local(&cfg.local).is_one())
}

/// The pulling triangulation of the vertices of `p` in the given order
/// (indices into `p.vertices()`), built directly as the cone from the first
/// vertex of each face over the triangulated facets of that face avoiding it.
pub fn full_flag_triangulation(p: &LatticePolytope, order: &[usize]) -> Result<Triangulation> {
    let n = p.vertices().len();
    let mut rank = vec![usize::MAX; n];
    for (r, &v) in order.iter().enumerate() {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, len: n });
        }
        rank[v] = r;
    }
    if rank.contains(&usize::MAX) || order.len() != n {
        return Err(Error::Invalid("order must be a permutation of the vertices".into()));
    }
    let all: Vec<usize> = (0..n).collect();
    let simplices = flag_cells(p.vertices(), &all, &rank)?;
    Ok(Triangulation::new(p.vertices().to_vec(), simplices))
}

fn flag_cells(points: &[IntVector], face: &[usize], rank: &[usize]) -> Result<Vec<Vec<usize>>> {
    let pts: Vec<IntVector> = face.iter().map(|&i| points[i].clone()).collect();
    let cfg = Config::new(&pts)?;
    let k = cfg.dim();
    if face.len() == k + 1 {
        return Ok(vec![face.to_vec()]);
    }
    let apex = *face.iter().min_by_key(|&&i| rank[i]).expect("nonempty face");
    let mut out = Vec::new();
    for (_, _, tight) in enumerate_facets(&cfg.local, k) {
        let sub: Vec<usize> = tight.iter().map(|&j| face[j]).collect();
        if sub.contains(&apex) {
            continue;
        }
        for mut s in flag_cells(points, &sub, rank)? {
            s.push(apex);
            out.push(s);
        }
    }
    Ok(out)
}

/// The join of the interior point `n_0` with the facets of a Fano polytope,
/// certified by the heights `-1` at `n_0` and `0` elsewhere, refined by
/// pulling every lattice point.
pub fn fano_canonical(p: &LatticePolytope) -> Result<CertifiedTriangulation> {
    let n0 = fano_center(p).ok_or(Error::NotFano)?;
    let points = p.lattice_points().to_vec();
    let at = |x: &IntVector| points.binary_search(x).expect("lattice point of P");
    let c = at(&n0);
    let cells: Vec<Vec<usize>> = p
        .facet_data()
        .iter()
        .map(|f| {
            let mut cell: Vec<usize> = f.vertices.iter().map(|&i| at(&p.vertices()[i])).collect();
            cell.push(c);
            cell
        })
        .collect();
    let mut heights = vec![BigRational::zero(); points.len()];
    heights[c] = -BigRational::one();
    let cfg = Config::new(&points)?;
    let order: Vec<usize> = (0..points.len()).collect();
    let (t, h) = pull_all_in(&cfg, &cells, &heights, &order)?;
    Ok(CertifiedTriangulation::certify(t, h))
}

/// The alcove triangulation of an H_d-compatible slice polytope: in each
/// unit cube `z + [0,1]^n` of the slice coordinates, one simplex per
/// ordering of the coordinates, kept when it lies in `P`. The certificate is
/// `Σ y_i² + Σ_{i<j} (y_i - y_j)²`, checked by the coherence verifier.
pub fn hd_triangulation(p: &LatticePolytope) -> Result<CertifiedTriangulation> {
    if !is_hd_compatible(p) {
        return Err(Error::NotCompatible);
    }
    let points = p.lattice_points().to_vec();
    let index: HashMap<&IntVector, usize> = points.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let n = p.ambient_dim() - 1;
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut simplices = Vec::new();
    for z in &points {
        'perm: for perm in &perms {
            let mut cur = z.clone();
            let mut s = vec![index[z]];
            for &i in perm {
                cur[i + 1] += 1;
                match index.get(&cur) {
                    Some(&j) => s.push(j),
                    None => continue 'perm,
                }
            }
            simplices.push(s);
        }
    }
    let heights = points
        .iter()
        .map(|x| {
            let y = &x[1..];
            let mut w = BigInt::zero();
            for i in 0..n {
                w += &y[i] * &y[i];
                for j in i + 1..n {
                    let diff = &y[i] - &y[j];
                    w += &diff * &diff;
                }
            }
            BigRational::from_integer(w)
        })
        .collect();
    Ok(CertifiedTriangulation::certify(Triangulation::new(points, simplices), heights))
}

