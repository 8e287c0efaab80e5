use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::config::{AffineFn, Config};
use super::Triangulation;
use crate::error::{Error, Result};
use crate::lattice::matrix::{cofactor_normal, det_of_rows, dot, sub};
use crate::lattice::IntVector;
use crate::polytope::{hull_vertices, simplex_volume_local, LatticePolytope};

/// Normalized volume of every simplex in the affine lattice of the
/// configuration; errors if a cell has the wrong number of vertices.
pub(crate) fn simplex_volumes(t: &Triangulation) -> Result<Vec<BigInt>> {
    let cfg = Config::new(&t.points)?;
    simplex_volumes_in(&cfg, &t.simplices)
}

fn simplex_volumes_in(cfg: &Config, simplices: &[Vec<usize>]) -> Result<Vec<BigInt>> {
    let k = cfg.dim();
    simplices
        .iter()
        .map(|s| {
            if s.len() != k + 1 {
                return Err(Error::NotSimplex(format!("{} vertices in dimension {k}", s.len())));
            }
            for &v in s {
                cfg.check_index(v)?;
            }
            let pts: Vec<IntVector> = s.iter().map(|&i| cfg.local[i].clone()).collect();
            Ok(simplex_volume_local(&pts))
        })
        .collect()
}

/// Every simplex has normalized volume 1.
pub fn verify_basic(t: &Triangulation) -> bool {
    match simplex_volumes(t) {
        Ok(v) => !v.is_empty() && v.iter().all(One::is_one),
        Err(_) => false,
    }
}

/// No simplex contains a lattice point besides its vertices.
pub fn verify_maximal(t: &Triangulation) -> bool {
    let vols = match simplex_volumes(t) {
        Ok(v) => v,
        Err(_) => return false,
    };
    !vols.is_empty()
        && t.simplices.iter().zip(&vols).all(|(s, vol)| {
            if vol.is_zero() {
                return false;
            }
            if vol.is_one() {
                return true;
            }
            let p = LatticePolytope::from_vertices_unchecked(s.iter().map(|&i| t.points[i].clone()).collect());
            p.lattice_points().len() == s.len()
        })
}

/// `t` is the regular subdivision of `heights`: for each simplex the affine
/// interpolant of the heights lies strictly below them at every other
/// point, and the simplices fill the hull.
pub fn verify_coherent(t: &Triangulation, heights: &[BigRational]) -> bool {
    let Ok(cfg) = Config::new(&t.points) else { return false };
    if heights.len() != cfg.len() || t.simplices.is_empty() {
        return false;
    }
    let Ok(vols) = simplex_volumes_in(&cfg, &t.simplices) else { return false };
    // integer heights over a common denominator; interpolants are then
    // compared after scaling by the simplex determinant, avoiding fractions
    let lcm = heights.iter().fold(BigInt::one(), |l, h| l.lcm(h.denom()));
    let h: Vec<BigInt> = heights.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let k = cfg.dim();
    for s in &t.simplices {
        let p0 = &cfg.local[s[0]];
        let rows: Vec<IntVector> = s[1..].iter().map(|&i| sub(&cfg.local[i], p0)).collect();
        let det = det_of_rows(&rows);
        if det.is_zero() {
            return false;
        }
        let ps: Vec<&IntVector> = s.iter().map(|&i| &cfg.local[i]).collect();
        let hs: Vec<BigRational> = s.iter().map(|&i| BigRational::from_integer(h[i].clone())).collect();
        let hs: Vec<&BigRational> = hs.iter().collect();
        let Some(f) = AffineFn::interpolate(&ps, &hs, k) else { return false };
        let det_r = BigRational::from_integer(det.clone());
        let w: IntVector = f.alpha.iter().map(|a| (a * &det_r).to_integer()).collect();
        let base = &det * &h[s[0]];
        let positive = det.is_positive();
        let ok = (0..cfg.len()).filter(|i| !s.contains(i)).all(|i| {
            let lhs = &base + dot(&w, &sub(&cfg.local[i], p0));
            let rhs = &det * &h[i];
            if positive {
                lhs < rhs
            } else {
                lhs > rhs
            }
        });
        if !ok {
            return false;
        }
    }
    hull_volume(&cfg).is_ok_and(|v| v == vols.iter().sum::<BigInt>())
}

fn hull_volume(cfg: &Config) -> Result<BigInt> {
    Ok(hull_vertices(&cfg.points)?.normalized_volume())
}

/// Every point of the configuration is a vertex of some simplex.
pub fn uses_all_points(t: &Triangulation) -> bool {
    let mut seen = vec![false; t.points.len()];
    for s in &t.simplices {
        for &v in s {
            if let Some(x) = seen.get_mut(v) {
                *x = true;
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// The simplices are full-dimensional, their volumes add up to the volume
/// of the hull, and every facet either lies on the boundary of the hull and
/// belongs to one simplex, or is shared by exactly two simplices on opposite
/// sides. Together these force a face-to-face covering: the number of
/// simplices over a generic point is locally constant, hence 1 by volume,
/// and around each face the matched facets close up, so no other simplex
/// can reach its relative interior.
pub fn verify_covering(t: &Triangulation) -> bool {
    let Ok(cfg) = Config::new(&t.points) else { return false };
    let Ok(vols) = simplex_volumes_in(&cfg, &t.simplices) else { return false };
    if t.simplices.is_empty() || vols.iter().any(Zero::is_zero) {
        return false;
    }
    if !hull_volume(&cfg).is_ok_and(|v| v == vols.iter().sum::<BigInt>()) {
        return false;
    }
    let k = cfg.dim();
    if k == 0 {
        return t.simplices.len() == 1;
    }
    let mut sides: HashMap<Vec<usize>, (IntVector, Vec<Ordering>)> = HashMap::new();
    for s in &t.simplices {
        for skip in 0..s.len() {
            let facet: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            let entry = sides.entry(facet).or_insert_with_key(|f| (facet_normal(&cfg, f), Vec::new()));
            let side = dot(&entry.0, &sub(&cfg.local[s[skip]], &cfg.local[entry_base(s, skip)])).cmp(&BigInt::zero());
            entry.1.push(side);
        }
    }
    sides.iter().all(|(facet, (normal, s))| match s.as_slice() {
        [a, b] => a != b,
        [side] => {
            let base = &cfg.local[facet[0]];
            cfg.local.iter().all(|u| {
                let c = dot(normal, &sub(u, base)).cmp(&BigInt::zero());
                c == Ordering::Equal || c == *side
            })
        }
        _ => false,
    })
}

/// First vertex of `s` other than the one at `skip`; lies on that facet.
fn entry_base(s: &[usize], skip: usize) -> usize {
    if skip == 0 {
        s[1]
    } else {
        s[0]
    }
}

fn facet_normal(cfg: &Config, facet: &[usize]) -> IntVector {
    let base = &cfg.local[facet[0]];
    let diffs: Vec<IntVector> = facet[1..].iter().map(|&i| sub(&cfg.local[i], base)).collect();
    cofactor_normal(&diffs, cfg.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;
    use crate::lattice::lp::{maximize, LpOutcome};
    use crate::lattice::RatVector;

    /// Independent check: any two simplices meet in the hull of their
    /// common vertices (exact LP per pair).
    fn pairwise_proper(t: &Triangulation) -> bool {
        let cfg = Config::new(&t.points).unwrap();
        let k = cfg.dim();
        let r = |x: &BigInt| BigRational::from_integer(x.clone());
        for (i, a) in t.simplices.iter().enumerate() {
            for b in &t.simplices[i + 1..] {
                let (na, nb) = (a.len(), b.len());
                let mut rows: Vec<RatVector> = (0..k)
                    .map(|c| {
                        a.iter().map(|&v| r(&cfg.local[v][c])).chain(b.iter().map(|&v| -r(&cfg.local[v][c]))).collect()
                    })
                    .collect();
                rows.push((0..na + nb).map(|j| if j < na { BigRational::one() } else { BigRational::zero() }).collect());
                rows.push((0..na + nb).map(|j| if j < na { BigRational::zero() } else { BigRational::one() }).collect());
                let mut rhs = vec![BigRational::zero(); k];
                rhs.extend([BigRational::one(), BigRational::one()]);
                let c: RatVector = (0..na + nb)
                    .map(|j| if j < na && !b.contains(&a[j]) { BigRational::one() } else { BigRational::zero() })
                    .collect();
                match maximize(&c, &rows, &rhs) {
                    LpOutcome::Infeasible => {}
                    LpOutcome::Optimal { value, .. } if value.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn pts(rows: &[&[i64]]) -> Vec<IntVector> {
        rows.iter().map(|r| ivec(r)).collect()
    }

    #[test]
    fn facet_matching_agrees_with_pairwise_lp() {
        let p = pts(&[&[1, 0, 0], &[1, 2, 0], &[1, 0, 2], &[1, 2, 2], &[1, 1, 1], &[1, 1, 0]]);
        let cases = vec![
            vec![vec![0, 4, 5], vec![1, 4, 5], vec![0, 2, 4], vec![1, 3, 4], vec![2, 3, 4]],
            // volume adds up but the diagonals cross
            vec![vec![0, 1, 3], vec![0, 2, 3], vec![0, 1, 2], vec![1, 2, 3]],
            // leaves out the point in the middle of the bottom edge
            vec![vec![0, 1, 4], vec![0, 2, 4], vec![1, 3, 4], vec![2, 3, 4]],
        ];
        for cells in cases {
            let t = Triangulation::new(p.clone(), cells);
            let vol_ok = t.volume().unwrap() == hull_vertices(&p).unwrap().normalized_volume();
            assert_eq!(verify_covering(&t), vol_ok && pairwise_proper(&t), "{:?}", t.simplices);
        }
    }
}
