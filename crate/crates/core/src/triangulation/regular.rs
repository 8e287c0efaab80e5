use num_rational::BigRational;

use super::config::{AffineFn, Config};
use super::Subdivision;
use crate::error::{Error, Result};
use crate::lattice::IntVector;
use crate::polytope::hull_vertices;

/// The subdivision induced by the lower envelope of the lifted points
/// `(v, ω(v))`: a cell for every affine function that is `<= ω` on all points,
/// touching it on a full-dimensional set. Brute force over simplices.
pub fn regular_subdivision(points: &[IntVector], heights: &[BigRational]) -> Result<Subdivision> {
    let cfg = Config::new(points)?;
    if heights.len() != cfg.len() {
        return Err(Error::DimensionMismatch { expected: cfg.len(), found: heights.len() });
    }
    let cells = lower_cells(&cfg, heights)?;
    Ok(Subdivision { points: points.to_vec(), cells })
}

pub(crate) fn lower_cells(cfg: &Config, heights: &[BigRational]) -> Result<Vec<Vec<usize>>> {
    let n = cfg.len();
    let k = cfg.dim();
    let mut tight_sets: Vec<Vec<bool>> = Vec::new();
    let mut cells = Vec::new();
    let mut idx: Vec<usize> = (0..=k).collect();
    loop {
        let covered = tight_sets.iter().any(|t| idx.iter().all(|&i| t[i]));
        if !covered {
            let ps: Vec<&IntVector> = idx.iter().map(|&i| &cfg.local[i]).collect();
            let hs: Vec<&BigRational> = idx.iter().map(|&i| &heights[i]).collect();
            if let Some(f) = AffineFn::interpolate(&ps, &hs, k) {
                let vals: Vec<BigRational> = cfg.local.iter().map(|c| f.eval(c)).collect();
                if vals.iter().zip(heights).all(|(l, w)| l <= w) {
                    let tight: Vec<bool> = vals.iter().zip(heights).map(|(l, w)| l == w).collect();
                    let members: Vec<usize> = (0..n).filter(|&i| tight[i]).collect();
                    let pts: Vec<IntVector> = members.iter().map(|&i| cfg.points[i].clone()).collect();
                    let hull = hull_vertices(&pts)?;
                    let mut cell: Vec<usize> = hull
                        .vertices()
                        .iter()
                        .map(|v| members[pts.iter().position(|p| p == v).expect("vertex is a member")])
                        .collect();
                    cell.sort_unstable();
                    tight_sets.push(tight);
                    cells.push(cell);
                }
            }
        }
        let mut i = k + 1;
        loop {
            if i == 0 {
                cells.sort();
                return Ok(cells);
            }
            i -= 1;
            if idx[i] < n - (k + 1) + i {
                idx[i] += 1;
                for j in i + 1..=k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
