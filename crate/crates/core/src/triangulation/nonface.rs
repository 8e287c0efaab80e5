use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

use super::config::Config;
use super::Triangulation;
use crate::lattice::IntVector;

/// Inclusion-minimal affinely independent sets of points that are not faces
/// of `t` although all their proper subsets are, by increasing size.
///
/// Sizes stop at `dim + 1`: a larger set of points is affinely dependent.
pub fn minimal_nonfaces(t: &Triangulation) -> Vec<Vec<usize>> {
    let n = t.points.len();
    let mut faces: HashSet<Vec<usize>> = HashSet::new();
    for s in &t.simplices {
        for size in 1..=s.len() {
            for f in s.iter().copied().combinations(size) {
                faces.insert(f);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = (0..n).filter(|&i| !faces.contains(&vec![i])).map(|i| vec![i]).collect();
    let dim = Config::new(&t.points).map(|c| c.dim()).unwrap_or(0);
    let vertices: BTreeSet<usize> = t.simplices.iter().flatten().copied().collect();
    let mut layer: Vec<Vec<usize>> = vertices.iter().map(|&v| vec![v]).collect();
    for _ in 2..=dim + 1 {
        let mut next = Vec::new();
        for f in &layer {
            let last = *f.last().expect("nonempty");
            for &p in vertices.range(last + 1..) {
                let mut cand = f.clone();
                cand.push(p);
                let subsets_are_faces = (0..cand.len() - 1).all(|skip| {
                    let sub: Vec<usize> = cand.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                    faces.contains(&sub)
                });
                if !subsets_are_faces {
                    continue;
                }
                if faces.contains(&cand) {
                    next.push(cand);
                } else if affinely_independent(&t.points, &cand) {
                    out.push(cand);
                }
            }
        }
        layer = next;
    }
    out
}

fn affinely_independent(points: &[IntVector], set: &[usize]) -> bool {
    let pts: Vec<IntVector> = set.iter().map(|&i| points[i].clone()).collect();
    Config::new(&pts).is_ok_and(|c| c.dim() + 1 == set.len())
}

/// Every minimal non-face is an edge, the combinatorial condition for the
/// semigroup ring to be Koszul.
pub fn koszul_check(t: &Triangulation) -> bool {
    minimal_nonfaces(t).iter().all(|f| f.len() == 2)
}
