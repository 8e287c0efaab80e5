use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::Config;
use super::pulling::pull_all_in;
use super::{CertifiedTriangulation, HeightFunction, Subdivision, Triangulation};
use crate::error::{Error, Result};
use crate::lattice::matrix::dot;
use crate::lattice::IntVector;
use crate::nakajima::FreeParameterSequence;
use crate::polytope::hull_vertices;

/// Order in which the lattice points of each stage are pulled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PullOrder {
    /// Lexicographic on ambient coordinates.
    #[default]
    Lex,
    /// Vertices of the stage polytope first, then the remaining points, each
    /// group lexicographic.
    Given,
    /// A permutation drawn from a ChaCha8 stream with this seed; one stream
    /// is shared by all stages, innermost first.
    Seeded(u64),
}

/// Cuts the prism over each simplex `s` of `tq` by `x_d <= <lambda, x>`,
/// dropping the cells on which `lambda` vanishes. The point set is every
/// `(v, t)` with `0 <= t <= lambda(v)` and the heights are `ωQ(v)`, so the
/// result is the regular subdivision of those heights.
pub fn prism_subdivision(
    tq: &Triangulation,
    lambda: &[BigInt],
    heights_q: &[BigRational],
) -> Result<(Subdivision, HeightFunction)> {
    if heights_q.len() != tq.points.len() {
        return Err(Error::DimensionMismatch { expected: tq.points.len(), found: heights_q.len() });
    }
    let levels: Vec<BigInt> = tq.points.iter().map(|v| dot(lambda, v)).collect();
    if levels.iter().any(Signed::is_negative) {
        return Err(Error::NegativeFunctional);
    }
    let mut lifted: Vec<(IntVector, usize)> = Vec::new();
    for (i, v) in tq.points.iter().enumerate() {
        let top = levels[i].to_u64().ok_or_else(|| Error::Invalid("height of prism too large".into()))?;
        for t in 0..=top {
            let mut p = v.clone();
            p.push(BigInt::from(t));
            lifted.push((p, i));
        }
    }
    lifted.sort();
    lifted.dedup_by(|a, b| a.0 == b.0);
    let index: HashMap<&IntVector, usize> = lifted.iter().enumerate().map(|(j, (p, _))| (p, j)).collect();
    let lift = |v: &IntVector, t: &BigInt| {
        let mut p = v.clone();
        p.push(t.clone());
        index[&p]
    };
    let mut cells = Vec::new();
    for s in &tq.simplices {
        if s.iter().all(|&v| levels[v].is_zero()) {
            continue;
        }
        let mut cell = Vec::with_capacity(2 * s.len());
        for &v in s {
            cell.push(lift(&tq.points[v], &BigInt::zero()));
            if !levels[v].is_zero() {
                cell.push(lift(&tq.points[v], &levels[v]));
            }
        }
        cell.sort_unstable();
        cells.push(cell);
    }
    if cells.is_empty() {
        return Err(Error::Invalid("cutting functional vanishes on the base".into()));
    }
    cells.sort();
    let heights = lifted.iter().map(|(_, i)| heights_q[*i].clone()).collect();
    let points = lifted.into_iter().map(|(p, _)| p).collect();
    Ok((Subdivision { points, cells }, heights))
}

/// A maximal, basic, coherent triangulation of `build(m)` with its height
/// certificate, pulling points in lexicographic order.
pub fn resolve(m: &FreeParameterSequence) -> Result<CertifiedTriangulation> {
    resolve_with(m, PullOrder::Lex)
}

/// [`resolve`] with a chosen pull order.
pub fn resolve_with(m: &FreeParameterSequence, order: PullOrder) -> Result<CertifiedTriangulation> {
    m.check_admissible()?;
    let mut rng = match order {
        PullOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let (t, h) = resolve_stage(m, order, &mut rng)?;
    Ok(CertifiedTriangulation::certify(t, h))
}

fn resolve_stage(
    m: &FreeParameterSequence,
    order: PullOrder,
    rng: &mut Option<ChaCha8Rng>,
) -> Result<(Triangulation, HeightFunction)> {
    if m.d() == 1 {
        let point = vec![BigInt::from(1)];
        return Ok((Triangulation { points: vec![point], simplices: vec![vec![0]] }, vec![BigRational::zero()]));
    }
    let (base, lambda) = m.reduce()?;
    let (tq, hq) = resolve_stage(&base, order, rng)?;
    let (s, h) = prism_subdivision(&tq, &lambda, &hq)?;
    let cfg = Config::new(&s.points)?;
    let seq = pull_sequence(&s.points, order, rng)?;
    pull_all_in(&cfg, &s.cells, &h, &seq)
}

/// Indices of `points` (sorted lexicographically) in the order `order`.
pub(crate) fn pull_sequence(points: &[IntVector], order: PullOrder, rng: &mut Option<ChaCha8Rng>) -> Result<Vec<usize>> {
    let mut seq: Vec<usize> = (0..points.len()).collect();
    seq.sort_by(|&a, &b| points[a].cmp(&points[b]));
    match order {
        PullOrder::Lex => {}
        PullOrder::Given => {
            let hull = hull_vertices(points)?;
            let is_vertex = |i: &usize| hull.vertices().binary_search(&points[*i]).is_ok();
            let (mut first, rest): (Vec<usize>, Vec<usize>) = seq.into_iter().partition(is_vertex);
            first.extend(rest);
            seq = first;
        }
        PullOrder::Seeded(_) => {
            let rng = rng.as_mut().expect("seeded order carries a stream");
            seq.shuffle(rng);
        }
    }
    Ok(seq)
}
