//! Seeded random inputs: admissible parameter sequences and unimodular
//! changes of coordinates. Everything is driven by a ChaCha8 stream, so a
//! seed pins down the whole corpus.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{IntMatrix, IntVector};
use crate::nakajima::FreeParameterSequence;
use crate::polytope::{hull_vertices, LatticePolytope};

/// Seed used by the CLI and the acceptance suite unless told otherwise.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    /// Relative frequency of each `d`, as `(d, weight)`.
    pub dims: Vec<(usize, u32)>,
    /// Entries are drawn from `-max_entry..=max_entry` (the first column
    /// from `0..=max_entry`).
    pub max_entry: i64,
    /// Sequences whose polytope has more lattice points are redrawn.
    pub max_points: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            seed: DEFAULT_SEED,
            count: 200,
            dims: vec![(2, 1), (3, 3), (4, 3), (5, 3)],
            max_entry: 3,
            max_points: 150,
        }
    }
}

/// One random lower-triangular sequence of the given size; not necessarily
/// admissible.
pub fn random_sequence<R: Rng>(rng: &mut R, d: usize, max_entry: i64) -> FreeParameterSequence {
    let rows = (0..d - 1)
        .map(|i| loop {
            let mut row = vec![BigInt::zero(); d];
            row[0] = BigInt::from(rng.random_range(0..=max_entry));
            for x in row.iter_mut().take(i + 1).skip(1) {
                *x = BigInt::from(rng.random_range(-max_entry..=max_entry));
            }
            if row.iter().any(|x| !x.is_zero()) {
                break row;
            }
        })
        .collect();
    FreeParameterSequence::new(d, rows).expect("lower-triangular by construction")
}

/// `spec.count` admissible sequences with at most `spec.max_points` lattice
/// points, drawn by rejection.
pub fn admissible_corpus(spec: &CorpusSpec) -> Vec<FreeParameterSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let total: u32 = spec.dims.iter().map(|&(_, w)| w).sum();
    let mut out = Vec::with_capacity(spec.count);
    while out.len() < spec.count {
        let mut pick = rng.random_range(0..total);
        let d = spec
            .dims
            .iter()
            .find(|&&(_, w)| {
                if pick < w {
                    true
                } else {
                    pick -= w;
                    false
                }
            })
            .expect("weights cover the range")
            .0;
        // redraw with the same d so rejection does not skew the mix
        loop {
            let m = random_sequence(&mut rng, d, spec.max_entry);
            let Ok(p) = m.build() else { continue };
            if p.lattice_points().len() <= spec.max_points {
                out.push(m);
                break;
            }
        }
    }
    out
}

/// A random `n x n` unimodular matrix: a signed permutation times a few
/// elementary row additions.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n == 0 {
        return u;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut p = IntMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p[(i, j)] = if rng.random_bool(0.5) { BigInt::one() } else { -BigInt::one() };
    }
    for _ in 0..n + 2 {
        if n < 2 {
            break;
        }
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let c = BigInt::from(if rng.random_bool(0.5) { 1 } else { -1 });
        for k in 0..n {
            let add = &c * &u[(b, k)];
            u[(a, k)] += add;
        }
    }
    u.mul(&p).expect("square matrices")
}

/// `(1, y) -> (1, U y + t)` on the slice `x_1 = 1`, with `U` unimodular and a
/// random translation `t`; preserves slice polytopes and their cones up to a
/// unimodular change of coordinates.
pub fn random_slice_transform<R: Rng>(rng: &mut R, d: usize) -> IntMatrix {
    let n = d - 1;
    let u = random_unimodular(rng, n);
    let mut a = IntMatrix::zeros(d, d);
    a[(0, 0)] = BigInt::one();
    for i in 0..n {
        a[(i + 1, 0)] = BigInt::from(rng.random_range(-3..=3));
        for j in 0..n {
            a[(i + 1, j + 1)] = u[(i, j)].clone();
        }
    }
    a
}

pub fn transform_points(a: &IntMatrix, pts: &[IntVector]) -> Vec<IntVector> {
    pts.iter().map(|p| a.mul_vec(p).expect("matching dimension")).collect()
}

pub fn transform_polytope(a: &IntMatrix, p: &LatticePolytope) -> LatticePolytope {
    hull_vertices(&transform_points(a, p.vertices())).expect("image of a nonempty polytope")
}
