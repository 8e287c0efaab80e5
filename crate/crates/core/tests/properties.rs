use crepant::corpus::random_sequence;
use crepant::ehrhart::{count_points, ehrhart_nakajima, ehrhart_polynomial};
use crepant::lattice::ivec;
use crepant::polytope::hull_vertices;
use crepant::triangulation::*;
use crepant::{FreeParameterSequence, IntVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Admissible sequences with d in 2..=4 and few lattice points.
fn small_sequence() -> impl Strategy<Value = FreeParameterSequence> {
    (2usize..=4, any::<u64>()).prop_filter_map("inadmissible or too large", |(d, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_sequence(&mut rng, d, 2);
        let p = m.build().ok()?;
        (p.lattice_points().len() <= 40).then_some(m)
    })
}

/// Point configurations on the slice `x_1 = 1` with coordinates in `0..=2`.
fn configuration() -> impl Strategy<Value = Vec<IntVector>> {
    (1usize..=3).prop_flat_map(|n| {
        let grid: Vec<IntVector> = (0..3usize.pow(n as u32))
            .map(|mut k| {
                let mut p = vec![1i64];
                for _ in 0..n {
                    p.push((k % 3) as i64);
                    k /= 3;
                }
                ivec(&p)
            })
            .collect();
        let max = grid.len().min(n + 5);
        subsequence(grid, 1..=max)
    })
}

fn heights(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| v.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
}

fn config_with_heights() -> impl Strategy<Value = (Vec<IntVector>, Vec<BigRational>)> {
    configuration().prop_flat_map(|pts| {
        let n = pts.len();
        (Just(pts), heights(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resolutions_are_basic_coherent_and_complete(m in small_sequence()) {
        let p = m.build().unwrap();
        let t = resolve(&m).unwrap();
        prop_assert!(t.is_bc(), "{:?}", t.flags);
        prop_assert!(verify_covering(&t.triangulation));
        prop_assert!(uses_all_points(&t.triangulation));
        prop_assert_eq!(BigInt::from(t.triangulation.len()), p.normalized_volume());
        prop_assert!(koszul_check(&t.triangulation));
    }

    #[test]
    fn nested_sum_matches_point_counts(m in small_sequence()) {
        let p = m.build().unwrap();
        let e = ehrhart_polynomial(&p).unwrap();
        for nu in 0..=3 {
            let brute = count_points(&p, nu);
            prop_assert_eq!(ehrhart_nakajima(&m, nu).unwrap(), brute.clone());
            prop_assert_eq!(e.evaluate(nu), BigRational::from_integer(brute));
        }
    }

    #[test]
    fn delta_vector_is_nonnegative_and_sums_to_volume(m in small_sequence()) {
        let p = m.build().unwrap();
        let e = ehrhart_polynomial(&p).unwrap();
        prop_assert!(e.delta[0].is_one());
        prop_assert!(e.delta.iter().all(|x| !x.is_negative()));
        let total: BigInt = e.delta.iter().sum();
        prop_assert_eq!(total, p.normalized_volume());
        // entries above the dimension vanish
        prop_assert!(e.delta.iter().skip(p.dim() + 1).all(Zero::is_zero));
    }

    #[test]
    fn pulled_heights_induce_the_pulled_subdivision(
        (pts, h) in config_with_heights(),
        pick in any::<prop::sample::Index>(),
    ) {
        let s = regular_subdivision(&pts, &h).unwrap();
        let v = pick.index(pts.len());
        let pulled = pull(&s, v).unwrap();
        let h2 = pull_heights(&s, &h, v).unwrap();
        prop_assert_eq!(regular_subdivision(&pts, &h2).unwrap(), pulled);
    }

    #[test]
    fn pulling_every_point_gives_a_certified_triangulation(
        (pts, h) in config_with_heights(),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let s = regular_subdivision(&pts, &h).unwrap();
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let t = pull_all(&s, &h, &order).unwrap();
        prop_assert!(t.flags.coherent, "{:?}", t.flags);
        // maximal only makes sense when no lattice point of the hull is missing
        let saturated = hull_vertices(&pts).unwrap().lattice_points().len() == pts.len();
        prop_assert_eq!(t.flags.maximal, saturated);
        prop_assert!(verify_covering(&t.triangulation));
        prop_assert!(uses_all_points(&t.triangulation));
        prop_assert!(verify_coherent(&t.triangulation, &t.heights));
    }

    #[test]
    fn pulling_vertices_is_a_full_flag_triangulation(pts in configuration(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let p = hull_vertices(&pts).unwrap();
        let verts = p.vertices().to_vec();
        let s = Subdivision::trivial(verts.clone()).unwrap();
        let mut order: Vec<usize> = (0..verts.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let zero = vec![BigRational::zero(); verts.len()];
        let pulled = pull_all(&s, &zero, &order).unwrap();
        let flags = full_flag_triangulation(&p, &order).unwrap();
        prop_assert_eq!(pulled.triangulation.simplices, flags.simplices);
    }
}
