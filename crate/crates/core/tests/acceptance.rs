//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p crepant-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use crepant::cone::{cone_over, RationalCone};
use crepant::corpus::{
    admissible_corpus, random_slice_transform, random_unimodular, transform_points, transform_polytope, CorpusSpec,
};
use crepant::ehrhart::{
    cohomology_dims, count_points, ehrhart_closed_form, ehrhart_nakajima, ehrhart_polynomial, elementary_symmetric,
    hypersurface_cohomology,
};
use crepant::lattice::{ivec, IntVector};
use crepant::nakajima::{hypersurface_simplex, rp_polytope, zonotope, zonotope_polar};
use crepant::triangulation::*;
use crepant::{FreeParameterSequence, LatticePolytope};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn seq(d: usize, rows: &[&[i64]]) -> FreeParameterSequence {
    FreeParameterSequence::from_i64(d, rows).unwrap()
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn corpus() -> Vec<FreeParameterSequence> {
    admissible_corpus(&CorpusSpec::default())
}

fn ehrhart_goldens() -> Outcome {
    for k in 1..=6 {
        let m = seq(2, &[&[k, 0]]);
        let e = ehrhart_polynomial(&m.build().unwrap()).unwrap();
        ensure(e.coefficients == vec![rat(1), rat(k)], || format!("d=2, k={k}: {:?}", e.coefficients))?;
    }
    let quad = seq(3, &[&[2, 0, 0], &[2, 1, 0]]);
    let p = quad.build().unwrap();
    let e = ehrhart_polynomial(&p).unwrap();
    ensure(e.coefficients == vec![rat(1), rat(5), rat(6)], || format!("d=3 quadrilateral: {:?}", e.coefficients))?;
    ensure(count_points(&p, 1) == BigInt::from(12) && count_points(&p, 2) == BigInt::from(35), || {
        "d=3 quadrilateral counts".into()
    })?;
    let d4 = seq(4, &[&[1, 0, 0, 0], &[1, 0, 0, 0], &[2, -1, -1, 0]]);
    let p = d4.build().unwrap();
    let closed = ehrhart_closed_form(&d4).unwrap();
    let mut counts = Vec::new();
    for nu in 0..=3u64 {
        let x = rat(nu as i64);
        let val = closed.iter().rev().fold(BigRational::zero(), |acc, a| acc * &x + a);
        let brute = count_points(&p, nu);
        ensure(val == BigRational::from_integer(brute.clone()), || format!("d=4 polytope, nu={nu}: {val} vs {brute}"))?;
        ensure(ehrhart_nakajima(&d4, nu).unwrap() == brute, || format!("d=4 nested sum at nu={nu}"))?;
        counts.push(brute.to_string());
    }
    Ok(format!("d=2 k=1..6, d=3 quadrilateral 1+5nu+6nu^2, d=4 closed form = nested sum = counts {}", counts.join(",")))
}

fn check_resolution(m: &FreeParameterSequence) -> Result<CertifiedTriangulation, String> {
    let p = m.build().map_err(|e| e.to_string())?;
    let t = resolve(m).map_err(|e| format!("{m:?}: {e}"))?;
    let tri = &t.triangulation;
    ensure(t.flags.maximal && t.flags.basic && t.flags.coherent, || format!("{m:?}: flags {:?}", t.flags))?;
    ensure(verify_covering(tri), || format!("{m:?}: covering"))?;
    ensure(uses_all_points(tri) && tri.points.as_slice() == p.lattice_points(), || format!("{m:?}: vertex set"))?;
    ensure(BigInt::from(tri.len()) == p.normalized_volume(), || format!("{m:?}: simplex count"))?;
    Ok(t)
}

fn main_theorem(corpus: &[FreeParameterSequence], resolved: &[Result<CertifiedTriangulation, String>]) -> Outcome {
    let failures: Vec<&String> = resolved.iter().filter_map(|r| r.as_ref().err()).collect();
    if let Some(f) = failures.first() {
        return Err(format!("{} failures, first: {f}", failures.len()));
    }
    let simplices: usize = resolved.iter().map(|r| r.as_ref().unwrap().triangulation.len()).sum();
    let mut by_dim = [0usize; 6];
    for m in corpus {
        by_dim[m.d()] += 1;
    }
    Ok(format!(
        "{} sequences (d=2..5: {:?}), {simplices} basic simplices in total",
        corpus.len(),
        &by_dim[2..]
    ))
}

fn random_configuration(rng: &mut ChaCha8Rng) -> Vec<IntVector> {
    let n = rng.random_range(1..=3usize);
    let count = rng.random_range(n + 2..=n + 6).min(4usize.pow(n as u32));
    let mut pts: Vec<IntVector> = Vec::new();
    while pts.len() < count {
        let mut p = vec![1i64];
        p.extend((0..n).map(|_| rng.random_range(0..=3)));
        let p = ivec(&p);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts.sort();
    pts
}

fn pulling_heights_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(crepant::corpus::DEFAULT_SEED ^ 0x1b);
    let mut cases = 0;
    let mut cells = 0;
    while cases < 150 {
        let pts = random_configuration(&mut rng);
        let heights: Vec<BigRational> = pts.iter().map(|_| rat(rng.random_range(-3..=3))).collect();
        let s = regular_subdivision(&pts, &heights).map_err(|e| e.to_string())?;
        let v = rng.random_range(0..pts.len());
        let pulled = pull(&s, v).map_err(|e| e.to_string())?;
        let h2 = pull_heights(&s, &heights, v).map_err(|e| e.to_string())?;
        let again = regular_subdivision(&pts, &h2).map_err(|e| e.to_string())?;
        ensure(again == pulled, || format!("points {pts:?}, heights {heights:?}, pulled {v}"))?;
        cases += 1;
        cells += pulled.cells.len();
    }
    Ok(format!("{cases} random coherent subdivisions, {cells} cells after pulling"))
}

fn key_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(crepant::corpus::DEFAULT_SEED ^ 0x4b);
    let mut elementary = 0usize;
    let mut checked = 0usize;
    for d in [3usize, 4, 5] {
        let images = if d == 5 { 3 } else { 10 };
        for _ in 0..images {
            // standard basic (d-2)-simplex in the slice of Z^{d-1}
            let base: Vec<IntVector> = (0..d - 1)
                .map(|i| {
                    let mut v = vec![BigInt::zero(); d - 1];
                    v[0] = BigInt::from(1);
                    if i > 0 {
                        v[i] = BigInt::from(1);
                    }
                    v
                })
                .collect();
            let a = random_slice_transform(&mut rng, d - 1);
            let base = transform_points(&a, &base);
            ensure(is_basic_simplex(&base).unwrap_or(false), || "transformed base is not basic".into())?;
            let mut prism: Vec<IntVector> = Vec::new();
            for v in &base {
                for t in 0..=3 {
                    let mut p = v.clone();
                    p.push(BigInt::from(t));
                    prism.push(p);
                }
            }
            for s in itertools_combinations(prism.len(), d) {
                let pts: Vec<IntVector> = s.iter().map(|&i| prism[i].clone()).collect();
                let Ok(el) = is_elementary_simplex(&pts) else { continue };
                checked += 1;
                if el {
                    elementary += 1;
                    ensure(is_basic_simplex(&pts).unwrap(), || format!("elementary non-basic {pts:?}"))?;
                }
            }
        }
    }
    Ok(format!("{checked} simplices in prisms of height 3, {elementary} elementary, all basic"))
}

fn itertools_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(k).collect()
}

fn hypersurface_family() -> Outcome {
    let spot = |d: usize, k: i64, want: &[i64]| -> Result<(), String> {
        let got = hypersurface_cohomology(d, k);
        ensure(got == ivec(want), || format!("({d},{k}): {got:?}"))
    };
    for k in 1..=4 {
        spot(2, k, &[1, k - 1])?;
    }
    spot(3, 2, &[1, 3, 0])?;
    let mut n = 0;
    for d in 2..=5 {
        for k in 1..=4 {
            let closed = hypersurface_cohomology(d, k);
            let direct = cohomology_dims(&hypersurface_simplex(d, k)).map_err(|e| e.to_string())?;
            ensure(closed == direct, || format!("({d},{k}): {closed:?} vs {direct:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} (d,k) pairs agree with the delta vector"))
}

fn tuples(len: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t: Vec<i64>| {
                let lo = t.last().copied().unwrap_or(1);
                (lo..=max).map(move |k| {
                    let mut u = t.clone();
                    u.push(k);
                    u
                })
            })
            .collect();
    }
    out
}

fn rp_family() -> Outcome {
    let mut with_one = 0;
    let mut without = 0;
    for d in 2..=5usize {
        for ks in tuples(d - 1, 4) {
            let p = rp_polytope(&ks);
            let e = ehrhart_polynomial(&p).map_err(|e| e.to_string())?;
            let sym: Vec<BigRational> = elementary_symmetric(&ks).into_iter().map(BigRational::from_integer).collect();
            ensure(e.coefficients == sym, || format!("{ks:?}: Ehrhart {:?}", e.coefficients))?;
            let cone = cone_over(&p).map_err(|e| e.to_string())?;
            let mut hb = cone.dual_cone().map_err(|e| e.to_string())?.hilbert_basis();
            hb.sort();
            let mut expected: Vec<IntVector> = Vec::new();
            let unit = |i: usize| {
                let mut v = vec![BigInt::zero(); d];
                v[i] = BigInt::from(1);
                v
            };
            let has_one = ks.contains(&1);
            for i in 0..d {
                // e_1^* is the sum of k_i e_1^* - e_{i+1}^* and e_{i+1}^* when k_i = 1
                if i == 0 && has_one {
                    continue;
                }
                expected.push(unit(i));
            }
            for (i, &k) in ks.iter().enumerate() {
                let mut v = vec![BigInt::zero(); d];
                v[0] = BigInt::from(k);
                v[i + 1] = BigInt::from(-1);
                expected.push(v);
            }
            expected.sort();
            ensure(hb == expected, || format!("{ks:?}: Hilbert basis {hb:?}"))?;
            let emb = cone.embedding_dimension().map_err(|e| e.to_string())?;
            if has_one {
                ensure(emb == 2 * d - 2, || format!("{ks:?}: embedding dimension {emb}"))?;
                with_one += 1;
            } else {
                ensure(emb == 2 * d - 1, || format!("{ks:?}: embedding dimension {emb}"))?;
                without += 1;
            }
        }
    }
    Ok(format!(
        "Ehr = prod(k_i nu + 1) everywhere; embedding dim 2d-1 on {without} tuples with all k_i >= 2; \
         {with_one} tuples containing k_i = 1 have 2d-2 (e_1^* reducible, see README)"
    ))
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn zonotope_counts() -> Outcome {
    let mut parts = Vec::new();
    for d in 2..=4usize {
        let z = zonotope(d);
        let polar = zonotope_polar(d);
        let got = (z.vertices().len(), polar.vertices().len(), polar.normalized_volume());
        let want = (2 * ((1usize << (d - 1)) - 1), d * (d - 1), BigInt::from(binom(2 * (d as u64 - 1), d as u64 - 1)));
        ensure(got == want, || format!("d={d}: {got:?}, expected {want:?}"))?;
        parts.push(format!("d={d}: {}/{}/{}", got.0, got.1, got.2));
    }
    Ok(parts.join(", "))
}

fn koszul(resolved: &[Result<CertifiedTriangulation, String>]) -> Outcome {
    let mut n = 0;
    for t in resolved.iter().flatten() {
        ensure(koszul_check(&t.triangulation), || {
            format!("non-edge minimal non-face in {:?}", minimal_nonfaces(&t.triangulation))
        })?;
        n += 1;
    }
    ensure(n == resolved.len(), || "some corpus entries did not resolve".into())?;
    let seg = Triangulation::new(vec![ivec(&[1, 0]), ivec(&[1, 1]), ivec(&[1, 2])], vec![vec![0, 2]]);
    ensure(!koszul_check(&seg), || "segment counterexample accepted".into())?;
    Ok(format!("{n} resolutions Koszul; cardinality-1 counterexample rejected"))
}

fn order_independence(corpus: &[FreeParameterSequence]) -> Outcome {
    let picked: Vec<&FreeParameterSequence> = corpus.iter().filter(|m| m.d() >= 3).take(30).collect();
    ensure(picked.len() >= 20, || "corpus too small".into())?;
    let results: Vec<Result<(), String>> = picked
        .par_iter()
        .enumerate()
        .map(|(i, m)| {
            let delta_sum: BigInt = ehrhart_polynomial(&m.build().unwrap()).map_err(|e| e.to_string())?.delta.iter().sum();
            for order in [PullOrder::Lex, PullOrder::Given, PullOrder::Seeded(i as u64 + 1)] {
                let t = resolve_with(m, order).map_err(|e| e.to_string())?;
                ensure(t.is_bc(), || format!("{m:?} {order:?}: flags {:?}", t.flags))?;
                ensure(BigInt::from(t.triangulation.len()) == delta_sum, || {
                    format!("{m:?} {order:?}: {} simplices, sum delta {delta_sum}", t.triangulation.len())
                })?;
            }
            Ok(())
        })
        .collect();
    for r in results {
        r?;
    }
    Ok(format!("{} polytopes x 3 pull orders, counts equal sum of delta", picked.len()))
}

struct Invariants {
    delta: Vec<BigInt>,
    volume: BigInt,
    multiplicity: Option<BigInt>,
    gorenstein: bool,
}

fn invariants_of_polytope(p: &LatticePolytope) -> Result<Invariants, String> {
    let cone = cone_over(p).map_err(|e| e.to_string())?;
    Ok(Invariants {
        delta: ehrhart_polynomial(p).map_err(|e| e.to_string())?.delta,
        volume: p.normalized_volume(),
        multiplicity: cone.multiplicity().ok(),
        gorenstein: cone.gorenstein_functional().is_some(),
    })
}

fn invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(crepant::corpus::DEFAULT_SEED ^ 0x1a);
    let mut polytopes: Vec<LatticePolytope> = admissible_corpus(&CorpusSpec { count: 20, max_points: 60, ..Default::default() })
        .iter()
        .map(|m| m.build().unwrap())
        .collect();
    polytopes.push(hypersurface_simplex(3, 3));
    polytopes.push(hypersurface_simplex(4, 2));
    polytopes.push(rp_polytope(&[2, 3]));
    let mut n = 0;
    for p in &polytopes {
        let base = invariants_of_polytope(p)?;
        for _ in 0..10 {
            let a = random_slice_transform(&mut rng, p.ambient_dim());
            let q = transform_polytope(&a, p);
            let inv = invariants_of_polytope(&q)?;
            ensure(
                inv.delta == base.delta
                    && inv.volume == base.volume
                    && inv.multiplicity == base.multiplicity
                    && inv.gorenstein == base.gorenstein,
                || format!("{:?} under {:?}", p.vertices(), a),
            )?;
            n += 1;
        }
    }
    // cones that are not over slice polytopes, including non-Gorenstein ones
    let cones: Vec<Vec<IntVector>> = vec![
        vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[1, 1, 2])],
        vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1])],
        vec![ivec(&[1, 0]), ivec(&[1, 3])],
        vec![ivec(&[2, 1]), ivec(&[1, 3])],
    ];
    let mut non_gorenstein = 0;
    for gens in &cones {
        let c = RationalCone::new(gens).map_err(|e| e.to_string())?;
        let mult = c.multiplicity().ok();
        let gor = c.gorenstein_functional().is_some();
        non_gorenstein += usize::from(!gor);
        for _ in 0..10 {
            let u = random_unimodular(&mut rng, gens[0].len());
            let c2 = RationalCone::new(&transform_points(&u, gens)).map_err(|e| e.to_string())?;
            ensure(c2.multiplicity().ok() == mult && c2.gorenstein_functional().is_some() == gor, || {
                format!("cone {gens:?} under {u:?}")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} transformed instances ({non_gorenstein} non-Gorenstein cones), all invariants equal"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let corpus = corpus();
    let resolved: Vec<Result<CertifiedTriangulation, String>> = corpus.par_iter().map(check_resolution).collect();
    let criteria: Vec<Criterion> = vec![
        ("Ehrhart goldens", Box::new(ehrhart_goldens)),
        ("main theorem on the seeded corpus", Box::new(|| main_theorem(&corpus, &resolved))),
        ("pulling heights round trip", Box::new(pulling_heights_round_trip)),
        ("elementary simplices over basic simplices are basic", Box::new(key_lemma)),
        ("hypersurface cohomology", Box::new(hypersurface_family)),
        ("RP family", Box::new(rp_family)),
        ("zonotope counts", Box::new(zonotope_counts)),
        ("Koszul criterion", Box::new(|| koszul(&resolved))),
        ("pull-order independence", Box::new(|| order_independence(&corpus))),
        ("invariance under affine integral maps", Box::new(invariance)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
