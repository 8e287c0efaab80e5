//! `crepant`: build Nakajima polytopes, resolve them by basic coherent
//! triangulations, and report Ehrhart data.
//!
//! Exit codes: 0 ok, 2 bad input, 3 a verifier failed, 4 a closed-form
//! cross-check disagreed.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use crepant::cone::{cone_over, RationalCone};
use crepant::corpus::DEFAULT_SEED;
use crepant::ehrhart::{
    cohomology_dims, ehrhart_polynomial, elementary_symmetric, hypersurface_cohomology, rp_cohomology,
};
use crepant::io;
use crepant::nakajima::{delpezzo_polytope, hypersurface_simplex, rp_polytope, zonotope, zonotope_polar};
use crepant::triangulation::{
    fano_canonical, koszul_check, resolve_with, uses_all_points, verify_basic, verify_coherent, verify_covering,
    verify_maximal, PullOrder,
};
use crepant::{FreeParameterSequence, LatticePolytope};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "crepant", version, about = "Nakajima polytopes, b.c.-triangulations and Ehrhart data")]
struct Cli {
    /// Print canonical JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the polytope of a parameter sequence.
    Build {
        /// Parameter sequence `{"d":..,"rows":[..]}`, inline or a file path.
        #[arg(short = 'm', long = "matrix")]
        matrix: String,
    },
    /// Compute a certified basic coherent triangulation.
    Resolve {
        #[arg(short = 'm', long = "matrix")]
        matrix: String,
        #[arg(long, value_enum, default_value_t = Order::Lex)]
        order: Order,
        /// Seed for `--order seeded`.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Ehrhart data, cohomology dimensions and cone invariants of a
    /// polytope, or of a family with its closed-form cross-check:
    /// `hypersurface D K`, `rp K1 K2 ..`, `zonotope D`, `fano-hexagon D`.
    Report {
        #[arg(short = 'm', long = "matrix", conflicts_with = "polytope")]
        matrix: Option<String>,
        /// Polytope `{"vertices":[..]}`, inline or a file path.
        #[arg(short = 'p', long)]
        polytope: Option<String>,
        family: Vec<String>,
    },
    /// Re-check a stored triangulation certificate.
    Verify {
        /// Certificate JSON as written by `resolve --json`, inline or a file.
        certificate: String,
    },
    /// List the lattice points of a polytope or of its dilation.
    Points {
        #[arg(short = 'm', long = "matrix", conflicts_with = "polytope")]
        matrix: Option<String>,
        #[arg(short = 'p', long)]
        polytope: Option<String>,
        #[arg(long, default_value_t = 1)]
        nu: i64,
    },
    /// Hilbert basis of a cone (or of the cone over a polytope).
    Hilbert {
        #[arg(short = 'm', long = "matrix", conflicts_with_all = ["polytope", "cone"])]
        matrix: Option<String>,
        #[arg(short = 'p', long, conflicts_with = "cone")]
        polytope: Option<String>,
        /// Cone `{"generators":[..]}`, inline or a file path.
        #[arg(short = 'c', long)]
        cone: Option<String>,
        /// Use the dual cone.
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Given,
    Seeded,
}

enum Failure {
    Input(String),
    Verifier(String),
    CrossCheck(String),
}

impl From<crepant::Error> for Failure {
    fn from(e: crepant::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verifier(out)) => {
            print!("{out}");
            eprintln!("error: verification failed");
            ExitCode::from(3)
        }
        Err(Failure::CrossCheck(out)) => {
            print!("{out}");
            eprintln!("error: closed-form cross-check failed");
            ExitCode::from(4)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Build { matrix } => build(cli.json, &read_sequence(matrix)?),
        Command::Resolve { matrix, order, seed } => {
            let order = match order {
                Order::Lex => PullOrder::Lex,
                Order::Given => PullOrder::Given,
                Order::Seeded => PullOrder::Seeded(*seed),
            };
            resolve(cli.json, &read_sequence(matrix)?, order)
        }
        Command::Report { matrix, polytope, family } => {
            if !family.is_empty() {
                if matrix.is_some() || polytope.is_some() {
                    return Err(Failure::Input("give either a family or an input polytope".into()));
                }
                return report_family(cli.json, family);
            }
            let p = read_polytope(matrix.as_deref(), polytope.as_deref())?;
            let (text, value) = report_polytope(&p)?;
            Ok(render(cli.json, text, value))
        }
        Command::Verify { certificate } => verify(cli.json, certificate),
        Command::Points { matrix, polytope, nu } => {
            let p = read_polytope(matrix.as_deref(), polytope.as_deref())?.dilate(*nu)?;
            let pts = p.lattice_points();
            let text = pts.iter().map(|x| format!("{}\n", fmt_vec(x))).collect();
            Ok(render(cli.json, text, io::vectors_to_json(pts)))
        }
        Command::Hilbert { matrix, polytope, cone, dual } => {
            let mut c = match cone {
                Some(src) => {
                    let v = read_json(src)?;
                    let gens = v.get("generators").ok_or_else(|| Failure::Input("missing \"generators\"".into()))?;
                    let gens = io::vectors_from_json(gens)?;
                    check_dim(gens.first().map_or(0, Vec::len))?;
                    RationalCone::new(&gens)?
                }
                None => cone_over(&read_polytope(matrix.as_deref(), polytope.as_deref())?)?,
            };
            if *dual {
                c = c.dual_cone()?;
            }
            let hb = c.hilbert_basis();
            let text = hb.iter().map(|x| format!("{}\n", fmt_vec(x))).collect();
            Ok(render(cli.json, text, io::vectors_to_json(&hb)))
        }
    }
}

fn render(json: bool, text: String, value: Value) -> String {
    if json {
        io::to_canonical_string(&value) + "\n"
    } else {
        text
    }
}

fn max_dim() -> usize {
    std::env::var("CREPANT_MAX_DIM").ok().and_then(|s| s.parse().ok()).unwrap_or(6)
}

fn check_dim(d: usize) -> Result<(), Failure> {
    let cap = max_dim();
    if d > cap {
        return Err(Failure::Input(format!("dimension {d} exceeds CREPANT_MAX_DIM = {cap}")));
    }
    Ok(())
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
fn read_json(src: &str) -> Result<Value, Failure> {
    let trimmed = src.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        src.to_string()
    } else {
        std::fs::read_to_string(Path::new(src)).map_err(|e| Failure::Input(format!("{src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("bad JSON: {e}")))
}

fn read_sequence(src: &str) -> Result<FreeParameterSequence, Failure> {
    let m = io::sequence_from_json(&read_json(src)?)?;
    check_dim(m.d())?;
    Ok(m)
}

fn read_polytope(matrix: Option<&str>, polytope: Option<&str>) -> Result<LatticePolytope, Failure> {
    match (matrix, polytope) {
        (Some(m), _) => Ok(read_sequence(m)?.build()?),
        (None, Some(p)) => {
            let p = io::polytope_from_json(&read_json(p)?)?;
            check_dim(p.ambient_dim())?;
            Ok(p)
        }
        (None, None) => Err(Failure::Input("an input is required: -m <sequence> or -p <polytope>".into())),
    }
}

fn fmt_vec(v: &[BigInt]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn fmt_list<T: ToString>(v: &[T]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

fn build(json: bool, m: &FreeParameterSequence) -> Outcome {
    let p = m.build()?;
    let d = m.d();
    let nv = p.vertices().len();
    let nf = p.facets().len();
    let np = p.lattice_points().len();
    let bounds_ok = d <= nv && nv <= 1 << (d - 1) && (d == 1 || (d <= nf && nf <= 2 * (d - 1)));
    let mut text = String::new();
    writeln!(text, "dim={} vertices={nv} facets={nf} lattice_points={np} bounds={}", p.dim(), mark(bounds_ok)).unwrap();
    for v in p.vertices() {
        writeln!(text, "  {}", fmt_vec(v)).unwrap();
    }
    Ok(render(json, text, io::polytope_to_json(&p)))
}

fn resolve(json: bool, m: &FreeParameterSequence, order: PullOrder) -> Outcome {
    let t = resolve_with(m, order)?;
    let covering = verify_covering(&t.triangulation);
    let koszul = koszul_check(&t.triangulation);
    let summary = format!(
        "maximal={} basic={} coherent={} simplices={} koszul={}\n",
        mark(t.flags.maximal),
        mark(t.flags.basic),
        mark(t.flags.coherent),
        t.triangulation.len(),
        mark(koszul)
    );
    let out = render(json, summary, io::triangulation_to_json(&t));
    if t.is_bc() && covering {
        Ok(out)
    } else {
        Err(Failure::Verifier(out))
    }
}

fn verify(json: bool, src: &str) -> Outcome {
    let (t, heights, stored) = io::triangulation_from_json(&read_json(src)?)?;
    check_dim(t.points.first().map_or(0, Vec::len))?;
    let maximal = verify_maximal(&t);
    let basic = verify_basic(&t);
    let coherent = verify_coherent(&t, &heights);
    let covering = verify_covering(&t);
    let all_points = uses_all_points(&t);
    let koszul = koszul_check(&t);
    let consistent = stored.is_none_or(|f| f.maximal == maximal && f.basic == basic && f.coherent == coherent);
    let text = format!(
        "maximal={} basic={} coherent={} covering={} all_points={} simplices={} koszul={} stored_flags={}\n",
        mark(maximal),
        mark(basic),
        mark(coherent),
        mark(covering),
        mark(all_points),
        t.len(),
        mark(koszul),
        mark(consistent)
    );
    let value = json!({
        "maximal": maximal, "basic": basic, "coherent": coherent, "covering": covering,
        "all_points": all_points, "koszul": koszul, "simplices": t.len(), "stored_flags_match": consistent,
    });
    let out = render(json, text, value);
    if maximal && basic && coherent && covering && consistent {
        Ok(out)
    } else {
        Err(Failure::Verifier(out))
    }
}

fn report_polytope(p: &LatticePolytope) -> Result<(String, Value), Failure> {
    let e = ehrhart_polynomial(p)?;
    let coh = cohomology_dims(p)?;
    let mut text = String::new();
    writeln!(text, "ehrhart={}", fmt_list(&e.coefficients)).unwrap();
    writeln!(text, "delta={}", fmt_list(&e.delta)).unwrap();
    writeln!(text, "cohomology={}", fmt_list(&coh)).unwrap();
    let mut value = io::ehrhart_to_json(&e, &coh);
    let exceptional = p.exceptional_points().len();
    writeln!(text, "exceptional_rays={exceptional}").unwrap();
    value["exceptional_rays"] = json!(exceptional);
    if p.is_slice() {
        let cone = cone_over(p)?;
        let gor = cone.gorenstein_functional();
        let emb = cone.embedding_dimension().ok();
        writeln!(text, "gorenstein={}", gor.as_deref().map_or("none".into(), fmt_vec)).unwrap();
        match emb {
            Some(n) => writeln!(text, "embedding_dim={n}").unwrap(),
            None => writeln!(text, "embedding_dim=n/a").unwrap(),
        }
        value["gorenstein"] = gor.as_deref().map_or(Value::Null, io::vector_to_json);
        value["embedding_dimension"] = emb.map_or(Value::Null, |n| json!(n));
    }
    Ok((text, value))
}

fn parse_ints(args: &[String]) -> Result<Vec<i64>, Failure> {
    args.iter()
        .map(|a| a.parse::<i64>().map_err(|_| Failure::Input(format!("not an integer: {a}"))))
        .collect()
}

fn report_family(json: bool, family: &[String]) -> Outcome {
    let name = family[0].as_str();
    let args = parse_ints(&family[1..])?;
    let need = |n: usize| -> Result<(), Failure> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Failure::Input(format!("{name} takes {n} integer argument(s)")))
        }
    };
    let positive = |x: i64, what: &str| -> Result<usize, Failure> {
        if x >= 1 {
            Ok(x as usize)
        } else {
            Err(Failure::Input(format!("{what} must be positive")))
        }
    };
    let (p, checks): (LatticePolytope, Vec<(String, bool)>) = match name {
        "hypersurface" => {
            need(2)?;
            let d = positive(args[0], "d")?;
            positive(args[1], "k")?;
            check_dim(d)?;
            if d < 2 {
                return Err(Failure::Input("hypersurface needs d >= 2".into()));
            }
            let p = hypersurface_simplex(d, args[1]);
            let ok = cohomology_dims(&p)? == hypersurface_cohomology(d, args[1]);
            (p, vec![("cohomology closed form".into(), ok)])
        }
        "rp" => {
            if args.is_empty() {
                return Err(Failure::Input("rp takes at least one k".into()));
            }
            for &k in &args {
                positive(k, "k")?;
            }
            check_dim(args.len() + 1)?;
            let p = rp_polytope(&args);
            let e = ehrhart_polynomial(&p)?;
            let sym: Vec<BigRational> = elementary_symmetric(&args).into_iter().map(BigRational::from_integer).collect();
            let ehr = e.coefficients == sym;
            let coh = cohomology_dims(&p)? == rp_cohomology(&args);
            (p, vec![("ehrhart product formula".into(), ehr), ("cohomology closed form".into(), coh)])
        }
        "zonotope" => {
            need(1)?;
            let d = positive(args[0], "d")?;
            check_dim(d)?;
            if d < 2 {
                return Err(Failure::Input("zonotope needs d >= 2".into()));
            }
            let z = zonotope(d);
            let polar = zonotope_polar(d);
            let nv = z.vertices().len();
            let pv = polar.vertices().len();
            let vol = polar.normalized_volume();
            let want_vol = crepant::ehrhart::binomial(2 * (d as i64 - 1), d as i64 - 1);
            let checks = vec![
                (format!("vertices {nv} = 2(2^(d-1)-1)"), nv == 2 * ((1usize << (d - 1)) - 1)),
                (format!("polar vertices {pv} = d(d-1)"), pv == d * (d - 1)),
                (format!("polar volume {vol} = C(2(d-1),d-1)"), vol == want_vol),
            ];
            (z, checks)
        }
        "fano-hexagon" => {
            need(1)?;
            let d = positive(args[0], "d")?;
            check_dim(d)?;
            let q = delpezzo_polytope(d)?;
            let half = (1..=(d - 1) / 2).product::<usize>();
            let want = (1..=d).product::<usize>() / (half * half);
            let nf = q.facets().len();
            let t = fano_canonical(&q)?;
            let checks = vec![
                (format!("facets {nf} = d!/(((d-1)/2)!)^2"), nf == want),
                (format!("canonical triangulation: {} basic coherent cones", t.triangulation.len()), {
                    t.flags.basic && t.flags.coherent && t.triangulation.len() == nf
                }),
            ];
            (q, checks)
        }
        other => return Err(Failure::Input(format!("unknown family {other}"))),
    };
    let (mut text, mut value) = report_polytope(&p)?;
    writeln!(text, "vertices={}", p.vertices().len()).unwrap();
    value["vertices"] = json!(p.vertices().len());
    let mut all = true;
    let mut checks_json = Vec::new();
    for (what, ok) in &checks {
        all &= ok;
        writeln!(text, "closed-form {}: {what}", if *ok { "PASS" } else { "FAIL" }).unwrap();
        checks_json.push(json!({ "check": what, "pass": ok }));
    }
    value["cross_checks"] = Value::Array(checks_json);
    let out = render(json, text, value);
    if all {
        Ok(out)
    } else {
        Err(Failure::CrossCheck(out))
    }
}
