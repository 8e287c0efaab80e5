use std::process::{Command, Output};

const QUAD_D3: &str = r#"{"d":3,"rows":[[2,0,0],[2,1,0]]}"#;

fn crepant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crepant")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tmp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("crepant-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn build_prints_summary_and_vertices() {
    let o = crepant(&["build", "-m", QUAD_D3]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("dim=2 vertices=4 facets=4 lattice_points=12 bounds=✓\n"), "{out}");
    assert!(out.contains("(1,2,4)"));
}

#[test]
fn build_reads_a_file() {
    let path = tmp_file("quad.json", QUAD_D3);
    let o = crepant(&["build", "--json", "-m", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn resolve_reports_all_flags() {
    let o = crepant(&["resolve", "-m", QUAD_D3]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "maximal=✓ basic=✓ coherent=✓ simplices=12 koszul=✓\n");
}

#[test]
fn resolve_json_is_deterministic() {
    for order in ["lex", "given", "seeded"] {
        let a = crepant(&["resolve", "--json", "--order", order, "-m", QUAD_D3]);
        let b = crepant(&["resolve", "--json", "--order", order, "-m", QUAD_D3]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "order {order}");
    }
}

#[test]
fn certificate_round_trip_and_tampering() {
    let o = crepant(&["resolve", "--json", "-m", QUAD_D3]);
    let cert = stdout(&o);
    let path = tmp_file("cert.json", &cert);
    let ok = crepant(&["verify", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("coherent=✓ covering=✓"));

    // flat heights no longer certify the triangulation
    let mut v: serde_json::Value = serde_json::from_str(&cert).unwrap();
    let n = v["heights"].as_array().unwrap().len();
    v["heights"] = serde_json::json!(vec!["0"; n]);
    let bad = crepant(&["verify", &v.to_string()]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(stdout(&bad).contains("coherent=✗"));

    // dropping a simplex leaves a hole
    let mut v: serde_json::Value = serde_json::from_str(&cert).unwrap();
    v["simplices"].as_array_mut().unwrap().remove(0);
    let bad = crepant(&["verify", &v.to_string()]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(stdout(&bad).contains("covering=✗"));
}

#[test]
fn inadmissible_sequence_names_the_witness() {
    let o = crepant(&["build", "-m", r#"{"d":3,"rows":[[2,0,0],[-1,0,0]]}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 2 negative at vertex (1,0,0)"), "{}", stderr(&o));
}

#[test]
fn bad_input_exits_with_2() {
    assert_eq!(crepant(&["build", "-m", "/nonexistent/seq.json"]).status.code(), Some(2));
    assert_eq!(crepant(&["build", "-m", "{not json"]).status.code(), Some(2));
    assert_eq!(crepant(&["build", "-m", r#"{"d":3,"rows":[[1,1,0]]}"#]).status.code(), Some(2));
    assert_eq!(crepant(&["report", "nosuchfamily", "3"]).status.code(), Some(2));
}

#[test]
fn dimension_cap_is_enforced() {
    let o = Command::new(env!("CARGO_BIN_EXE_crepant"))
        .args(["report", "rp", "1", "2", "3"])
        .env("CREPANT_MAX_DIM", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("CREPANT_MAX_DIM"));
}

#[test]
fn report_polytope() {
    let o = crepant(&["report", "-m", QUAD_D3]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("ehrhart=(1,5,6)\n"), "{out}");
    assert!(out.contains("cohomology=(1,9,2)\n"));
    assert!(out.contains("gorenstein=(1,0,0)\n"));
}

#[test]
fn report_families_pass_their_cross_checks() {
    for args in [
        &["hypersurface", "4", "2"][..],
        &["rp", "2", "3"],
        &["rp", "1", "2", "3"],
        &["zonotope", "4"],
        &["fano-hexagon", "3"],
    ] {
        let mut full = vec!["report"];
        full.extend_from_slice(args);
        let o = crepant(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("closed-form PASS"));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn report_json_has_sorted_keys_and_fractions() {
    let o = crepant(&["--json", "report", "hypersurface", "4", "2"]);
    let out = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["1", "11/3", "4", "4/3"]));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(out, stdout(&crepant(&["--json", "report", "hypersurface", "4", "2"])));
}

#[test]
fn points_of_a_dilation() {
    let o = crepant(&["points", "-m", r#"{"d":2,"rows":[[3,0]]}"#, "--nu", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn hilbert_bases() {
    let o = crepant(&["hilbert", "-c", r#"{"generators":[[1,0],[1,2]]}"#]);
    assert_eq!(stdout(&o), "(1,0)\n(1,1)\n(1,2)\n");
    let o = crepant(&["hilbert", "--dual", "-p", r#"{"vertices":[[1,0],[1,2]]}"#]);
    assert_eq!(stdout(&o), "(0,1)\n(1,0)\n(2,-1)\n");
}
