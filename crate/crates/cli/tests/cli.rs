use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ncgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncgeo")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = ncgeo(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn all_pass(r: &Value) -> bool {
    let certs = r["certifications"].as_array().expect("certifications");
    !certs.is_empty() && certs.iter().all(|c| c["status"] == "pass")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncgeo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn rational(v: &Value) -> String {
    assert_eq!(v["om"], "0/1", "{v} is not rational");
    v["re"].as_str().unwrap().to_string()
}

#[test]
fn report_envelope() {
    let r = report(&["info"]);
    assert_eq!(r["schema"], "ncgeo/1");
    assert_eq!(r["command"], "info");
    assert_eq!(r["results"]["order"], 12);
    assert_eq!(r["results"]["class"], serde_json::json!(["t", "x", "y", "z"]));
    assert_eq!(r["results"]["product_pattern"], "squares-mixed");
    let hash = r["versions"]["group_spec_hash"].as_str().unwrap();
    assert_eq!(hash.len(), 64);
    assert!(all_pass(&r));
}

#[test]
fn extdims_dimensions() {
    let r = report(&["extdims"]);
    assert_eq!(r["results"]["dims"], serde_json::json!([1, 4, 8, 11, 12, 12, 11]));
    assert!(all_pass(&r));
    let s3 = report(&["extdims", "--group", "s3", "--max-degree", "4"]);
    assert_eq!(s3["results"]["dims"], serde_json::json!([1, 3, 4, 3, 1]));
}

#[test]
fn extdims_refuses_past_the_cap() {
    let out = ncgeo(&["extdims", "--max-degree", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"]["kind"], "scale-cap");
}

#[test]
fn levi_civita_flags() {
    let r = report(&["levi-civita"]);
    let flags = &r["results"]["connection"]["flags"];
    for key in ["torsion_free", "cotorsion_free", "regular", "ricci_flat_canonical", "ricci_flat_antisymmetrizer"] {
        assert_eq!(flags[key], true, "{key}");
    }
    let t = &r["results"]["connection"]["comps"]["t"];
    // e_t − θ/4: the t-coefficient is 3/4, the others −1/4, at every element
    assert_eq!(rational(&t["t"]["e"]), "3/4");
    assert_eq!(rational(&t["x"]["t2"]), "-1/4");
    assert!(all_pass(&r));
}

#[test]
fn degenerate_metric_is_a_precondition_failure() {
    let out = ncgeo(&["metric", "--mu", "-1/4"]);
    assert_eq!(out.status.code(), Some(2));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"]["kind"], "degenerate-metric");
}

#[test]
fn malformed_group_specs() {
    let out = ncgeo(&["info", "--group", "nosuch"]);
    assert_eq!(out.status.code(), Some(65));
    let broken = temp_file("broken.json", "{\"names\": 3}");
    assert_eq!(ncgeo(&["info", "--group", broken.to_str().unwrap()]).status.code(), Some(65));
    let table = "[[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]";
    let loop5 = temp_file("loop.json", &format!("{{\"names\":[\"e\",\"a\",\"b\",\"c\",\"d\"],\"table\":{table}}}"));
    let out = ncgeo(&["info", "--group", loop5.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(65));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"]["triple"].as_array().map(Vec::len), Some(3));
}

#[test]
fn group_spec_file_matches_builtin() {
    let s3 = ncgeo::group::FiniteGroup::builtin("s3").unwrap();
    let path = temp_file("s3.json", &serde_json::to_string(&s3.to_spec()).unwrap());
    let from_file = report(&["extdims", "--group", path.to_str().unwrap(), "--max-degree", "4"]);
    let builtin = report(&["extdims", "--group", "s3", "--max-degree", "4"]);
    assert_eq!(from_file["versions"]["group_spec_hash"], builtin["versions"]["group_spec_hash"]);
    assert_eq!(from_file["results"], builtin["results"]);
}

#[test]
fn usage_errors() {
    assert_eq!(ncgeo(&["bogus"]).status.code(), Some(64));
    assert_eq!(ncgeo(&["metric", "--mu", "one"]).status.code(), Some(64));
    assert_eq!(ncgeo(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_byte_identical() {
    for args in [&["extdims"][..], &["connections"], &["flat-u1", "--check-families"]] {
        let a = ncgeo(args);
        let b = ncgeo(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn cohomology_fragment() {
    let r = report(&["cohomology"]);
    let res = &r["results"];
    assert_eq!(res["h1_dim"], 1);
    assert_eq!(res["ker_d1"], 12);
    assert_eq!(res["im_d0"], 11);
    assert_eq!(res["representative"], "theta");
    assert!(all_pass(&r));
}

#[test]
fn solver_commands_certify() {
    for args in [
        &["connections"][..],
        &["ricci-flat"],
        &["ricci-flat", "--lift", "antisymmetrizer"],
        &["curvature"],
        &["ricci"],
        &["relations"],
        &["metric", "--mu", "2/3"],
        &["laplacian", "--spectrum"],
        &["flat-u1", "--check-families"],
        &["s4-check"],
    ] {
        let r = report(args);
        assert!(all_pass(&r), "{args:?}");
    }
}

#[test]
fn connection_moduli() {
    let r = report(&["connections", "--mu", "1"]);
    assert_eq!(r["results"]["torsion_free"]["dimension"], 36);
    assert_eq!(r["results"]["torsion_cotorsion_free"]["dimension"], 9);
    let rf = report(&["ricci-flat"]);
    assert_eq!(rf["results"]["family_dimension"], 36);
    assert_eq!(rf["results"]["diagonal_rank"], 36);
}

#[test]
fn dirac_spectrum_at_zero() {
    let r = report(&["dirac", "--mu", "0", "--spectrum", "--eigenbasis"]);
    assert!(all_pass(&r));
    let spectrum = r["results"]["spectrum"].as_array().unwrap();
    let total: u64 = spectrum.iter().map(|p| p["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(total, 36);
    assert_eq!(r["results"]["eigenbasis"].as_array().unwrap().len(), 36);
}

#[test]
fn fourier_of_a_delta() {
    let f = temp_file("delta.json", "{\"e\": \"4\"}");
    let r = report(&["fourier", f.to_str().unwrap()]);
    assert!(all_pass(&r));
    let c = &r["results"]["coefficients"];
    // the trivial coefficient is the mean value, 4/12
    assert_eq!(rational(&c["p0"]), "1/3");
}

#[test]
fn curvature_of_a_supplied_connection() {
    let zero = temp_file("zero.json", "{\"comps\": {}}");
    let r = report(&["curvature", "--connection", zero.to_str().unwrap()]);
    let curv = r["results"]["curvature"].as_array().unwrap();
    assert!(curv.iter().all(|w| w["coeffs"].as_object().unwrap().is_empty()));
    let ric = report(&["ricci", "--connection", zero.to_str().unwrap()]);
    assert_eq!(ric["results"]["ricci_zero"], true);
}
