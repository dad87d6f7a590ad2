use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn starq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starq")).args(args).output().expect("spawn starq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = starq(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&ok(&all)).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn standard_preset() {
    assert_eq!(ok(&["star", "p", "q"]), "q*p - i*h\n");
    assert_eq!(ok(&["star", "q", "p"]), "q*p\n");
    assert_eq!(ok(&["commutator", "p", "q"]), "-i*h\n");
    assert_eq!(ok(&["poisson", "q", "p"]), "-1\n");
}

#[test]
fn lie_commands() {
    assert_eq!(ok(&["bch", "X", "Y", "--order", "2"]), "h*X + h*Y + (1/2)*h^2*Z\n");
    assert_eq!(ok(&["gutt", "X", "Y"]), "X*Y + (1/2)*i*h*Z\n");
    assert_eq!(ok(&["poisson", "H", "E", "--algebra", "sl2"]), "2*E\n");
    assert_eq!(ok(&["bch", "H", "E", "--order", "1", "--algebra", "sl2"]), "h*H + h*E\n");
}

#[test]
fn operators() {
    assert_eq!(ok(&["rep", "--ordering", "std", "q^2*p"]), "-i*h*q^2*Dq\n");
    assert_eq!(ok(&["rep", "--ordering", "weyl", "q*p"]), "-i*h*q*Dq - (1/2)*i*h\n");
    assert_eq!(ok(&["adjoint", "q*Dq"]), "-q*Dq - 1\n");
}

#[test]
fn numeric_commands() {
    assert_eq!(ok(&["seminorm", "q + p", "--R", "1"]), "2\n");
    let out = ok(&["expcheck", "--v", "1", "--alpha", "0.5", "--R", "1", "--k-max", "2"]);
    assert_eq!(out, "K,partial_sum\n0,1\n1,1.5\n2,1.75\nstatus: undecided (tail bound 2.5e-1)\n");
    let out = starq(&["expcheck", "--v", "1", "--alpha", "1", "--R", "1"]);
    assert!(stdout(&out).ends_with("status: diverged (terms do not decrease (ratio 1))\n"));
    assert_eq!(ok(&["weylrel", "--v", "1,0", "--w", "0,1"]), "weyl_relation degree<=6 orders<=4: pass (defect_max 0)\n");
}

#[test]
fn json_schemas() {
    let v = json(&["star", "p", "q"]);
    assert_eq!(v["command"], "star");
    assert_eq!(v["result"], "q*p - i*h");
    assert_eq!(v["polynomial"]["generators"], serde_json::json!(["q", "p"]));
    assert_eq!(v["polynomial"]["truncation"], 8);
    let v = json(&["bch", "X", "Y", "--order", "2"]);
    assert_eq!(v["orders"][2], serde_json::json!(["0", "0", "1/2"]));
    let v = json(&["rep", "--ordering", "weyl", "p"]);
    assert_eq!(v["ordering"], "weyl");
    assert_eq!(v["symbol"]["generators"], serde_json::json!(["q", "Dq"]));
    let v = json(&["seminorm", "q"]);
    assert_eq!(v["value"], 1.0);
    let v = json(&["expcheck", "--v", "1", "--alpha", "0.5", "--R", "1"]);
    assert_eq!(v["status"]["status"], "converged");
    let text = ok(&["weylrel", "--v", "1,0", "--w", "0,1", "--json"]);
    assert_eq!(text, "{\"check\":\"weyl_relation\",\"window\":{\"degree\":6,\"orders\":4},\"defect_max\":\"0\",\"status\":\"pass\"}\n");
    let v = json(&["verify", "adjoint"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["suite"], "adjoint");
}

#[test]
fn config_sessions() {
    let cfg = scratch(
        "weyl.json",
        r#"{"generators":["x","y"],"truncation":4,"lambda":{"matrix":[["0","1/2"],["-1/2","0"]]},"z":"-i*h","seminorm":{"weights":[1,2],"R":0.5}}"#,
    );
    let c = cfg.to_str().unwrap();
    assert_eq!(ok(&["--config", c, "star", "x", "y"]), "x*y - (1/2)*i*h\n");
    assert_eq!(ok(&["--config", c, "seminorm", "y", "--R", "1"]), "2\n");
    let lie = scratch(
        "so3.json",
        r#"{"lie":{"dim":3,"basis":["A","B","C"],"brackets":[{"i":0,"j":1,"coeffs":["0","0","1"]},{"i":1,"j":2,"coeffs":["1","0","0"]},{"i":2,"j":0,"coeffs":["0","1","0"]}]}}"#,
    );
    assert_eq!(ok(&["--config", lie.to_str().unwrap(), "poisson", "A", "B"]), "C\n");
    let s = scratch("s.json", r#"{"matrix":[["0","1/2"],["1/2","0"]]}"#);
    // Λ_std - S is the Weyl form
    assert_eq!(ok(&["equiv", "--sym", s.to_str().unwrap(), "q", "p"]), "q*p + (1/2)*i*h\n");
    let v = json(&["equiv", "--sym", s.to_str().unwrap(), "p^2", "q^2"]);
    assert_eq!(v["matches_shifted_form"], true);
}

#[test]
fn truncation_flag() {
    assert_eq!(ok(&["--truncation", "1", "star", "p^2", "q^2"]), "q^2*p^2 - 4*i*h*q*p\n");
}

#[test]
fn usage_errors() {
    for args in [
        vec!["star", "q p", "q"],
        vec!["star", "q^-1", "q"],
        vec!["star", "x", "q"],
        vec!["verify", "nothing"],
        vec!["bch", "X", "Y", "--order", "9"],
        vec!["bch", "X*Y", "Y"],
        vec!["frobnicate"],
        vec!["star", "q"],
    ] {
        let o = starq(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let cfg = scratch("reserved.json", r#"{"generators":["q","h"]}"#);
    let o = starq(&["--config", cfg.to_str().unwrap(), "star", "q", "q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("reserved"));
    let o = starq(&["--config", "/nonexistent/starq.json", "star", "q", "q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn computation_errors() {
    let cfg = scratch("odd.json", r#"{"generators":["a","b","c"],"lambda":{"matrix":[["0","0","0"],["0","0","0"],["0","0","0"]]}}"#);
    let o = starq(&["--config", cfg.to_str().unwrap(), "rep", "a"]);
    assert_eq!(o.status.code(), Some(2));
    let o = starq(&["--config", cfg.to_str().unwrap(), "weylrel", "--v", "1,0", "--w", "0,1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verification_exit_codes() {
    let o = starq(&["verify", "associativity", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS associativity (seed 7)\n"));
    assert!(stdout(&o).ends_with("1/1 suites passed\n"));
    let cfg = scratch("zero.json", r#"{"lambda":{"matrix":[["0","0"],["0","0"]]},"z":"-i*h"}"#);
    let o = starq(&["--config", cfg.to_str().unwrap(), "weylrel", "--v", "1,0", "--w", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    // z must vanish at h = 0
    let cfg = scratch("const_z.json", r#"{"z":"1"}"#);
    let o = starq(&["--config", cfg.to_str().unwrap(), "weylrel", "--v", "1,0", "--w", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec!["verify", "roundtrip", "--seed", "3", "--json"],
        vec!["star", "p^3 + q", "q^2*p", "--json"],
        vec!["expcheck", "--v", "0.3,-1.2", "--alpha", "0.7"],
    ] {
        let a = starq(&args);
        let b = starq(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
