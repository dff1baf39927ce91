use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn icis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icis")).args(args).output().expect("binary runs")
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = icis(&all);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("icis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn index_of_the_cusp() {
    let f = fixture("cusp.germ");
    let (code, v) = json_of(&["index", path(&f)]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "index");
    assert_eq!(v["result"]["index"], 6);
    assert_eq!(v["result"]["quotient_basis"].as_array().unwrap().len(), 6);
    assert_eq!(v["inputs"]["omega"][1], "-2*x");
    for key in ["schema", "command", "inputs", "result", "diagnostics", "timing_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn infinite_index_exits_zero() {
    let (code, v) = json_of(&["index", path(&fixture("node-differential.germ"))]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["index"], "infinite");
}

#[test]
fn real_index_on_fibers_and_smooth_germs() {
    let f = fixture("dy-on-cusp.germ");
    let (code, v) = json_of(&["real-index", path(&f), "--epsilon", "1/8", "--delta", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["real_index"], -1);
    assert_eq!(v["result"]["inertia"]["zero"], 0);
    let (_, v) = json_of(&["real-index", path(&f), "--epsilon", "-1/27", "--delta", "1"]);
    assert_eq!(v["result"]["real_index"], -1);

    let (code, v) = json_of(&["real-index", path(&fixture("monkey-saddle.germ"))]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["real_index"], -2);

    let f = fixture("dx-on-cusp.germ");
    let args = ["real-index", path(&f), "--epsilon", "1/1000", "--delta", "1/2", "--eta", "0,1", "--lambda", "1/10"];
    let (code, v) = json_of(&args);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["real_index"], 0);
    assert_eq!(v["inputs"]["eta"][1], "1");
}

#[test]
fn oracle_counts_and_recovers() {
    let f = fixture("cusp.germ");
    let (code, v) = json_of(&["oracle", path(&f), "--epsilon", "1/1000", "--delta", "1/4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["zeros"], 6);
    assert_eq!(v["result"]["affine_zeros"], 8);
    assert_eq!(v["result"]["real_index"], 0);

    let (_, v) = json_of(&["oracle", path(&fixture("dy-on-cusp.germ")), "--epsilon", "1/8", "--delta", "1"]);
    assert_eq!(v["result"]["zeros"], 3);
    assert_eq!(v["result"]["real_index"], -1);
    let zeros = v["result"]["real_zeros"].as_array().unwrap();
    assert!(zeros.iter().all(|z| z["sign"].is_i64() && z["t_interval"].is_array()));
}

#[test]
fn eta_seed_is_reproducible() {
    let f = fixture("dy-on-cusp.germ");
    let args = ["oracle", path(&f), "--epsilon", "1/64", "--delta", "1", "--eta-seed", "5", "--lambda", "1/1000"];
    let (code, a) = json_of(&args);
    assert_eq!(code, 0);
    let (_, b) = json_of(&args);
    assert_eq!(a["inputs"]["eta"], b["inputs"]["eta"]);
    assert_eq!(a["result"], b["result"]);
}

#[test]
fn hessian_verify_reports_both_routes() {
    let f = fixture("space-curve.germ");
    let (code, v) = json_of(&["hessian-verify", path(&f), "--trials", "7", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["symbolic"], true);
    assert_eq!(v["result"]["passed"], true);
    let trials = v["result"]["trials"].as_array().unwrap();
    assert_eq!(trials.len() + v["result"]["skipped"].as_u64().unwrap() as usize, 7);
    assert!(trials.iter().all(|t| t["direct"] == t["formula"]));
}

#[test]
fn reports_are_deterministic() {
    let cases: Vec<Vec<String>> = vec![
        vec!["index".into(), path(&fixture("space-curve.germ")).into()],
        vec!["hessian-verify".into(), path(&fixture("cusp.germ")).into(), "--seed".into(), "11".into()],
        vec!["real-index".into(), path(&fixture("dy-on-a4.germ")).into(), "--epsilon".into(), "1/32".into(), "--delta".into(), "1".into()],
    ];
    for args in cases {
        let mut args: Vec<&str> = args.iter().map(String::as_str).collect();
        args.push("--json");
        let strip = |o: Output| {
            let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
            v.as_object_mut().unwrap().remove("timing_ms");
            serde_json::to_string(&v).unwrap()
        };
        assert_eq!(strip(icis(&args)), strip(icis(&args)));
    }
}

#[test]
fn parse_errors_exit_two_with_location() {
    let p = write_temp("bad.germ", "vars: x y\nf: x^2 + z\nomega: 1, 0\n");
    let (code, v) = json_of(&["index", path(&p)]);
    assert_eq!(code, 2);
    assert!(v["result"].is_null());
    let d = &v["diagnostics"][0];
    assert_eq!((d["kind"].as_str(), d["line"].as_u64(), d["column"].as_u64()), (Some("parse"), Some(2), Some(10)));

    let p = write_temp("arity.germ", "vars: x y\nf: x^2 + y^3\nomega: 1, 0, 0\n");
    let (code, v) = json_of(&["index", path(&p)]);
    assert_eq!(code, 2);
    assert_eq!(v["diagnostics"][0]["kind"], "arity");

    let (code, _) = json_of(&["real-index", path(&fixture("dy-on-cusp.germ")), "--epsilon", "0.125", "--delta", "1"]);
    assert_eq!(code, 2);
    let (code, v) = json_of(&["index", "/nonexistent/file.germ"]);
    assert_eq!(code, 2);
    assert_eq!(v["diagnostics"][0]["kind"], "io");
}

#[test]
fn precondition_errors_exit_three() {
    let p = write_temp("unit.germ", "vars: x y\nf: x^2 + 1\nomega: 1, 0\n");
    let (code, v) = json_of(&["index", path(&p)]);
    assert_eq!(code, 3);
    assert_eq!(v["diagnostics"][0]["kind"], "precondition");
    assert_eq!(v["diagnostics"][0]["line"], 2);

    // the fiber oracle is for plane curves
    let (code, _) = json_of(&["oracle", path(&fixture("space-curve.germ")), "--epsilon", "1/2,1/3", "--delta", "1"]);
    assert_eq!(code, 3);
    let (code, _) = json_of(&["hessian-verify", path(&fixture("monkey-saddle.germ"))]);
    assert_eq!(code, 3);
    let (code, _) = json_of(&["real-index", path(&fixture("node-differential.germ")), "--epsilon", "1/4", "--delta", "1"]);
    assert_eq!(code, 3);
}

#[test]
fn degenerate_configurations_exit_four() {
    // eps = 0 is the singular fiber itself
    let (code, v) = json_of(&["oracle", path(&fixture("dy-on-cusp.germ")), "--epsilon", "0", "--delta", "1"]);
    assert_eq!(code, 4);
    assert_eq!(v["diagnostics"][0]["kind"], "degenerate");
    // double zeros: the trace form needs a perturbation
    let (code, _) = json_of(&["real-index", path(&fixture("dx-on-cusp.germ")), "--epsilon", "1/1000", "--delta", "1/2"]);
    assert_eq!(code, 4);
}

#[test]
fn selftest_passes() {
    let (code, v) = json_of(&["selftest"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["failed"], 0);
    assert!(v["result"]["passed"].as_u64().unwrap() >= 20);
}

#[test]
fn human_output_and_usage_errors() {
    let out = icis(&["index", path(&fixture("cusp.germ"))]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("index: 6"));
    let out = icis(&["index"]);
    assert_eq!(out.status.code(), Some(2));
    let out = icis(&["real-index", path(&fixture("dy-on-cusp.germ"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--epsilon"));
}
