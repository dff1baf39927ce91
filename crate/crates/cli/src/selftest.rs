//! Embedded fixtures with known answers.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::commands::{self, FiberArgs};
use crate::germfile::parse_germ_text;
use crate::report::CliError;

pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! fixture {
    ($name:literal) => {
        Fixture {
            name: $name,
            text: include_str!(concat!("../fixtures/", $name, ".germ")),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("cusp"),
    fixture!("dy-on-cusp"),
    fixture!("dx-on-cusp"),
    fixture!("dx-on-circle"),
    fixture!("dx-on-node"),
    fixture!("dy-on-a4"),
    fixture!("monkey-saddle"),
    fixture!("x2-on-line"),
    fixture!("space-curve"),
    fixture!("node-differential"),
];

enum Check {
    Index(Value),
    /// `(epsilon, delta, (eta, lambda), expected)`; empty epsilon is the smooth case
    RealIndex(&'static str, &'static str, Option<(&'static str, &'static str)>, i64),
    /// `(epsilon, delta, zeros in the ball)`
    Zeros(&'static str, &'static str, usize),
    Hessian,
}

fn checks() -> Vec<(&'static str, Check)> {
    use Check::*;
    vec![
        ("cusp", Index(json!(6))),
        ("cusp", Zeros("1/1000", "1/4", 6)),
        ("cusp", Hessian),
        ("dy-on-cusp", Index(json!(3))),
        ("dy-on-cusp", RealIndex("1/8", "1", None, -1)),
        ("dy-on-cusp", RealIndex("-1/8", "1", None, -1)),
        ("dx-on-cusp", Index(json!(4))),
        ("dx-on-cusp", RealIndex("1/1000", "1/2", Some(("0,1", "1/10")), 0)),
        ("dx-on-circle", Index(json!(2))),
        ("dx-on-circle", RealIndex("1/4", "1", None, 1)),
        ("dx-on-node", Index(json!(2))),
        ("dx-on-node", RealIndex("1/4", "1", None, -1)),
        ("dy-on-a4", Index(json!(5))),
        ("dy-on-a4", RealIndex("1/32", "1", None, -1)),
        ("monkey-saddle", Index(json!(4))),
        ("monkey-saddle", RealIndex("", "", None, -2)),
        ("x2-on-line", Index(json!(2))),
        ("x2-on-line", RealIndex("", "", None, 0)),
        ("space-curve", Index(json!(8))),
        ("space-curve", Hessian),
        ("node-differential", Index(json!("infinite"))),
    ]
}

#[derive(Serialize)]
struct Line {
    fixture: &'static str,
    check: String,
    expected: Value,
    got: Value,
    pass: bool,
}

fn run_check(text: &str, check: &Check) -> Result<(String, Value, Value), CliError> {
    let g = parse_germ_text(text)?;
    let mut scratch = Map::new();
    let field = |v: &Value, k: &str| v.get(k).cloned().unwrap_or(Value::Null);
    Ok(match check {
        Check::Index(want) => {
            let r = commands::index(&g)?.result;
            ("index".into(), want.clone(), field(&r, "index"))
        }
        Check::RealIndex(eps, delta, pert, want) => {
            let args = if eps.is_empty() {
                FiberArgs::default()
            } else {
                FiberArgs {
                    epsilon: Some(eps.to_string()),
                    delta: Some(delta.to_string()),
                    eta: pert.map(|p| p.0.to_string()),
                    lambda: pert.map(|p| p.1.to_string()),
                    eta_seed: None,
                }
            };
            let r = commands::real_index(&g, &args, &mut scratch)?.result;
            let name = if eps.is_empty() {
                "real-index".to_string()
            } else {
                format!("real-index eps={eps} delta={delta}")
            };
            (name, json!(want), field(&r, "real_index"))
        }
        Check::Zeros(eps, delta, want) => {
            let args = FiberArgs {
                epsilon: Some(eps.to_string()),
                delta: Some(delta.to_string()),
                ..FiberArgs::default()
            };
            let r = commands::oracle(&g, &args, &mut scratch)?.result;
            (format!("oracle eps={eps} delta={delta}"), json!(want), field(&r, "zeros"))
        }
        Check::Hessian => {
            let r = commands::hessian_verify(&g, 20, 0)?.result;
            ("hessian-verify".into(), json!(true), field(&r, "passed"))
        }
    })
}

/// Runs every check; the error carries the failure count.
pub fn run() -> Result<Value, (Value, CliError)> {
    let mut lines = Vec::new();
    for (name, check) in checks() {
        let fixture = FIXTURES.iter().find(|f| f.name == name).expect("known fixture");
        let line = match run_check(fixture.text, &check) {
            Ok((check, expected, got)) => Line {
                fixture: name,
                check,
                pass: expected == got,
                expected,
                got,
            },
            Err(e) => Line {
                fixture: name,
                check: "error".into(),
                expected: Value::Null,
                got: json!(e.to_string()),
                pass: false,
            },
        };
        lines.push(line);
    }
    let failed = lines.iter().filter(|l| !l.pass).count();
    let result = json!({
        "checks": lines,
        "passed": lines.len() - failed,
        "failed": failed,
    });
    if failed == 0 {
        Ok(result)
    } else {
        Err((result, CliError::Selftest(failed)))
    }
}
