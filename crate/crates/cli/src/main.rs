//! `icis`: indices of 1-forms on complete intersection germs.

mod commands;
mod germfile;
mod report;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use icis_core::index::GermProblem;
use serde_json::{json, Map, Value};

use commands::{show, FiberArgs, Outcome};
use report::{CliError, Report, EXIT_OK, SCHEMA};

#[derive(Parser, Debug)]
#[command(name = "icis", version, about = "Exact indices of 1-forms on isolated complete intersection singularities")]
struct Cli {
    /// Print the report as compact JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print the report as indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FiberFlags {
    /// Fiber values, one rational per equation, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
    /// Ball radius (rational).
    #[arg(long)]
    delta: Option<String>,
    /// Perturbation size for the form omega - lambda*eta.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Perturbing form coefficients, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// Draw a constant perturbing form from this seed.
    #[arg(long)]
    eta_seed: Option<u64>,
}

impl From<FiberFlags> for FiberArgs {
    fn from(f: FiberFlags) -> Self {
        FiberArgs {
            epsilon: f.epsilon,
            delta: f.delta,
            lambda: f.lambda,
            eta: f.eta,
            eta_seed: f.eta_seed,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Complex index as the colength of the minor ideal.
    Index { file: PathBuf },
    /// Real index: local form when there are no equations, trace form on a fiber otherwise.
    RealIndex {
        file: PathBuf,
        #[command(flatten)]
        fiber: FiberFlags,
    },
    /// Compare the direct and bordered-determinant Hessians.
    HessianVerify {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count zeros on a smoothed fiber and recover the real index from signs.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        fiber: FiberFlags,
    },
    /// Run the embedded fixtures.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Index { .. } => "index",
            Command::RealIndex { .. } => "real-index",
            Command::HessianVerify { .. } => "hessian-verify",
            Command::Oracle { .. } => "oracle",
            Command::Selftest => "selftest",
        }
    }

    fn file(&self) -> Option<&PathBuf> {
        match self {
            Command::Index { file }
            | Command::RealIndex { file, .. }
            | Command::HessianVerify { file, .. }
            | Command::Oracle { file, .. } => Some(file),
            Command::Selftest => None,
        }
    }
}

fn load(path: &PathBuf) -> Result<GermProblem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(germfile::parse_germ_text(&text)?)
}

fn echo_problem(g: &GermProblem, inputs: &mut Map<String, Value>) {
    let vars = g.vars();
    inputs.insert("vars".into(), json!(vars));
    inputs.insert("f".into(), json!(g.f().iter().map(|p| show(p, vars)).collect::<Vec<_>>()));
    inputs.insert("omega".into(), json!(g.a().iter().map(|p| show(p, vars)).collect::<Vec<_>>()));
}

/// Runs the command; on failure the partial result (if any) is kept.
fn execute(cmd: &Command, inputs: &mut Map<String, Value>) -> Result<Outcome, (Value, CliError)> {
    let bare = |e: CliError| (Value::Null, e);
    if let Some(path) = cmd.file() {
        inputs.insert("file".into(), json!(path.display().to_string()));
    }
    let problem = match cmd.file() {
        Some(path) => {
            let g = load(path).map_err(bare)?;
            echo_problem(&g, inputs);
            Some(g)
        }
        None => None,
    };
    let g = || problem.as_ref().expect("file commands load a problem");
    match cmd {
        Command::Index { .. } => commands::index(g()).map_err(bare),
        Command::RealIndex { fiber, .. } => {
            commands::real_index(g(), &fiber.clone().into(), inputs).map_err(bare)
        }
        Command::HessianVerify { trials, seed, .. } => {
            inputs.insert("trials".into(), json!(trials));
            inputs.insert("seed".into(), json!(seed));
            commands::hessian_verify(g(), *trials, *seed).map_err(bare)
        }
        Command::Oracle { fiber, .. } => commands::oracle(g(), &fiber.clone().into(), inputs).map_err(bare),
        Command::Selftest => selftest::run().map(|result| Outcome {
            result,
            diagnostics: Vec::new(),
        }),
    }
}

fn human(report: &Report) -> String {
    let mut out = String::new();
    if let Value::Object(map) = &report.result {
        for (k, v) in map {
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Array(items) if k == "checks" => {
                    let mut s = String::new();
                    for item in items {
                        let mark = if item["pass"] == json!(true) { "ok  " } else { "FAIL" };
                        s += &format!(
                            "\n  {mark} {} {}: expected {}, got {}",
                            item["fixture"].as_str().unwrap_or(""),
                            item["check"].as_str().unwrap_or(""),
                            item["expected"],
                            item["got"]
                        );
                    }
                    s
                }
                other => other.to_string(),
            };
            out += &format!("{k}: {text}\n");
        }
    }
    for d in &report.diagnostics {
        let at = match (d.line, d.column) {
            (Some(l), Some(c)) => format!(" at line {l}, column {c}"),
            _ => String::new(),
        };
        out += &format!("{}: {}{at}: {}\n", d.level, d.kind, d.message);
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut inputs = Map::new();
    let (result, mut diagnostics, code) = match execute(&cli.command, &mut inputs) {
        Ok(o) => (o.result, o.diagnostics, EXIT_OK),
        Err((partial, e)) => (partial, vec![e.diagnostic()], e.exit_code()),
    };
    diagnostics.sort_by_key(|d| d.level != "error");
    let report = Report {
        schema: SCHEMA,
        command: cli.command.name().into(),
        inputs: Value::Object(inputs),
        result,
        diagnostics,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    if cli.pretty {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else if cli.json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else if code == EXIT_OK || !report.result.is_null() {
        print!("{}", human(&report));
    } else {
        eprint!("{}", human(&report));
    }
    ExitCode::from(code as u8)
}
