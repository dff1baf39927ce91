use icis_core::fiber::{analyze_fiber, recovered_from, FiberSpec};
use icis_core::hessian::{verify_hessian_identity, FiberChart};
use icis_core::index::{complex_index, GermProblem};
use icis_core::local::Colength;
use icis_core::poly::{mono_to_string, parse_poly, parse_rat, Poly, PolyDisplay, Rat};
use icis_core::quadform::{real_index_smooth, real_index_via_fiber};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::report::{CliError, Diagnostic};

/// Result payload plus non-fatal diagnostics.
pub struct Outcome {
    pub result: Value,
    pub diagnostics: Vec<Diagnostic>,
}

impl Outcome {
    fn plain(result: Value) -> Self {
        Outcome {
            result,
            diagnostics: Vec::new(),
        }
    }
}

/// Fiber options as given on the command line.
#[derive(Debug, Clone, Default)]
pub struct FiberArgs {
    pub epsilon: Option<String>,
    pub delta: Option<String>,
    pub lambda: Option<String>,
    pub eta: Option<String>,
    pub eta_seed: Option<u64>,
}

impl FiberArgs {
    pub fn is_empty(&self) -> bool {
        self.epsilon.is_none()
            && self.delta.is_none()
            && self.lambda.is_none()
            && self.eta.is_none()
            && self.eta_seed.is_none()
    }
}

pub fn show(p: &Poly, vars: &[String]) -> String {
    PolyDisplay::new(p, vars).to_string()
}

fn show_all(ps: &[Poly], vars: &[String]) -> Vec<String> {
    ps.iter().map(|p| show(p, vars)).collect()
}

fn rat_flag(name: &str, text: &str) -> Result<Rat, CliError> {
    parse_rat(text).map_err(|_| CliError::Usage(format!("--{name}: expected a rational p/q, got {text:?}")))
}

fn rat_list(name: &str, text: &str) -> Result<Vec<Rat>, CliError> {
    text.split(',').map(|s| rat_flag(name, s)).collect()
}

/// Random constant coefficients `p/q` with `1 <= |p| <= 5`, `1 <= q <= 5`.
pub fn eta_from_seed(n: usize, seed: u64) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let p: i64 = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
            Rat::new(p.into(), rng.gen_range(1..=5i64).into())
        })
        .collect()
}

/// Builds the fiber spec and echoes the resolved values into `inputs`.
pub fn fiber_spec(g: &GermProblem, args: &FiberArgs, inputs: &mut Map<String, Value>) -> Result<FiberSpec, CliError> {
    let (Some(eps), Some(delta)) = (&args.epsilon, &args.delta) else {
        return Err(CliError::Usage("the fiber needs both --epsilon and --delta".into()));
    };
    let eps = rat_list("epsilon", eps)?;
    if eps.len() != g.k() {
        return Err(CliError::Usage(format!(
            "--epsilon: {} values given for {} equations",
            eps.len(),
            g.k()
        )));
    }
    let delta = rat_flag("delta", delta)?;
    inputs.insert("epsilon".into(), json!(eps.iter().map(Rat::to_string).collect::<Vec<_>>()));
    inputs.insert("delta".into(), json!(delta.to_string()));
    let mut spec = FiberSpec::new(eps, delta)?;

    let vars = g.vars();
    let eta = match (&args.eta, args.eta_seed) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give --eta or --eta-seed, not both".into())),
        (Some(text), None) => {
            let items: Vec<&str> = text.split(',').collect();
            if items.len() != g.n() {
                return Err(CliError::Usage(format!(
                    "--eta: {} coefficients given for {} variables",
                    items.len(),
                    g.n()
                )));
            }
            let eta = items
                .iter()
                .map(|s| parse_poly(s, vars))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(format!("--eta: {e}")))?;
            Some(eta)
        }
        (None, Some(seed)) => {
            inputs.insert("eta_seed".into(), json!(seed));
            Some(eta_from_seed(g.n(), seed).into_iter().map(|c| Poly::constant(g.n(), c)).collect())
        }
        (None, None) => None,
    };
    match (eta, &args.lambda) {
        (Some(eta), Some(lambda)) => {
            let lambda = rat_flag("lambda", lambda)?;
            inputs.insert("eta".into(), json!(show_all(&eta, vars)));
            inputs.insert("lambda".into(), json!(lambda.to_string()));
            spec = spec.with_perturbation(eta, lambda)?;
        }
        (Some(_), None) => return Err(CliError::Usage("--eta needs --lambda".into())),
        (None, Some(_)) => return Err(CliError::Usage("--lambda needs --eta or --eta-seed".into())),
        (None, None) => {}
    }
    Ok(spec)
}

pub fn index(g: &GermProblem) -> Result<Outcome, CliError> {
    let report = complex_index(g)?;
    let s = report.summary(g.vars());
    let index = match report.index {
        Colength::Finite(n) => json!(n),
        Colength::Infinite => json!("infinite"),
    };
    let mut diagnostics = Vec::new();
    if report.index == Colength::Infinite {
        diagnostics.push(Diagnostic::warning(
            "infinite",
            "the index ideal has infinite colength; the zero of the form is not isolated",
        ));
    }
    Ok(Outcome {
        result: json!({
            "index": index,
            "generators": s.generators,
            "leading_monomials": s.leading_monomials,
            "quotient_basis": s.quotient_basis,
        }),
        diagnostics,
    })
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(Rat::to_string).collect()
}

pub fn real_index(g: &GermProblem, args: &FiberArgs, inputs: &mut Map<String, Value>) -> Result<Outcome, CliError> {
    let vars = g.vars();
    let basis = |b: &[icis_core::poly::Mono]| -> Vec<String> { b.iter().map(|m| mono_to_string(m, vars)).collect() };
    if args.is_empty() {
        if g.k() > 0 {
            return Err(CliError::Usage(format!(
                "k = {}: the real index on a curve needs --epsilon and --delta",
                g.k()
            )));
        }
        let r = real_index_smooth(g)?;
        return Ok(Outcome::plain(json!({
            "real_index": r.real_index,
            "index": r.quotient.dim(),
            "quotient_basis": basis(r.quotient.basis()),
            "hessian_class": rats(&r.hessian_class),
            "functional": rats(&r.functional),
            "gram": r.gram.to_strings(),
            "inertia": r.inertia,
        })));
    }
    let spec = fiber_spec(g, args, inputs)?;
    let r = real_index_via_fiber(g, &spec)?;
    Ok(Outcome::plain(json!({
        "real_index": r.real_index,
        "index": r.quotient.dim(),
        "zeros": r.analysis.count_in_ball(),
        "quotient_basis": basis(r.quotient.basis()),
        "gram": r.gram.to_strings(),
        "inertia": r.inertia,
        "euler_char": r.euler_char,
    })))
}

pub fn hessian_verify(g: &GermProblem, trials: usize, seed: u64) -> Result<Outcome, CliError> {
    if g.k() == 0 {
        return Err(icis_core::Error::Precondition("hessian-verify needs at least one equation".into()).into());
    }
    let chart = FiberChart::new(g)?;
    let v = verify_hessian_identity(g, trials, seed)?;
    let vars = g.vars();
    let names = |ix: &[usize]| -> Vec<String> { ix.iter().map(|&i| vars[i].clone()).collect() };
    let mut diagnostics = Vec::new();
    if v.skipped > 0 {
        diagnostics.push(Diagnostic::warning(
            "skipped",
            format!("{} trials found no point off the chart discriminant", v.skipped),
        ));
    }
    if !v.passed {
        diagnostics.push(Diagnostic::warning("mismatch", "the two Hessian routes disagree"));
    }
    let mut result = serde_json::to_value(&v).expect("verdict serializes");
    let obj = result.as_object_mut().expect("object");
    obj.insert("eliminated".into(), json!(names(chart.eliminated())));
    obj.insert("free".into(), json!(names(chart.free())));
    obj.insert("delta".into(), json!(show(chart.delta(), vars)));
    Ok(Outcome { result, diagnostics })
}

pub fn oracle(g: &GermProblem, args: &FiberArgs, inputs: &mut Map<String, Value>) -> Result<Outcome, CliError> {
    let spec = fiber_spec(g, args, inputs)?;
    let a = analyze_fiber(g, &spec)?;
    let rec = recovered_from(&a)?;
    let index = complex_index(g)?.index;
    let zeros = a.count_in_ball();
    let mut diagnostics = Vec::new();
    if !a.all_in_ball() {
        diagnostics.push(Diagnostic::warning(
            "outside",
            format!("{} of {} affine zeros lie outside the ball", a.count_affine() - zeros, a.count_affine()),
        ));
    }
    if let Colength::Finite(n) = index {
        if n != zeros {
            diagnostics.push(Diagnostic::warning(
                "count",
                format!("{zeros} zeros in the ball but the index is {n}; shrink epsilon or adjust delta"),
            ));
        }
    }
    let real: Vec<_> = a.real_zeros.iter().filter(|z| z.inside).collect();
    Ok(Outcome {
        result: json!({
            "zeros": zeros,
            "affine_zeros": a.count_affine(),
            "real_zeros": real,
            "sign_sum": rec.sign_sum,
            "euler_char": rec.euler_char,
            "real_index": rec.real_index,
        }),
        diagnostics,
    })
}
