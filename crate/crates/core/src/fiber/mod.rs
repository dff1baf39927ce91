//! Exact zero counting and real index recovery for plane curves.
//!
//! For `f: (C^2, 0) -> (C, 0)` and `omega = A_1 dx + A_2 dy` the zeros of
//! `omega` on the fiber `f = eps` are the common zeros of `f - eps` and
//! `M = f_x A_2 - f_y A_1`.  They are found exactly by [`solve`]; whether a
//! complex zero lies in the ball of radius `delta` is decided by certified
//! root discs, and real zeros are handled by Sturm sequences throughout.

pub mod complex;
pub mod solve;
pub mod upoly;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use self::complex::{certified_root_discs, classify_in_ball, BallSide};
use self::solve::{eval_mod, solve_bivariate, Solutions};
use self::upoly::{isolate_real_roots, sign_at_root, RealRoot, Sturm, UPoly};
use crate::error::{Error, Result};
use crate::hessian::FiberChart;
use crate::index::GermProblem;
use crate::poly::{Poly, Rat};

/// Perturbation `omega - lambda * eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perturbation {
    pub eta: Vec<Poly>,
    pub lambda: Rat,
}

/// Fiber value, ball radius and optional perturbation of the form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSpec {
    pub epsilon: Vec<Rat>,
    pub delta: Rat,
    pub perturbation: Option<Perturbation>,
}

impl FiberSpec {
    pub fn new(epsilon: Vec<Rat>, delta: Rat) -> Result<Self> {
        if !delta.is_positive() {
            return Err(Error::Precondition("delta must be positive".into()));
        }
        Ok(FiberSpec {
            epsilon,
            delta,
            perturbation: None,
        })
    }

    /// Plane-curve shorthand.
    pub fn curve(epsilon: Rat, delta: Rat) -> Result<Self> {
        FiberSpec::new(vec![epsilon], delta)
    }

    pub fn with_perturbation(mut self, eta: Vec<Poly>, lambda: Rat) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::Precondition("lambda must be nonzero".into()));
        }
        self.perturbation = Some(Perturbation { eta, lambda });
        Ok(self)
    }
}

/// The problem with the (possibly perturbed) form actually solved.
pub fn effective_problem(g: &GermProblem, spec: &FiberSpec) -> Result<GermProblem> {
    match &spec.perturbation {
        None => Ok(g.clone()),
        Some(p) => {
            if p.eta.len() != g.n() {
                return Err(Error::LengthMismatch {
                    expected: g.n(),
                    got: p.eta.len(),
                });
            }
            let a = g
                .a()
                .iter()
                .zip(&p.eta)
                .map(|(a, e)| a.checked_sub(&e.scale(&p.lambda)))
                .collect::<Result<Vec<_>>>()?;
            g.with_form(a)
        }
    }
}

fn check_curve(g: &GermProblem, spec: &FiberSpec) -> Result<()> {
    if g.n() != 2 || g.k() != 1 {
        return Err(Error::Precondition(format!(
            "the fiber oracle handles plane curves (n = 2, k = 1), got n = {}, k = {}",
            g.n(),
            g.k()
        )));
    }
    if spec.epsilon.len() != 1 {
        return Err(Error::LengthMismatch {
            expected: 1,
            got: spec.epsilon.len(),
        });
    }
    Ok(())
}

/// The bordered minor `M = f_x A_2 - f_y A_1`.
pub fn bordered_minor(g: &GermProblem) -> Poly {
    let f = &g.f()[0];
    let fx = f.derivative(0).expect("two variables");
    let fy = f.derivative(1).expect("two variables");
    &(&fx * &g.a()[1]) - &(&fy * &g.a()[0])
}

/// `h~ = num / den` on the roots of `r`, computed in one chart.
#[derive(Clone, Debug)]
pub struct ChartPiece {
    pub multiplicity: usize,
    pub r: UPoly,
    pub x: UPoly,
    pub y: UPoly,
    /// Index of the eliminated variable.
    pub chart: usize,
    pub h_num: UPoly,
    pub h_den: UPoly,
}

/// A real zero of the form on the fiber.
#[derive(Clone, Debug, Serialize)]
pub struct RealZero {
    /// Isolating interval of `t = x + c*y`.
    pub t_interval: (String, String),
    pub x: f64,
    pub y: f64,
    pub multiplicity: usize,
    pub inside: bool,
    /// Sign of `h~`; `None` for degenerate zeros.
    pub sign: Option<i32>,
}

/// Everything the oracle knows about the zeros on one fiber.
#[derive(Clone, Debug)]
pub struct FiberAnalysis {
    pub problem: GermProblem,
    pub epsilon: Rat,
    pub delta: Rat,
    pub solutions: Solutions,
    pub pieces: Vec<ChartPiece>,
    /// Per piece, the number of its roots inside the ball.
    pub inside: Vec<usize>,
    pub real_zeros: Vec<RealZero>,
}

impl FiberAnalysis {
    /// Zeros in the ball counted with multiplicity.
    pub fn count_in_ball(&self) -> usize {
        self.pieces
            .iter()
            .zip(&self.inside)
            .map(|(p, n)| p.multiplicity * n)
            .sum()
    }

    /// Affine zeros counted with multiplicity.
    pub fn count_affine(&self) -> usize {
        self.solutions.total()
    }

    pub fn real_in_ball(&self) -> impl Iterator<Item = &RealZero> {
        self.real_zeros.iter().filter(|z| z.inside)
    }

    pub fn all_in_ball(&self) -> bool {
        self.pieces
            .iter()
            .zip(&self.inside)
            .all(|(p, &n)| n == p.r.deg())
    }
}

fn chart_data(g: &GermProblem, var: usize) -> Result<Option<(Poly, Poly)>> {
    match FiberChart::with_eliminated(g, vec![var]) {
        Ok(c) => Ok(Some((c.bordered_matrix()?.determinant()?, c.delta().clone()))),
        Err(Error::Precondition(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Solves for the zeros on `f = eps` and locates them.
pub fn analyze_fiber(g: &GermProblem, spec: &FiberSpec) -> Result<FiberAnalysis> {
    check_curve(g, spec)?;
    let problem = effective_problem(g, spec)?;
    let eps = spec.epsilon[0].clone();
    let delta = spec.delta.clone();
    let f = &problem.f()[0];
    let fe = f - &Poly::constant(2, eps.clone());
    let m = bordered_minor(&problem);
    let solutions = solve_bivariate(&fe, &m)?;

    let charts = [chart_data(&problem, 0)?, chart_data(&problem, 1)?];
    let mut pieces = Vec::new();
    for part in &solutions.parts {
        let mut rest = part.r.clone();
        for (var, chart) in charts.iter().enumerate() {
            let Some((num, den)) = chart else { continue };
            if rest.is_constant() {
                break;
            }
            let d = eval_mod(den, &part.x, &part.y, &rest);
            let bad = rest.gcd(&d);
            let good = rest.exact_div(&bad).expect("gcd divides");
            if !good.is_constant() {
                let h_num = eval_mod(num, &part.x, &part.y, &good);
                let h_den = d.rem(&good);
                pieces.push(ChartPiece {
                    multiplicity: part.multiplicity,
                    x: part.x.rem(&good),
                    y: part.y.rem(&good),
                    r: good,
                    chart: var,
                    h_num,
                    h_den,
                });
            }
            rest = bad;
        }
        if !rest.is_constant() {
            return Err(Error::Degenerate(
                "a zero of the form is a singular point of the fiber".into(),
            ));
        }
    }

    let d2 = &delta * &delta;
    let mut inside = Vec::with_capacity(pieces.len());
    let mut real_zeros = Vec::new();
    for p in &pieces {
        let discs = certified_root_discs(&p.r)?;
        let mut count = 0;
        for disc in &discs {
            if classify_in_ball(&p.x, &p.y, disc, &delta)? == BallSide::Inside {
                count += 1;
            }
        }
        inside.push(count);

        let dist = p
            .x
            .mul(&p.x)
            .add(&p.y.mul(&p.y))
            .sub(&UPoly::constant(d2.clone()))
            .rem(&p.r);
        for root in isolate_real_roots(&p.r) {
            let side = sign_at_root(&p.r, &root, &dist).ok_or_else(|| {
                Error::Degenerate("a real zero lies on the boundary circle; change delta".into())
            })?;
            let sign = match (
                sign_at_root(&p.r, &root, &p.h_num),
                sign_at_root(&p.r, &root, &p.h_den),
            ) {
                (Some(a), Some(b)) => Some(a * b),
                _ => None,
            };
            real_zeros.push(real_zero(p, &root, side < 0, sign));
        }
    }
    Ok(FiberAnalysis {
        problem,
        epsilon: eps,
        delta,
        solutions,
        pieces,
        inside,
        real_zeros,
    })
}

fn real_zero(p: &ChartPiece, root: &RealRoot, inside: bool, sign: Option<i32>) -> RealZero {
    let mut r = root.clone();
    for _ in 0..60 {
        if r.is_exact() {
            break;
        }
        r = upoly::refine(&p.r, &r);
    }
    let t = r.midpoint();
    RealZero {
        t_interval: (root.lo.to_string(), root.hi.to_string()),
        x: upoly::rat_to_f64(&p.x.eval(&t)),
        y: upoly::rat_to_f64(&p.y.eval(&t)),
        multiplicity: p.multiplicity,
        inside,
        sign: if p.multiplicity == 1 { sign } else { None },
    }
}

/// Number of zeros of the form on the fiber inside the ball, counted with
/// multiplicity.
pub fn count_zeros_on_fiber(g: &GermProblem, spec: &FiberSpec) -> Result<usize> {
    Ok(analyze_fiber(g, spec)?.count_in_ball())
}

/// Sum of `sign(h~)` over the real zeros in the ball.
pub fn real_zero_signs(g: &GermProblem, spec: &FiberSpec) -> Result<i64> {
    sign_sum(&analyze_fiber(g, spec)?)
}

pub fn sign_sum(a: &FiberAnalysis) -> Result<i64> {
    let mut total = 0i64;
    for z in a.real_in_ball() {
        match z.sign {
            Some(s) => total += s as i64,
            None => {
                return Err(Error::Degenerate(
                    "a real zero in the ball is degenerate; perturb the form".into(),
                ))
            }
        }
    }
    Ok(total)
}

/// Checks that `f = eps` has no singular point in `C^2`.
pub fn check_fiber_smooth(f: &Poly, eps: &Rat) -> Result<()> {
    let fe = f - &Poly::constant(2, eps.clone());
    let fx = f.derivative(0)?;
    let fy = f.derivative(1)?;
    let (first, second) = if fx.is_zero() { (&fy, &fx) } else { (&fx, &fy) };
    let sols = solve_bivariate(&fe, first)?;
    for part in &sols.parts {
        let v = eval_mod(second, &part.x, &part.y, &part.r);
        if !part.r.gcd(&v).is_constant() {
            return Err(Error::Degenerate(format!(
                "the fiber f = {eps} is singular; choose another epsilon"
            )));
        }
    }
    Ok(())
}

/// Euler characteristic of `{f = eps}` in the closed real disc of radius
/// `delta`: half the number of points where the curve meets the circle.
pub fn euler_char_real_curve(f: &Poly, eps: &Rat, delta: &Rat) -> Result<i64> {
    if f.nvars() != 2 {
        return Err(Error::Precondition("plane curve expected".into()));
    }
    if !delta.is_positive() {
        return Err(Error::Precondition("delta must be positive".into()));
    }
    check_fiber_smooth(f, eps)?;
    let d = f.total_degree().unwrap_or(0) as usize;
    // x = delta (1 - t^2) / (1 + t^2), y = 2 delta t / (1 + t^2)
    let one = Rat::one();
    let a = UPoly::from_coeffs(vec![one.clone(), Rat::zero(), -one.clone()]);
    let b = UPoly::from_coeffs(vec![Rat::zero(), Rat::from_integer(2.into())]);
    let w = UPoly::from_coeffs(vec![one.clone(), Rat::zero(), one.clone()]);
    let mut n = UPoly::zero();
    for (m, c) in f.terms() {
        let e = m.exponents();
        let (i, j) = (e[0] as usize, e[1] as usize);
        let scale = c * pow_rat(delta, i + j);
        n = n.add(&a.pow(i).mul(&b.pow(j)).mul(&w.pow(d - i - j)).scale(&scale));
    }
    n = n.sub(&w.pow(d).scale(eps));
    if n.is_zero() {
        return Err(Error::Degenerate("the boundary circle lies in the fiber".into()));
    }
    let repeated = n.gcd(&n.derivative());
    if !repeated.is_constant() && Sturm::new(&repeated).count_all() > 0 {
        return Err(Error::Degenerate(
            "the fiber is tangent to the boundary circle; change delta".into(),
        ));
    }
    let mut count = Sturm::new(&n.exact_div(&repeated).expect("gcd divides")).count_all();
    let deg = n.deg();
    if deg + 1 < 2 * d {
        return Err(Error::Degenerate(
            "the fiber is tangent to the boundary circle at (-delta, 0); change delta".into(),
        ));
    }
    if deg + 1 == 2 * d {
        count += 1;
    }
    if count % 2 != 0 {
        return Err(Error::Inconsistent("odd number of boundary points".into()));
    }
    Ok((count / 2) as i64)
}

fn pow_rat(r: &Rat, e: usize) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e {
        out *= r;
    }
    out
}

/// Outcome of the oracle's real index computation.
#[derive(Clone, Debug, Serialize)]
pub struct RecoveredIndex {
    pub sign_sum: i64,
    pub euler_char: i64,
    pub real_index: i64,
}

/// `sum of signs - chi + 1`.
pub fn recovered_real_index(g: &GermProblem, spec: &FiberSpec) -> Result<RecoveredIndex> {
    let a = analyze_fiber(g, spec)?;
    recovered_from(&a)
}

pub fn recovered_from(a: &FiberAnalysis) -> Result<RecoveredIndex> {
    let s = sign_sum(a)?;
    let chi = euler_char_real_curve(&a.problem.f()[0], &a.epsilon, &a.delta)?;
    Ok(RecoveredIndex {
        sign_sum: s,
        euler_char: chi,
        real_index: s - chi + 1,
    })
}
