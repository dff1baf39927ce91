#![allow(dead_code)]

use icis_core::fiber::FiberSpec;
use icis_core::index::GermProblem;
use icis_core::poly::{int, parse_poly, rat, Mono, Poly, PolyMat, Rat};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let r = small_rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random polynomial with terms of degree in `lo..=hi`.
pub fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, lo: u32, hi: u32, terms: usize) -> Poly {
    let mut out = Poly::zero(nvars);
    for _ in 0..terms {
        let d = rng.gen_range(lo..=hi);
        let mut e = vec![0u32; nvars];
        for _ in 0..d {
            e[rng.gen_range(0..nvars)] += 1;
        }
        out = &out + &Poly::monomial(Mono::from_exponents(e), nonzero_rat(rng));
    }
    out
}

pub fn random_rat_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<Rat>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| small_rat(rng)).collect())
        .collect()
}

pub fn rat_mat(rows: &[Vec<Rat>]) -> PolyMat {
    PolyMat::from_rat_rows(1, rows.to_vec()).unwrap()
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return int(1);
    }
    let mut acc = Rat::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Monomials outside the ideal generated by `gens`, counted in the box
/// given by the pure powers among them.
pub fn staircase_count(gens: &[Mono], nvars: usize) -> Option<usize> {
    let mut bound = vec![None; nvars];
    for g in gens {
        if let Some(v) = g.pure_power_var() {
            let d = g.degree();
            bound[v] = Some(bound[v].map_or(d, |b: u32| b.min(d)));
        }
    }
    let bound: Vec<u32> = bound.into_iter().collect::<Option<_>>()?;
    let mut count = 0;
    let mut e = vec![0u32; nvars];
    loop {
        let m = Mono::from_exponents(e.clone());
        if !gens.iter().any(|g| g.divides(&m)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return Some(count);
            }
            e[i] += 1;
            if e[i] < bound[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

pub fn germ(vars: &[&str], f: &[&str], omega: &[&str]) -> GermProblem {
    GermProblem::parse(vars, f, omega).unwrap()
}

pub fn curve(f: &str, omega: &[&str]) -> GermProblem {
    germ(&["x", "y"], &[f], omega)
}

/// Index of `gamma^* omega` at `t = 0` for a real parameterization
/// `gamma(t) = (x(t), y(t))` of the curve `f = 0`.
pub fn pullback_index(g: &GermProblem, x: &str, y: &str) -> i64 {
    let xt = parse_poly(x, &["t"]).unwrap();
    let yt = parse_poly(y, &["t"]).unwrap();
    let img = [xt.clone(), yt.clone()];
    assert!(g.f()[0].compose(&img).unwrap().is_zero(), "not a parameterization");
    let a1 = g.a()[0].compose(&img).unwrap();
    let a2 = g.a()[1].compose(&img).unwrap();
    let pull = &(&a1 * &xt.derivative(0).unwrap()) + &(&a2 * &yt.derivative(0).unwrap());
    let (m, c) = pull
        .terms()
        .min_by_key(|(m, _)| m.degree())
        .expect("nonzero pullback");
    if m.degree() % 2 == 0 {
        0
    } else if c.is_positive() {
        1
    } else {
        -1
    }
}

/// Plane-curve fixture for the fiber checks.
pub struct CurveCase {
    pub name: &'static str,
    pub f: &'static str,
    pub omega: [&'static str; 2],
    pub index: usize,
    pub real_index: i64,
    pub delta: Rat,
    pub epsilons: Vec<Rat>,
    pub eta: Option<([&'static str; 2], Rat)>,
}

impl CurveCase {
    pub fn problem(&self) -> GermProblem {
        curve(self.f, &self.omega)
    }

    pub fn spec(&self, eps: &Rat) -> FiberSpec {
        let spec = FiberSpec::curve(eps.clone(), self.delta.clone()).unwrap();
        match &self.eta {
            None => spec,
            Some((eta, lambda)) => {
                let eta = eta
                    .iter()
                    .map(|s| parse_poly(s, &["x", "y"]).unwrap())
                    .collect();
                spec.with_perturbation(eta, lambda.clone()).unwrap()
            }
        }
    }
}

/// Fixtures whose zeros on the nearby fibers all lie in the ball.
pub fn trace_cases() -> Vec<CurveCase> {
    vec![
        CurveCase {
            name: "cusp dy",
            f: "x^2 + y^3",
            omega: ["0", "1"],
            index: 3,
            real_index: -1,
            delta: int(1),
            epsilons: vec![rat(1, 8), rat(-1, 8), rat(1, 27), rat(-1, 64)],
            eta: None,
        },
        CurveCase {
            name: "circle dx",
            f: "x^2 + y^2",
            omega: ["1", "0"],
            index: 2,
            real_index: 1,
            delta: int(1),
            epsilons: vec![rat(1, 4), rat(-1, 4), rat(1, 9)],
            eta: None,
        },
        CurveCase {
            name: "node dx",
            f: "x^2 - y^2",
            omega: ["1", "0"],
            index: 2,
            real_index: -1,
            delta: int(1),
            epsilons: vec![rat(1, 4), rat(-1, 4), rat(1, 9), rat(-1, 16)],
            eta: None,
        },
        CurveCase {
            name: "x^2 + y^5 dy",
            f: "x^2 + y^5",
            omega: ["0", "1"],
            index: 5,
            real_index: -1,
            delta: int(1),
            epsilons: vec![rat(1, 32), rat(-1, 32), rat(1, 243)],
            eta: None,
        },
        CurveCase {
            name: "cusp dx, perturbed",
            f: "x^2 + y^3",
            omega: ["1", "0"],
            index: 4,
            real_index: 0,
            delta: rat(1, 2),
            epsilons: vec![rat(1, 1000), rat(-1, 1000), rat(1, 3000)],
            eta: Some((["0", "1"], rat(1, 10))),
        },
    ]
}

/// Fixtures with zeros outside the ball on every nearby fiber.
pub fn far_cases() -> Vec<CurveCase> {
    vec![
        CurveCase {
            name: "cusp 3y^2 dx - 2x dy",
            f: "x^2 + y^3",
            omega: ["3*y^2", "-2*x"],
            index: 6,
            real_index: 0,
            delta: rat(1, 4),
            epsilons: vec![rat(1, 1000), rat(-1, 1000), rat(1, 2000)],
            eta: None,
        },
        CurveCase {
            name: "x^3 + y^4 with 2dx + 5dy",
            f: "x^3 + y^4",
            omega: ["2", "5"],
            index: 8,
            real_index: 0,
            delta: rat(1, 2),
            epsilons: vec![rat(1, 10000), rat(-1, 10000), rat(1, 20000)],
            eta: None,
        },
    ]
}

/// Signed count of the zeros of `(P, Q)` near the origin, by Newton's
/// method from a grid of starting points.  Floating point, test use only.
pub fn newton_signed_count(
    p: impl Fn(f64, f64) -> (f64, f64),
    jac: impl Fn(f64, f64) -> [[f64; 2]; 2],
    radius: f64,
) -> (usize, i64) {
    let mut found: Vec<(f64, f64)> = Vec::new();
    let steps = 40;
    for i in 0..=steps {
        for j in 0..=steps {
            let mut x = -radius + 2.0 * radius * i as f64 / steps as f64;
            let mut y = -radius + 2.0 * radius * j as f64 / steps as f64;
            for _ in 0..100 {
                let (u, v) = p(x, y);
                let [[a, b], [c, d]] = jac(x, y);
                let det = a * d - b * c;
                if det.abs() < 1e-300 {
                    break;
                }
                x -= (d * u - b * v) / det;
                y -= (a * v - c * u) / det;
            }
            let (u, v) = p(x, y);
            if (u * u + v * v).sqrt() < 1e-12
                && x * x + y * y < radius * radius
                && !found
                    .iter()
                    .any(|&(a, b)| ((a - x).powi(2) + (b - y).powi(2)).sqrt() < 1e-7)
            {
                found.push((x, y));
            }
        }
    }
    let mut sum = 0;
    for &(x, y) in &found {
        let [[a, b], [c, d]] = jac(x, y);
        sum += if a * d - b * c > 0.0 { 1 } else { -1 };
    }
    (found.len(), sum)
}
