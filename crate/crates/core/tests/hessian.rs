mod common;

use common::*;
use icis_core::hessian::{verify_hessian_identity, verify_hessian_identity_mutated, FiberChart};
use icis_core::index::GermProblem;
use icis_core::poly::{Poly, Rat};
use icis_core::Error;
use num_traits::{Signed, Zero};
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 3] = ["x", "y", "z"];

fn random_germ(r: &mut ChaCha8Rng, n: usize, k: usize) -> GermProblem {
    loop {
        let f = (0..k).map(|_| random_poly(r, n, 1, 3, 3)).collect();
        let a = (0..n).map(|_| random_poly(r, n, 0, 2, 3)).collect();
        let vars = NAMES[..n].iter().map(|s| s.to_string()).collect();
        let g = GermProblem::new(vars, f, a).unwrap();
        if FiberChart::new(&g).is_ok() {
            return g;
        }
    }
}

#[test]
fn identity_holds_on_random_germs() {
    let mut r = rng(61);
    for (n, k) in [(2, 1), (3, 1), (3, 2)] {
        for trial in 0..18 {
            let g = random_germ(&mut r, n, k);
            let v = verify_hessian_identity(&g, 20, 1000 + trial).unwrap();
            assert!(v.symbolic, "({n},{k}) {:?} {:?}", g.f(), g.a());
            assert_eq!(v.trials.len() + v.skipped, 20);
            assert!(v.trials.len() >= 15);
            assert!(v.passed);
        }
    }
}

#[test]
fn mutated_minor_is_detected() {
    let mut r = rng(62);
    for (n, k) in [(2, 1), (3, 1), (3, 2)] {
        for trial in 0..5 {
            let g = random_germ(&mut r, n, k);
            let v = verify_hessian_identity_mutated(&g, 20, trial, 0).unwrap();
            assert!(!v.symbolic);
            assert!(!v.passed);
        }
    }
}

#[test]
fn smooth_case_is_rejected() {
    let g = germ(&["x", "y"], &[], &["x", "y"]);
    assert!(matches!(verify_hessian_identity(&g, 5, 0), Err(Error::Precondition(_))));
}

/// Solves `m x = b` over the rationals (small square systems).
fn solve(mut m: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Vec<Rat> {
    let n = m.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("invertible");
        m.swap(c, p);
        b.swap(c, p);
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let d = &f * &m[c][j];
                    m[i][j] -= d;
                }
                let d = &f * &b[c];
                b[i] -= d;
            }
        }
    }
    (0..n).map(|i| &b[i] / &m[i][i]).collect()
}

#[test]
fn restriction_coefficients_match_implicit_differentiation() {
    let mut r = rng(63);
    for (n, k) in [(2, 1), (3, 1), (3, 2)] {
        for _ in 0..8 {
            let g = random_germ(&mut r, n, k);
            let chart = FiberChart::new(&g).unwrap();
            let coeffs = chart.restriction_coefficients().unwrap();
            let pt: Vec<Rat> = (0..n).map(|_| small_rat(&mut r)).collect();
            let grad: Vec<Vec<Rat>> = g
                .f()
                .iter()
                .map(|f| (0..n).map(|v| f.derivative(v).unwrap().evaluate(&pt).unwrap()).collect())
                .collect();
            let je: Vec<Vec<Rat>> = grad.iter().map(|row| row[..k].to_vec()).collect();
            if cofactor_det(&je).is_zero() {
                continue;
            }
            let a: Vec<Rat> = g.a().iter().map(|p| p.evaluate(&pt).unwrap()).collect();
            for (jj, j) in (k..n).enumerate() {
                // d x_E / d x_j = -J_E^{-1} J_j
                let rhs: Vec<Rat> = grad.iter().map(|row| -row[j].clone()).collect();
                let dx = solve(je.clone(), rhs);
                let mut want = a[j].clone();
                for l in 0..k {
                    want += &a[l] * &dx[l];
                }
                assert_eq!(coeffs[jj].evaluate(&pt).unwrap(), want);
            }
        }
    }
}

/// A germ whose restricted form vanishes at the rational point `p`.
fn germ_with_zero_at(r: &mut ChaCha8Rng, n: usize, k: usize, p: &[Rat]) -> GermProblem {
    let f: Vec<Poly> = (0..k).map(|_| random_poly(r, n, 1, 3, 4)).collect();
    let c: Vec<Rat> = (0..k).map(|_| nonzero_rat(r)).collect();
    let a = (0..n)
        .map(|i| {
            let b = random_poly(r, n, 1, 2, 3);
            let mut target = Rat::zero();
            for (fi, ci) in f.iter().zip(&c) {
                target += ci * fi.derivative(i).unwrap().evaluate(p).unwrap();
            }
            let shift = target - b.evaluate(p).unwrap();
            &b + &Poly::constant(n, shift)
        })
        .collect();
    let vars = NAMES[..n].iter().map(|s| s.to_string()).collect();
    GermProblem::new(vars, f, a).unwrap()
}

#[test]
fn hessian_sign_at_a_zero_does_not_depend_on_the_chart() {
    let mut r = rng(64);
    let charts: &[(usize, usize, [Vec<usize>; 2])] = &[
        (2, 1, [vec![0], vec![1]]),
        (3, 1, [vec![0], vec![2]]),
        (3, 2, [vec![0, 1], vec![1, 2]]),
    ];
    let mut compared = 0;
    for (n, k, [e1, e2]) in charts {
        let mut done = 0;
        let mut attempts = 0;
        while done < 10 && attempts < 200 {
            attempts += 1;
            let p: Vec<Rat> = (0..*n).map(|_| small_rat(&mut r)).collect();
            let g = germ_with_zero_at(&mut r, *n, *k, &p);
            let (Ok(c1), Ok(c2)) = (
                FiberChart::with_eliminated(&g, e1.clone()),
                FiberChart::with_eliminated(&g, e2.clone()),
            ) else {
                continue;
            };
            if c1.delta().evaluate(&p).unwrap().is_zero() || c2.delta().evaluate(&p).unwrap().is_zero() {
                continue;
            }
            for m in c1.minors() {
                assert!(m.evaluate(&p).unwrap().is_zero());
            }
            let h1 = c1.point_scaled_hessian(&p).unwrap();
            let h2 = c2.point_scaled_hessian(&p).unwrap();
            if h1.is_zero() {
                assert!(h2.is_zero());
                continue;
            }
            assert_eq!(h1.signum(), h2.signum(), "({n},{k}) at {p:?}");
            done += 1;
            compared += 1;
        }
    }
    assert!(compared >= 25);
}
