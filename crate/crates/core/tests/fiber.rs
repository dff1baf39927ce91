mod common;

use common::*;
use icis_core::fiber::{
    analyze_fiber, count_zeros_on_fiber, euler_char_real_curve, real_zero_signs,
    recovered_real_index, FiberSpec,
};
use icis_core::index::complex_index;
use icis_core::poly::{int, parse_poly, rat};
use icis_core::quadform::real_index_via_fiber;
use icis_core::Error;

#[test]
fn zero_count_matches_colength() {
    for case in trace_cases().iter().chain(&far_cases()) {
        let g = case.problem();
        let idx = complex_index(&g).unwrap().index.finite().unwrap();
        assert_eq!(idx, case.index, "{}", case.name);
        for eps in &case.epsilons {
            let spec = FiberSpec::curve(eps.clone(), case.delta.clone()).unwrap();
            assert_eq!(count_zeros_on_fiber(&g, &spec).unwrap(), idx, "{} at {eps}", case.name);
        }
    }
}

#[test]
fn recovered_index_is_chamber_independent() {
    for case in trace_cases().iter().chain(&far_cases()) {
        let g = case.problem();
        for eps in &case.epsilons {
            let r = recovered_real_index(&g, &case.spec(eps)).unwrap();
            assert_eq!(r.real_index, case.real_index, "{} at {eps}", case.name);
        }
    }
}

#[test]
fn trace_form_agrees_with_sign_count() {
    for case in trace_cases() {
        let g = case.problem();
        for eps in &case.epsilons {
            let spec = case.spec(eps);
            let oracle = recovered_real_index(&g, &spec).unwrap();
            let form = real_index_via_fiber(&g, &spec).unwrap();
            assert!(form.inertia.is_nondegenerate(), "{} at {eps}", case.name);
            assert_eq!(form.inertia.signature(), oracle.sign_sum, "{} at {eps}", case.name);
            assert_eq!(form.real_index, oracle.real_index);
        }
    }
}

#[test]
fn pullback_oracle() {
    let cases = [
        ("x^2 + y^3", ["0", "1"], "t^3", "-t^2", -1),
        ("x^2 + y^3", ["1", "0"], "t^3", "-t^2", 0),
        ("x^2 + y^3", ["3*y^2", "-2*x"], "t^3", "-t^2", 0),
        ("x^2 + y^5", ["0", "1"], "t^5", "-t^2", -1),
        ("x^3 + y^4", ["2", "5"], "-t^4", "t^3", 0),
    ];
    for (f, omega, x, y, want) in cases {
        assert_eq!(pullback_index(&curve(f, &omega), x, y), want, "{f}");
    }
    for case in trace_cases().iter().chain(&far_cases()) {
        if let Some((_, _, x, y, want)) = cases
            .iter()
            .find(|c| c.0 == case.f && c.1 == case.omega)
        {
            assert_eq!(pullback_index(&case.problem(), x, y), case.real_index);
            assert_eq!(*want, case.real_index);
        }
    }
}

#[test]
fn perturbation_makes_zeros_simple() {
    let g = curve("x^2 + y^3", &["1", "0"]);
    let eps = rat(1, 1000);
    let plain = analyze_fiber(&g, &FiberSpec::curve(eps.clone(), rat(1, 2)).unwrap()).unwrap();
    assert!(!plain.solutions.all_simple());
    let eta = vec![parse_poly("0", &["x", "y"]).unwrap(), parse_poly("1", &["x", "y"]).unwrap()];
    for lambda in [rat(1, 10), rat(1, 20), rat(-1, 30)] {
        let spec = FiberSpec::curve(eps.clone(), rat(1, 2))
            .unwrap()
            .with_perturbation(eta.clone(), lambda)
            .unwrap();
        let a = analyze_fiber(&g, &spec).unwrap();
        assert_eq!(a.count_in_ball(), 4);
        assert!(a.solutions.all_simple());
    }
}

#[test]
fn parity_and_sign_bound() {
    for case in trace_cases().iter().chain(&far_cases()) {
        let g = case.problem();
        for eps in &case.epsilons {
            let a = analyze_fiber(&g, &case.spec(eps)).unwrap();
            let complex = a.count_in_ball();
            let real: usize = a.real_in_ball().map(|z| z.multiplicity).sum();
            assert_eq!((complex - real) % 2, 0, "{}", case.name);
            let s = real_zero_signs(&g, &case.spec(eps)).unwrap();
            assert!(s.unsigned_abs() as usize <= real && real <= complex);
        }
    }
}

#[test]
fn euler_characteristic_examples() {
    let cusp = parse_poly("x^2 + y^3", &["x", "y"]).unwrap();
    let circle = parse_poly("x^2 + y^2", &["x", "y"]).unwrap();
    let node = parse_poly("x^2 - y^2", &["x", "y"]).unwrap();
    assert_eq!(euler_char_real_curve(&cusp, &rat(1, 8), &int(1)).unwrap(), 1);
    assert_eq!(euler_char_real_curve(&circle, &rat(1, 4), &int(1)).unwrap(), 0);
    assert_eq!(euler_char_real_curve(&circle, &rat(-1, 4), &int(1)).unwrap(), 0);
    assert_eq!(euler_char_real_curve(&node, &rat(1, 4), &int(1)).unwrap(), 2);
    assert_eq!(euler_char_real_curve(&node, &rat(-1, 4), &int(1)).unwrap(), 2);
    // the circle fiber of radius 1 touches the unit circle everywhere
    assert!(matches!(
        euler_char_real_curve(&circle, &int(1), &int(1)),
        Err(Error::Degenerate(_))
    ));
}

#[test]
fn degenerate_inputs() {
    let g = curve("x^2 + y^3", &["0", "1"]);
    // singular fiber
    let spec = FiberSpec::curve(int(0), int(1)).unwrap();
    assert!(recovered_real_index(&g, &spec).is_err());
    // the form vanishes on a whole component
    let g = curve("x*y", &["y", "x"]);
    let spec = FiberSpec::curve(rat(1, 4), int(1)).unwrap();
    assert!(matches!(count_zeros_on_fiber(&g, &spec), Err(Error::Degenerate(_))));
    assert!(FiberSpec::curve(int(1), int(0)).is_err());
    // not a plane curve
    let g = germ(&["x", "y", "z"], &["x^2 + y^2 + z^2"], &["1", "0", "0"]);
    let spec = FiberSpec::curve(rat(1, 4), int(1)).unwrap();
    assert!(matches!(count_zeros_on_fiber(&g, &spec), Err(Error::Precondition(_))));
}
