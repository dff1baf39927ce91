mod common;

use common::*;
use icis_core::poly::{
    block_det_product, bordered_minor_identity, int, parse_poly, Mono, Poly, PolyDisplay, PolyMat,
    Rat,
};
use icis_core::Error;
use num_traits::Zero;
use proptest::prelude::*;

fn arb_poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, nvars), -20i64..=20, 1i64..=6),
        0..6,
    )
    .prop_map(move |terms| {
        Poly::from_terms(
            nvars,
            terms
                .into_iter()
                .map(|(e, p, q)| (Mono::from_exponents(e), Rat::new(p.into(), q.into()))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, rng_seed: proptest::test_runner::RngSeed::Fixed(7), ..ProptestConfig::default() })]

    #[test]
    fn derivative_is_a_derivation(p in arb_poly(3), q in arb_poly(3), v in 0usize..3) {
        let lhs = (&p * &q).derivative(v).unwrap();
        let rhs = &(&p * &q.derivative(v).unwrap()) + &(&q * &p.derivative(v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_laws(p in arb_poly(2), q in arb_poly(2), r in arb_poly(2)) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert!((&(&p + &q) - &(&q + &p)).is_zero());
        prop_assert!((&p - &p).is_empty());
    }

    #[test]
    fn display_round_trip(p in arb_poly(2)) {
        let names = vec!["x".to_string(), "y".to_string()];
        let s = PolyDisplay::new(&p, &names).to_string();
        prop_assert_eq!(parse_poly(&s, &["x", "y"]).unwrap(), p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in arb_poly(2), q in arb_poly(2), a in -5i64..5, b in -5i64..5) {
        let pt = [int(a), int(b)];
        let lhs = (&p * &q).evaluate(&pt).unwrap();
        prop_assert_eq!(lhs, p.evaluate(&pt).unwrap() * q.evaluate(&pt).unwrap());
    }
}

#[test]
fn bareiss_matches_cofactor_expansion() {
    let mut r = rng(11);
    for trial in 0..150 {
        let n = 1 + trial % 5;
        let mut m = random_rat_matrix(&mut r, n, n);
        if trial % 7 == 0 {
            // force a zero leading pivot
            m[0][0] = Rat::zero();
        }
        if trial % 11 == 0 && n > 1 {
            m[n - 1] = m[0].clone();
        }
        let want = cofactor_det(&m);
        let got = rat_mat(&m).determinant().unwrap();
        assert_eq!(got, Poly::constant(1, want), "trial {trial}");
    }
}

#[test]
fn polynomial_determinant_matches_cofactor_at_points() {
    let mut r = rng(12);
    for _ in 0..30 {
        let n = 3;
        let entries: Vec<Vec<Poly>> = (0..n)
            .map(|_| (0..n).map(|_| random_poly(&mut r, 2, 0, 2, 2)).collect())
            .collect();
        let det = PolyMat::from_rows(2, entries.clone()).unwrap().determinant().unwrap();
        for _ in 0..3 {
            let pt = [small_rat(&mut r), small_rat(&mut r)];
            let vals: Vec<Vec<Rat>> = entries
                .iter()
                .map(|row| row.iter().map(|p| p.evaluate(&pt).unwrap()).collect())
                .collect();
            assert_eq!(det.evaluate(&pt).unwrap(), cofactor_det(&vals));
        }
    }
}

fn blocks(r: &mut rand_chacha::ChaCha8Rng, l: usize, m: usize) -> [Vec<Vec<Rat>>; 4] {
    loop {
        let a = random_rat_matrix(r, l, l);
        if cofactor_det(&a).is_zero() {
            continue;
        }
        return [
            a,
            random_rat_matrix(r, l, m),
            random_rat_matrix(r, m, l),
            random_rat_matrix(r, m, m),
        ];
    }
}

fn glue(b: &[Vec<Vec<Rat>>; 4]) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = b[0]
        .iter()
        .zip(&b[1])
        .map(|(x, y)| x.iter().chain(y).cloned().collect())
        .collect();
    out.extend(
        b[2].iter()
            .zip(&b[3])
            .map(|(x, y)| x.iter().chain(y).cloned().collect::<Vec<_>>()),
    );
    out
}

#[test]
fn schur_complement_identity() {
    let mut r = rng(21);
    for trial in 0..120 {
        let (l, m) = (1 + trial % 3, 1 + (trial / 3) % 3);
        let b = blocks(&mut r, l, m);
        let mats: Vec<PolyMat> = b.iter().map(|x| rat_mat(x)).collect();
        let (full, rhs) = block_det_product(&mats[0], &mats[1], &mats[2], &mats[3]).unwrap();
        assert_eq!(full, rhs, "trial {trial}");
        assert_eq!(full, Poly::constant(1, cofactor_det(&glue(&b))));
    }
}

#[test]
fn bordered_minor_determinant_identity() {
    let mut r = rng(22);
    for trial in 0..120 {
        let (l, m) = (1 + trial % 3, 1 + (trial / 3) % 3);
        let b = blocks(&mut r, l, m);
        let mats: Vec<PolyMat> = b.iter().map(|x| rat_mat(x)).collect();
        let (lhs, rhs) = bordered_minor_identity(&mats[0], &mats[1], &mats[2], &mats[3]).unwrap();
        assert_eq!(lhs, rhs, "trial {trial}");
        // oracle: bordered minors and both determinants by cofactor expansion
        let full = glue(&b);
        let h: Vec<Vec<Rat>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let idx_r: Vec<usize> = (0..l).chain([l + i]).collect();
                        let idx_c: Vec<usize> = (0..l).chain([l + j]).collect();
                        let sub: Vec<Vec<Rat>> = idx_r
                            .iter()
                            .map(|&a| idx_c.iter().map(|&c| full[a][c].clone()).collect())
                            .collect();
                        cofactor_det(&sub)
                    })
                    .collect()
            })
            .collect();
        let mut want = cofactor_det(&full);
        for _ in 1..m {
            want *= cofactor_det(&b[0]);
        }
        assert_eq!(cofactor_det(&h), want);
        assert_eq!(lhs, Poly::constant(1, want));
    }
}

#[test]
fn block_identities_with_polynomial_entries() {
    let mut r = rng(23);
    let mut done = 0;
    while done < 10 {
        let gen = |r: &mut rand_chacha::ChaCha8Rng, a: usize, b: usize| {
            let rows: Vec<Vec<Poly>> = (0..a)
                .map(|_| (0..b).map(|_| random_poly(r, 2, 0, 1, 2)).collect())
                .collect();
            PolyMat::from_rows(2, rows).unwrap()
        };
        let a = gen(&mut r, 2, 2);
        let b = gen(&mut r, 2, 2);
        let c = gen(&mut r, 2, 2);
        let d = gen(&mut r, 2, 2);
        match block_det_product(&a, &b, &c, &d) {
            Err(Error::SingularBlock) => continue,
            res => {
                let (x, y) = res.unwrap();
                assert_eq!(x, y);
                let (x, y) = bordered_minor_identity(&a, &b, &c, &d).unwrap();
                assert_eq!(x, y);
                done += 1;
            }
        }
    }
}

#[test]
fn singular_block_is_reported() {
    let z = rat_mat(&[vec![int(0)]]);
    let one = rat_mat(&[vec![int(1)]]);
    assert!(matches!(
        block_det_product(&z, &one, &one, &one),
        Err(Error::SingularBlock)
    ));
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn minor_count() {
    let mut r = rng(31);
    for rows in 1..=4 {
        for cols in 1..=4 {
            let m = rat_mat(&random_rat_matrix(&mut r, rows, cols));
            for s in 1..=rows.min(cols) {
                assert_eq!(m.minors(s).unwrap().len(), binom(rows, s) * binom(cols, s));
            }
            assert!(m.minors(rows.min(cols) + 1).is_err());
        }
    }
}
