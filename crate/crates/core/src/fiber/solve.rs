//! Exact solution of square bivariate systems by resultants.
//!
//! After a shear `x = t - c*y` with `c` chosen so that both equations have
//! constant leading coefficient in `y` and `t` separates the solutions, the
//! resultant `R(t) = Res_y(F, G)` has one root per solution, with the
//! intersection multiplicity as its multiplicity.  Each squarefree factor
//! of `R` is split according to the degree of `gcd(F(t0, y), G(t0, y))`
//! and parameterized from the corresponding subresultant, giving every
//! solution as `(X(t0), Y(t0))` for a root `t0` of a rational polynomial.

use std::collections::HashMap;

use num_traits::Zero;

use super::upoly::{upoly_determinant, UPoly};
use crate::error::{Error, Result};
use crate::poly::{rat, Mono, Poly, Rat};

/// Solutions `(X(t), Y(t))` for `t` ranging over the roots of `r`, all of
/// intersection multiplicity `multiplicity`.  `r` is monic and squarefree.
#[derive(Clone, Debug)]
pub struct Part {
    pub multiplicity: usize,
    pub r: UPoly,
    pub x: UPoly,
    pub y: UPoly,
}

/// Univariate representation of the affine solutions of `F = G = 0`.
#[derive(Clone, Debug)]
pub struct Solutions {
    /// Shear parameter: `t = x + c*y`.
    pub c: Rat,
    pub resultant: UPoly,
    pub parts: Vec<Part>,
}

impl Solutions {
    /// Number of affine solutions counted with multiplicity.
    pub fn total(&self) -> usize {
        self.parts.iter().map(|p| p.multiplicity * p.r.deg()).sum()
    }

    pub fn all_simple(&self) -> bool {
        self.parts.iter().all(|p| p.multiplicity == 1)
    }
}

const SHEARS: [(i64, i64); 24] = [
    (1, 2),
    (2, 1),
    (-1, 3),
    (3, 1),
    (-5, 2),
    (1, 7),
    (4, 1),
    (-3, 4),
    (5, 3),
    (-6, 1),
    (2, 9),
    (7, 2),
    (-8, 5),
    (9, 4),
    (-11, 3),
    (3, 11),
    (13, 6),
    (-2, 13),
    (17, 5),
    (-19, 7),
    (5, 17),
    (23, 3),
    (-7, 23),
    (29, 11),
];

/// Solves `f = g = 0` in two variables.
pub fn solve_bivariate(f: &Poly, g: &Poly) -> Result<Solutions> {
    if f.nvars() != 2 || g.nvars() != 2 {
        return Err(Error::Precondition("bivariate system expected".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::Degenerate("an equation vanishes identically".into()));
    }
    if f.is_constant() || g.is_constant() {
        return Ok(Solutions {
            c: Rat::zero(),
            resultant: UPoly::one(),
            parts: Vec::new(),
        });
    }
    for &(p, q) in &SHEARS {
        let c = rat(p, q);
        if let Some(s) = try_shear(f, g, &c)? {
            return Ok(s);
        }
    }
    Err(Error::Degenerate("no separating shear found".into()))
}

/// `p(t - c*y, y)` as coefficients in `y` (constant first) over `Q[t]`.
fn shear(p: &Poly, c: &Rat) -> Vec<UPoly> {
    let t = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let x_img = &t - &y.scale(c);
    let q = p.compose(&[x_img, y]).expect("two variables");
    let dy = q.degree_in(1).unwrap_or(0) as usize;
    let mut out = vec![Vec::new(); dy + 1];
    for (m, a) in q.terms() {
        let e = m.exponents();
        let row = &mut out[e[1] as usize];
        let i = e[0] as usize;
        if row.len() <= i {
            row.resize(i + 1, Rat::zero());
        }
        row[i] = a.clone();
    }
    out.into_iter().map(UPoly::from_coeffs).collect()
}

fn top_form_at(p: &Poly, c: &Rat) -> Rat {
    let d = p.total_degree().unwrap_or(0);
    let top = Poly::from_terms(
        2,
        p.terms()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, a)| (m.clone(), a.clone())),
    );
    top.evaluate(&[-c.clone(), Rat::from_integer(1.into())])
        .expect("two variables")
}

/// Coefficients of the `j`-th subresultant of `p` (degree `m`) and `q`
/// (degree `n`), `j < min(m, n)`.
fn subresultant(p: &[UPoly], q: &[UPoly], j: usize) -> Vec<UPoly> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let cols = m + n - j;
    let mut rows: Vec<Vec<UPoly>> = Vec::new();
    // column index of y^k is cols - 1 - k
    for s in (0..n - j).rev() {
        let mut row = vec![UPoly::zero(); cols];
        for (k, a) in p.iter().enumerate() {
            row[cols - 1 - (k + s)] = a.clone();
        }
        rows.push(row);
    }
    for s in (0..m - j).rev() {
        let mut row = vec![UPoly::zero(); cols];
        for (k, a) in q.iter().enumerate() {
            row[cols - 1 - (k + s)] = a.clone();
        }
        rows.push(row);
    }
    let lead = m + n - 2 * j - 1;
    (0..=j)
        .map(|i| {
            let mut take: Vec<usize> = (0..lead).collect();
            take.push(cols - 1 - i);
            let sq = rows
                .iter()
                .map(|r| take.iter().map(|&c| r[c].clone()).collect())
                .collect();
            upoly_determinant(sq)
        })
        .collect()
}

fn try_shear(f: &Poly, g: &Poly, c: &Rat) -> Result<Option<Solutions>> {
    if top_form_at(f, c).is_zero() || top_form_at(g, c).is_zero() {
        return Ok(None);
    }
    let fs = shear(f, c);
    let gs = shear(g, c);
    let (m, n) = (fs.len() - 1, gs.len() - 1);
    let resultant = subresultant(&fs, &gs, 0).remove(0);
    if resultant.is_zero() {
        return Err(Error::Degenerate(
            "the equations share a component (resultant vanishes)".into(),
        ));
    }
    let low = m.min(n);
    let mut cache: HashMap<usize, Vec<UPoly>> = HashMap::new();
    let mut sub = |e: usize| -> Vec<UPoly> {
        cache
            .entry(e)
            .or_insert_with(|| {
                if e == low {
                    if n <= m {
                        gs.clone()
                    } else {
                        fs.clone()
                    }
                } else {
                    subresultant(&fs, &gs, e)
                }
            })
            .clone()
    };

    let mut parts = Vec::new();
    for (factor, mult) in resultant.squarefree_decomposition() {
        let mut remaining = factor;
        for e in 1..=low {
            if remaining.is_constant() {
                break;
            }
            let s = sub(e);
            let se = s[e].rem(&remaining);
            let vanish = remaining.gcd(&se);
            let part = remaining.exact_div(&vanish).expect("gcd divides");
            if !part.is_constant() {
                match parameterize(&s, e, &part, c) {
                    Some((x, y)) => parts.push(Part {
                        multiplicity: mult,
                        r: part,
                        x,
                        y,
                    }),
                    None => return Ok(None),
                }
            }
            remaining = vanish;
        }
        if !remaining.is_constant() {
            return Ok(None);
        }
    }
    Ok(Some(Solutions {
        c: c.clone(),
        resultant,
        parts,
    }))
}

/// Reads the common root off `S_e = s_e (y - y0)^e` modulo `r`; `None`
/// when `S_e` is not a perfect power there (the shear does not separate).
fn parameterize(s: &[UPoly], e: usize, r: &UPoly, c: &Rat) -> Option<(UPoly, UPoly)> {
    let se = s[e].rem(r);
    let e_rat = Rat::from_integer((e as i64).into());
    let inv = se.scale(&e_rat).inverse_mod(r)?;
    let y0 = s[e - 1].neg().mul_mod(&inv, r);
    // check s_i == s_e * binom(e, i) * (-y0)^(e - i)
    let neg_y0 = y0.neg();
    let mut power = UPoly::one();
    let mut binom = Rat::from_integer(1.into());
    for k in 0..=e {
        // k = e - i
        let i = e - k;
        let expected = se.mul_mod(&power, r).scale(&binom);
        if s[i].rem(r) != expected {
            return None;
        }
        power = power.mul_mod(&neg_y0, r);
        binom = binom * Rat::from_integer(((i) as i64).into())
            / Rat::from_integer(((k + 1) as i64).into());
    }
    let x0 = UPoly::t().sub(&y0.scale(c)).rem(r);
    Some((x0, y0))
}

/// `p(X(t), Y(t)) mod r`.
pub fn eval_mod(p: &Poly, x: &UPoly, y: &UPoly, r: &UPoly) -> UPoly {
    let mut xp: Vec<UPoly> = vec![UPoly::one()];
    let mut yp: Vec<UPoly> = vec![UPoly::one()];
    let mut acc = UPoly::zero();
    for (m, a) in p.terms() {
        let e = m.exponents();
        while xp.len() <= e[0] as usize {
            let next = xp.last().unwrap().mul_mod(x, r);
            xp.push(next);
        }
        while yp.len() <= e[1] as usize {
            let next = yp.last().unwrap().mul_mod(y, r);
            yp.push(next);
        }
        let term = xp[e[0] as usize].mul_mod(&yp[e[1] as usize], r).scale(a);
        acc = acc.add(&term);
    }
    acc.rem(r)
}

/// `x^a y^b` as a polynomial in two variables.
pub fn monomial2(a: u32, b: u32) -> Poly {
    Poly::monomial(Mono::from_exponents(vec![a, b]), Rat::from_integer(1.into()))
}
