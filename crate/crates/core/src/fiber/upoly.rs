//! Dense univariate polynomials over the rationals, Sturm sequences and
//! real root isolation.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::poly::{Mono, Poly, Rat};

/// Coefficients from the constant term upwards, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    c: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        UPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.c.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree, with `0` for the zero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lc(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i32 {
        sign(&self.eval(x))
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly {
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> UPoly {
        if s.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            c: self.c.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rat::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut out = UPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg();
        let inv = d.lc().recip();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] * &inv;
            if coef.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] -= &coef * b;
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (UPoly::from_coeffs(q), UPoly::from_coeffs(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &UPoly) -> Option<UPoly> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(s0.scale(&r0.lc().recip()).rem(m))
    }

    pub fn mul_mod(&self, o: &UPoly, m: &UPoly) -> UPoly {
        self.mul(o).rem(m)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rat::from_integer((i as i64).into()))
                .collect(),
        )
    }

    /// `self(q(t))`.
    pub fn compose(&self, q: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(q).add(&UPoly::constant(a.clone()));
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's algorithm: pairs `(g_i, i)` with `self = lc * prod g_i^i`, each
    /// `g_i` monic, squarefree, nonconstant and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = df.exact_div(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Upper bound on the moduli of all complex roots.
    pub fn cauchy_bound(&self) -> Rat {
        let lc = self.lc().abs();
        let m = self.c[..self.c.len().saturating_sub(1)]
            .iter()
            .map(|a| a.abs() / &lc)
            .max()
            .unwrap_or_else(Rat::zero);
        m + Rat::one()
    }

    pub fn from_poly(p: &Poly) -> UPoly {
        assert_eq!(p.nvars(), 1, "univariate context expected");
        let d = p.total_degree().unwrap_or(0) as usize;
        let mut c = vec![Rat::zero(); d + 1];
        for (m, a) in p.terms() {
            c[m.exponents()[0] as usize] = a.clone();
        }
        UPoly::from_coeffs(c)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(
            1,
            self.c
                .iter()
                .enumerate()
                .map(|(i, a)| (Mono::from_exponents(vec![i as u32]), a.clone())),
        )
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.c.iter().map(rat_to_f64).collect()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["t".to_string()];
        write!(f, "{}", crate::poly::PolyDisplay::new(&self.to_poly(), &names))
    }
}

pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Determinant of a square matrix over `Q[t]` by Bareiss elimination.
pub fn upoly_determinant(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut negate = false;
    let mut prev = UPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return UPoly::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Sturm sequence of a polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<UPoly>,
}

impl Sturm {
    pub fn new(p: &UPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            seq.push(r);
        }
        seq.pop();
        Sturm { seq }
    }

    fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        let b = self.seq[0].cauchy_bound();
        self.count(&-b.clone(), &b)
    }
}

/// A real root of a squarefree polynomial: either exactly rational
/// (`lo == hi`) or the unique root in the open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    pub lo: Rat,
    pub hi: Rat,
}

impl RealRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn approx(&self) -> f64 {
        rat_to_f64(&self.midpoint())
    }
}

/// Isolates all real roots of a squarefree polynomial, in increasing order.
pub fn isolate_real_roots(p: &UPoly) -> Vec<RealRoot> {
    if p.is_constant() {
        return Vec::new();
    }
    let sturm = Sturm::new(p);
    let b = p.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count(&lo, &hi);
        if n == 0 {
            continue;
        }
        if p.eval(&hi).is_zero() {
            out.push(RealRoot {
                lo: hi.clone(),
                hi: hi.clone(),
            });
            if n > 1 {
                // drop the endpoint root and keep splitting the rest
                let mid = (&lo + &hi) / Rat::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
                dedup_exact(&mut out);
            }
            continue;
        }
        if n == 1 {
            out.push(RealRoot { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    dedup_exact(&mut out);
    out.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
    out
}

fn dedup_exact(v: &mut Vec<RealRoot>) {
    v.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
    v.dedup();
}

/// Halves the isolating interval of `root` (a root of `p`).
pub fn refine(p: &UPoly, root: &RealRoot) -> RealRoot {
    if root.is_exact() {
        return root.clone();
    }
    let mid = root.midpoint();
    let s_mid = p.sign_at(&mid);
    if s_mid == 0 {
        return RealRoot {
            lo: mid.clone(),
            hi: mid,
        };
    }
    if p.sign_at(&root.lo) * s_mid < 0 {
        RealRoot {
            lo: root.lo.clone(),
            hi: mid,
        }
    } else {
        RealRoot {
            lo: mid,
            hi: root.hi.clone(),
        }
    }
}

/// Sign of `q` at the root of `p` isolated by `root`, or `None` if `q`
/// vanishes there.  `p` must be squarefree.
pub fn sign_at_root(p: &UPoly, root: &RealRoot, q: &UPoly) -> Option<i32> {
    if root.is_exact() {
        let s = q.sign_at(&root.lo);
        return (s != 0).then_some(s);
    }
    let g = p.gcd(q);
    if !g.is_constant() && Sturm::new(&g).count(&root.lo, &root.hi) > 0 {
        return None;
    }
    let q_sturm = Sturm::new(q);
    let mut r = root.clone();
    loop {
        if r.is_exact() {
            let s = q.sign_at(&r.lo);
            return (s != 0).then_some(s);
        }
        if q_sturm.count(&r.lo, &r.hi) == 0 && !q.eval(&r.lo).is_zero() {
            return Some(q.sign_at(&r.hi));
        }
        r = refine(p, &r);
    }
}
