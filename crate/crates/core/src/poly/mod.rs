//! Exact multivariate polynomials over the rationals.
//!
//! A [`Poly`] is a sparse map from exponent vectors to nonzero rational
//! coefficients.  Every polynomial carries the number of variables of the
//! context it lives in; arithmetic between different contexts is an error
//! (checked methods) or a panic (operator overloads).

mod matrix;
mod parse;
mod ratfunc;

pub use matrix::{block_det_product, bordered_minor_identity, bordered_minor_matrix, PolyMat};
pub use parse::{mono_to_string, parse_poly, parse_rat, PolyDisplay};
pub use ratfunc::RatFunc;
pub(crate) use ratfunc::common_denominator;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Mono(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Mono(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        if !other.divides(self) {
            return None;
        }
        Some(Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The single variable index if this is a pure power `x_i^e` with `e > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(Mono::one(nvars), c)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(Mono::var(nvars, index), Rat::one())
    }

    pub fn monomial(m: Mono, c: Rat) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging
    /// repeated monomials and dropping zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Rat)>>(nvars: usize, terms: I) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity does not match context");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Mono::one(self.nvars))
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Minimal total degree (the order at the origin); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Leading term in lexicographic order `x_1 > x_2 > ...`.
    pub fn lex_leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_context(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ContextMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_context(other)?;
        let mut acc: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                *acc.entry(m).or_insert_with(Rat::zero) += c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Poly {
            nvars: self.nvars,
            terms: acc,
        })
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, a)| (mm.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Result<Poly> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Mono(exps), c * Rat::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut powers: Vec<Vec<Rat>> = vec![vec![Rat::one()]; self.nvars];
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &point[i];
                    cache.push(next);
                }
                v *= &cache[e as usize];
            }
            total += v;
        }
        Ok(total)
    }

    /// Replaces variable `var` by `q` (capture free: `q` is evaluated in the
    /// original variables).
    pub fn substitute(&self, var: usize, q: &Poly) -> Result<Poly> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        self.check_context(q)?;
        let mut powers = vec![Poly::one(self.nvars)];
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * q;
                powers.push(next);
            }
            let mut rest = m.0.clone();
            rest[var] = 0;
            let t = powers[e].mul_term(&Mono(rest), c);
            out = &out + &t;
        }
        Ok(out)
    }

    /// Simultaneous substitution `x_i := images[i]`; the images may live in a
    /// different context.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = images.first().map(Poly::nvars).unwrap_or(0);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::ContextMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(target)]; self.nvars];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &images[i];
                    cache.push(next);
                }
                if e > 0 {
                    t = &t * &cache[e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Embeds into a context with `nvars` variables, sending variable `i` to
    /// `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        Poly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; nvars];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] += x;
                }
                (Mono(e), c.clone())
            }),
        )
    }

    /// Drops all terms of total degree `>= bound`.
    pub fn truncate_degree(&self, bound: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() || self.nvars != d.nvars {
            return None;
        }
        if d.is_constant() {
            return Some(self.scale(&d.constant_term().recip()));
        }
        let (dm, dc) = d.lex_leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut q = Poly::zero(self.nvars);
        let mut r = self.clone();
        while let Some((m, c)) = r.lex_leading() {
            let t = m.div(&dm)?;
            let coef = c / &dc;
            r = &r - &d.mul_term(&t, &coef);
            q.add_term(t, coef);
        }
        Some(q)
    }

    /// Divides out the rational content and makes the lex-leading
    /// coefficient positive.
    pub fn primitive(&self) -> Poly {
        let Some((_, lc)) = self.lex_leading() else {
            return self.clone();
        };
        let sign = if lc.is_negative() { -Rat::one() } else { Rat::one() };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let content = Rat::new(num_gcd, den_lcm);
        self.scale(&(sign / content))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", PolyDisplay::new(self, &names))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            /// Panics if the operands live in different variable contexts.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial context mismatch")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        parse_poly(s, &["x".to_string(), "y".to_string()]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
    }

    #[test]
    fn identities() {
        let q = p("x^2+y^3");
        assert_eq!(&q + &Poly::zero(2), q);
        assert_eq!(&q * &Poly::one(2), q);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = Poly::var(2, 0);
        let b = Poly::var(3, 0);
        assert_eq!(
            a.checked_add(&b),
            Err(Error::ContextMismatch { left: 2, right: 3 })
        );
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn power_rule() {
        let q = p("x^2+y^3");
        assert_eq!(q.derivative(0).unwrap(), p("2*x"));
        assert_eq!(q.derivative(1).unwrap(), p("3*y^2"));
        assert!(p("5").derivative(0).unwrap().is_zero());
        assert_eq!(
            q.derivative(2),
            Err(Error::IndexOutOfRange { index: 2, nvars: 2 })
        );
    }

    #[test]
    fn evaluation_and_substitution() {
        assert_eq!(p("x^2+y^3").evaluate(&[int(1), int(1)]).unwrap(), int(2));
        assert_eq!(
            p("4*x^2+9*y^4").evaluate(&[int(0), rat(1, 3)]).unwrap(),
            rat(1, 9)
        );
        assert_eq!(p("x+y").substitute(1, &p("x")).unwrap(), p("2*x"));
        assert!(p("x").evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn exact_division() {
        let a = p("x^2+y^3");
        let b = p("3*x - y + 1/2");
        assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        assert!(p("x^2+1").div_exact(&p("x+y")).is_none());
    }

    #[test]
    fn primitive_part() {
        assert_eq!(p("-2/3*x + 4/9*y").primitive(), p("3*x - 2*y"));
    }
}
