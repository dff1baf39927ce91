use num_traits::Zero;

use super::{Poly, Rat};
use crate::error::{Error, Result};

/// Quotient of two polynomials.  No gcd normalisation is performed;
/// equality is decided by cross multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.nvars() != den.nvars() {
            return Err(Error::ContextMismatch {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.nvars());
        RatFunc { num: p, den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Rewrites `a/b` and `c/d` over a shared denominator, avoiding the
    /// product `b*d` when one denominator divides the other.
    fn align(&self, other: &RatFunc) -> (Poly, Poly, Poly) {
        if self.den == other.den {
            return (self.num.clone(), other.num.clone(), self.den.clone());
        }
        if let Some(q) = other.den.div_exact(&self.den) {
            return (&self.num * &q, other.num.clone(), other.den.clone());
        }
        if let Some(q) = self.den.div_exact(&other.den) {
            return (self.num.clone(), &other.num * &q, self.den.clone());
        }
        (
            &self.num * &other.den,
            &other.num * &self.den,
            &self.den * &other.den,
        )
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let (a, b, d) = self.align(other);
        RatFunc { num: &a + &b, den: d }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        let (a, b, d) = self.align(other);
        RatFunc { num: &a - &b, den: d }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFunc {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        })
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// Quotient rule.
    pub fn derivative(&self, var: usize) -> Result<RatFunc> {
        let dn = self.num.derivative(var)?;
        let dd = self.den.derivative(var)?;
        if dd.is_zero() {
            return Ok(RatFunc {
                num: dn,
                den: self.den.clone(),
            });
        }
        Ok(RatFunc {
            num: &(&dn * &self.den) - &(&self.num * &dd),
            den: &self.den * &self.den,
        })
    }

    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.evaluate(point)? / d)
    }

    /// `a/b == c/d` iff `a*d == c*b`.
    pub fn equals(&self, other: &RatFunc) -> bool {
        let (a, b, _) = self.align(other);
        a == b
    }

    /// The polynomial `a*d - c*b` whose vanishing decides equality.
    pub fn cross_difference(&self, other: &RatFunc) -> Poly {
        let (a, b, _) = self.align(other);
        &a - &b
    }
}

/// Puts a row of rational functions over one denominator.
pub(crate) fn common_denominator(row: &[RatFunc]) -> (Vec<Poly>, Poly) {
    let nvars = row.first().map(RatFunc::nvars).unwrap_or(0);
    let mut den = Poly::one(nvars);
    for r in row {
        if r.den.is_constant() || den.div_exact(&r.den).is_some() {
            continue;
        }
        match r.den.div_exact(&den) {
            Some(_) => den = r.den.clone(),
            None => den = &den * &r.den,
        }
    }
    let nums = row
        .iter()
        .map(|r| {
            let q = den.div_exact(&r.den).expect("common denominator is a multiple");
            &r.num * &q
        })
        .collect();
    (nums, den)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}
