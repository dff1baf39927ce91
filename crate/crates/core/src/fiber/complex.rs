//! Certified location of complex roots.
//!
//! Roots are approximated in floating point (Aberth iteration) and then
//! certified exactly: with Gaussian rational centres `z_i` the discs
//! `|z - z_i| <= n |W_i|`, `W_i = r(z_i) / (lc * prod_{j != i} (z_i - z_j))`,
//! cover all roots, and when they are pairwise disjoint each contains
//! exactly one.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::upoly::{rat_to_f64, UPoly};
use crate::error::{Error, Result};
use crate::poly::Rat;

/// Gaussian rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GRat {
    pub re: Rat,
    pub im: Rat,
}

impl GRat {
    pub fn real(re: Rat) -> Self {
        GRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn zero() -> Self {
        GRat::real(Rat::zero())
    }

    pub fn add(&self, o: &GRat) -> GRat {
        GRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &GRat) -> GRat {
        GRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &GRat) -> GRat {
        GRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn scale(&self, s: &Rat) -> GRat {
        GRat {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    /// Squared modulus.
    pub fn norm2(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    fn from_c64(z: Complex64) -> Option<GRat> {
        Some(GRat {
            re: Rat::from_float(z.re)?,
            im: Rat::from_float(z.im)?,
        })
    }
}

/// Evaluates a rational polynomial at a Gaussian rational.
pub fn eval_grat(p: &UPoly, z: &GRat) -> GRat {
    let mut acc = GRat::zero();
    for a in p.coeffs().iter().rev() {
        acc = acc.mul(z).add(&GRat::real(a.clone()));
    }
    acc
}

/// Rational bounds `lo <= sqrt(q) <= hi`.
pub fn sqrt_bounds(q: &Rat) -> (Rat, Rat) {
    if !q.is_positive() {
        return (Rat::zero(), Rat::zero());
    }
    let approx = rat_to_f64(q).sqrt();
    if approx.is_finite() && approx > 0.0 {
        let mut hi = Rat::from_float(approx * (1.0 + 1e-12)).unwrap_or_else(Rat::one);
        while &(&hi * &hi) < q {
            hi = &hi * Rat::from_integer(2.into());
        }
        let mut lo = Rat::from_float(approx * (1.0 - 1e-12)).unwrap_or_else(Rat::zero);
        while &(&lo * &lo) > q {
            lo = &lo / Rat::from_integer(2.into());
        }
        return (lo, hi);
    }
    // far outside f64 range; fall back to crude power-of-two bounds
    let mut hi = Rat::one();
    while &(&hi * &hi) < q {
        hi = &hi * Rat::from_integer(2.into());
    }
    let mut lo = hi.clone();
    while &(&lo * &lo) > q {
        lo = &lo / Rat::from_integer(2.into());
    }
    (lo, hi)
}

/// A certified disc containing exactly one root.
#[derive(Clone, Debug)]
pub struct RootDisc {
    pub center: GRat,
    /// Upper bound on the radius.
    pub radius: Rat,
}

/// Floating point approximations of all roots by Aberth's method.
fn aberth(p: &UPoly) -> Vec<Complex64> {
    let n = p.deg();
    let lc = rat_to_f64(&p.lc());
    let c: Vec<Complex64> = p
        .to_f64()
        .iter()
        .map(|a| Complex64::new(a / lc, 0.0))
        .collect();
    let dc: Vec<Complex64> = (1..=n).map(|i| c[i] * i as f64).collect();
    let horner = |coef: &[Complex64], z: Complex64| {
        coef.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a)
    };
    // radius from the Fujiwara bound
    let mut bound: f64 = 0.0;
    for i in 0..n {
        let v = c[i].norm().powf(1.0 / (n - i) as f64);
        bound = bound.max(v);
    }
    let r0 = if bound > 0.0 { bound } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * (k as f64 + 0.4) / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let pv = horner(&c, z[i]);
            let dv = horner(&dc, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::one() - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1e-300));
            }
        }
        if max_step < 1e-17 {
            break;
        }
    }
    z
}

/// Certified pairwise disjoint discs, one around each root of the
/// squarefree polynomial `p`.
pub fn certified_root_discs(p: &UPoly) -> Result<Vec<RootDisc>> {
    let n = p.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    let lc = p.lc();
    let approx = aberth(p);
    let centers: Vec<GRat> = approx
        .into_iter()
        .map(|z| GRat::from_c64(z).ok_or_else(|| Error::Degenerate("root approximation diverged".into())))
        .collect::<Result<_>>()?;
    let nn = Rat::from_integer((n as i64).into());
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let num = eval_grat(p, &centers[i]).norm2();
        let mut den = &lc * &lc;
        for j in 0..n {
            if j != i {
                den *= centers[i].sub(&centers[j]).norm2();
            }
        }
        if den.is_zero() {
            return Err(Error::Degenerate("coincident root approximations".into()));
        }
        let rho2 = &nn * &nn * num / den;
        radii.push(sqrt_bounds(&rho2).1);
    }
    for i in 0..n {
        for j in i + 1..n {
            let d2 = centers[i].sub(&centers[j]).norm2();
            let s = &radii[i] + &radii[j];
            if &s * &s >= d2 {
                return Err(Error::Degenerate(
                    "could not separate the complex roots".into(),
                ));
            }
        }
    }
    Ok(centers
        .into_iter()
        .zip(radii)
        .map(|(center, radius)| RootDisc { center, radius })
        .collect())
}

/// Taylor coefficients of `p` at `z`: `p(z + w) = sum b_k w^k`.
fn taylor_shift(p: &UPoly, z: &GRat) -> Vec<GRat> {
    let mut b: Vec<GRat> = p.coeffs().iter().map(|a| GRat::real(a.clone())).collect();
    let n = b.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = b[j + 1].mul(z);
            b[j] = b[j].add(&t);
        }
    }
    b
}

/// Bounds `lo <= |q(w)| <= hi` for all `w` in the disc.
pub fn modulus_bounds(q: &UPoly, disc: &RootDisc) -> (Rat, Rat) {
    let b = taylor_shift(q, &disc.center);
    let (c_lo, c_hi) = match b.first() {
        Some(b0) => sqrt_bounds(&b0.norm2()),
        None => return (Rat::zero(), Rat::zero()),
    };
    let mut err = Rat::zero();
    let mut rpow = Rat::one();
    for bk in b.iter().skip(1) {
        rpow = &rpow * &disc.radius;
        err += sqrt_bounds(&bk.norm2()).1 * &rpow;
    }
    let lo = &c_lo - &err;
    let lo = if lo.is_negative() { Rat::zero() } else { lo };
    (lo, c_hi + err)
}

/// Where a root sits relative to the ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallSide {
    Inside,
    Outside,
}

/// Decides `|X|^2 + |Y|^2 < delta^2` at the root in `disc`.
pub fn classify_in_ball(x: &UPoly, y: &UPoly, disc: &RootDisc, delta: &Rat) -> Result<BallSide> {
    let (xl, xh) = modulus_bounds(x, disc);
    let (yl, yh) = modulus_bounds(y, disc);
    let d2 = delta * delta;
    if &xh * &xh + &yh * &yh < d2 {
        Ok(BallSide::Inside)
    } else if &xl * &xl + &yl * &yl > d2 {
        Ok(BallSide::Outside)
    } else {
        Err(Error::Degenerate(
            "a zero lies too close to the boundary sphere; change delta".into(),
        ))
    }
}
