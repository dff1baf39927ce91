use std::collections::BTreeSet;

use num_traits::Zero;

use super::LocalOrder;
use crate::error::{Error, Result};
use crate::poly::{Mono, Poly, Rat};

/// Reductions whose intermediate polynomials exceed this total degree abort.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// Colength of an ideal in the local ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Colength {
    Finite(usize),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<usize> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl std::fmt::Display for Colength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug)]
struct Entry {
    poly: Poly,
    lm: Mono,
    lc: Rat,
    ecart: u32,
}

impl Entry {
    fn new(poly: Poly, order: LocalOrder) -> Option<Entry> {
        let (lm, lc) = order.leading_term(&poly).map(|(m, c)| (m.clone(), c.clone()))?;
        let ecart = poly.total_degree().unwrap_or(0) - lm.degree();
        Some(Entry {
            poly,
            lm,
            lc,
            ecart,
        })
    }
}

/// A standard basis of an ideal of the local ring at the origin.
#[derive(Clone, Debug)]
pub struct StdBasis {
    order: LocalOrder,
    nvars: usize,
    source: Vec<Poly>,
    generators: Vec<Poly>,
    leading: Vec<Mono>,
    degree_cap: u32,
}

/// Mora's tangent cone algorithm with the normal pair strategy.
pub fn standard_basis(gens: &[Poly], order: LocalOrder) -> Result<StdBasis> {
    standard_basis_with_cap(gens, order, DEFAULT_DEGREE_CAP)
}

pub fn standard_basis_with_cap(gens: &[Poly], order: LocalOrder, degree_cap: u32) -> Result<StdBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::Precondition("empty generator list".into()));
    };
    let nvars = first.nvars();
    if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::ContextMismatch {
            left: nvars,
            right: bad.nvars(),
        });
    }
    let unit = |source: &[Poly]| StdBasis {
        order,
        nvars,
        source: source.to_vec(),
        generators: vec![Poly::one(nvars)],
        leading: vec![Mono::one(nvars)],
        degree_cap,
    };

    let mut s: Vec<Entry> = Vec::new();
    for g in gens {
        if let Some(e) = Entry::new(g.clone(), order) {
            if e.lm.is_one() {
                return Ok(unit(gens));
            }
            s.push(e);
        }
    }

    // (lcm degree, insertion counter, i, j)
    let mut pairs: BTreeSet<(u32, usize, usize, usize)> = BTreeSet::new();
    let mut counter = 0usize;
    for j in 0..s.len() {
        for i in 0..j {
            pairs.insert((s[i].lm.lcm(&s[j].lm).degree(), counter, i, j));
            counter += 1;
        }
    }

    // Once the leading monomials contain every monomial of degree D, the
    // ideal contains m^D and terms of degree > D can be dropped.
    let mut bound: Option<u32> = None;
    update_bound(&mut s, &mut bound, nvars, order);

    while let Some(pair) = pairs.pop_first() {
        let (_, _, i, j) = pair;
        let h = s_poly(&s[i], &s[j]);
        let h = weak_normal_form(h, &s, order, degree_cap, bound)?;
        let Some(e) = Entry::new(h, order) else {
            continue;
        };
        if e.lm.is_one() {
            return Ok(unit(gens));
        }
        let new = s.len();
        for (i, other) in s.iter().enumerate() {
            pairs.insert((other.lm.lcm(&e.lm).degree(), counter, i, new));
            counter += 1;
        }
        s.push(e);
        update_bound(&mut s, &mut bound, nvars, order);
    }

    // Minimalize: keep one element per minimal leading monomial.
    let mut keep: Vec<Entry> = Vec::new();
    for (idx, e) in s.iter().enumerate() {
        let dominated = s.iter().enumerate().any(|(other, f)| {
            other != idx && f.lm.divides(&e.lm) && (f.lm != e.lm || other < idx)
        });
        if !dominated {
            keep.push(e.clone());
        }
    }
    keep.sort_by(|a, b| order.compare(&b.lm, &a.lm));
    let generators = keep
        .iter()
        .map(|e| e.poly.scale(&e.lc.recip()))
        .collect();
    let leading = keep.into_iter().map(|e| e.lm).collect();
    Ok(StdBasis {
        order,
        nvars,
        source: gens.to_vec(),
        generators,
        leading,
        degree_cap,
    })
}

/// Smallest `D` such that every monomial of degree `D` is divisible by one
/// of `leading`.
fn corner_degree(leading: &[Mono], nvars: usize) -> Option<u32> {
    let mut bounds = vec![None; nvars];
    for l in leading {
        if let Some(v) = l.pure_power_var() {
            let e = l.exponents()[v];
            bounds[v] = Some(bounds[v].map_or(e, |b: u32| b.min(e)));
        }
    }
    let bounds: Vec<u32> = bounds.into_iter().collect::<Option<_>>()?;
    let mut top = 0;
    let mut e = vec![0u32; nvars];
    loop {
        let m = Mono::from_exponents(e.clone());
        if !leading.iter().any(|l| l.divides(&m)) {
            top = top.max(m.degree() + 1);
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return Some(top);
            }
            e[i] += 1;
            if e[i] < bounds[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

fn update_bound(s: &mut [Entry], bound: &mut Option<u32>, nvars: usize, order: LocalOrder) {
    let lms: Vec<Mono> = s.iter().map(|e| e.lm.clone()).collect();
    let Some(d) = corner_degree(&lms, nvars) else {
        return;
    };
    let b = d + 1;
    if bound.is_some_and(|old| old <= b) {
        return;
    }
    *bound = Some(b);
    for e in s.iter_mut() {
        if e.lm.degree() < b {
            *e = Entry::new(e.poly.truncate_degree(b), order).expect("leading term kept");
        }
    }
}

fn s_poly(f: &Entry, g: &Entry) -> Poly {
    let l = f.lm.lcm(&g.lm);
    let a = f.poly.mul_term(&l.div(&f.lm).unwrap(), &f.lc.recip());
    let b = g.poly.mul_term(&l.div(&g.lm).unwrap(), &g.lc.recip());
    &a - &b
}

/// Mora's weak normal form: returns `h` with `u*f - h` in the ideal for some
/// unit `u`, and `h = 0` or its leading monomial outside the leading ideal.
fn weak_normal_form(
    f: Poly,
    basis: &[Entry],
    order: LocalOrder,
    cap: u32,
    bound: Option<u32>,
) -> Result<Poly> {
    let trunc = |p: Poly| match bound {
        Some(b) => p.truncate_degree(b),
        None => p,
    };
    let mut extra: Vec<Entry> = Vec::new();
    let mut h = trunc(f);
    loop {
        let Some(he) = Entry::new(h.clone(), order) else {
            return Ok(h);
        };
        let best = basis
            .iter()
            .chain(extra.iter())
            .filter(|g| g.lm.divides(&he.lm))
            .min_by_key(|g| g.ecart)
            .cloned();
        let Some(g) = best else {
            return Ok(h);
        };
        let t = he.lm.div(&g.lm).expect("divisor checked");
        let c = &he.lc / &g.lc;
        if g.ecart > he.ecart {
            extra.push(he);
        }
        h = trunc(&h - &g.poly.mul_term(&t, &c));
        if h.total_degree().unwrap_or(0) > cap {
            return Err(Error::DegreeCap { cap });
        }
    }
}

impl StdBasis {
    pub fn order(&self) -> LocalOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The generators the basis was computed from.
    pub fn source(&self) -> &[Poly] {
        &self.source
    }

    /// Basis elements, leading coefficients normalized to 1, largest
    /// leading monomial first.
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[Mono] {
        &self.leading
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(Mono::is_one)
    }

    fn in_staircase(&self, m: &Mono) -> bool {
        self.leading.iter().any(|l| l.divides(m))
    }

    /// Smallest pure power of each variable in the leading ideal.
    fn pure_powers(&self) -> Option<Vec<u32>> {
        let mut bounds = vec![None; self.nvars];
        for l in &self.leading {
            if let Some(v) = l.pure_power_var() {
                let e = l.exponents()[v];
                bounds[v] = Some(bounds[v].map_or(e, |b: u32| b.min(e)));
            }
        }
        bounds.into_iter().collect()
    }

    /// Monomials outside the leading ideal, or `None` if there are
    /// infinitely many.  Unsorted.
    pub fn standard_monomials(&self) -> Option<Vec<Mono>> {
        if self.is_unit() {
            return Some(Vec::new());
        }
        let bounds = self.pure_powers()?;
        let mut out = Vec::new();
        let mut e = vec![0u32; self.nvars];
        loop {
            let m = Mono::from_exponents(e.clone());
            if !self.in_staircase(&m) {
                out.push(m);
            }
            // odometer over the bounding box
            let mut i = 0;
            loop {
                if i == self.nvars {
                    return Some(out);
                }
                e[i] += 1;
                if e[i] < bounds[i] {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    pub fn colength(&self) -> Colength {
        match self.standard_monomials() {
            Some(v) => Colength::Finite(v.len()),
            None => Colength::Infinite,
        }
    }

    /// A degree `D` with every monomial of degree `>= D` in the ideal, when
    /// the colength is finite.
    pub fn truncation_degree(&self) -> Option<u32> {
        let monos = self.standard_monomials()?;
        Some(1 + monos.iter().map(Mono::degree).max().unwrap_or(0))
    }

    /// Fully reduced normal form: no term of the result is divisible by a
    /// leading monomial, and `p` minus the result lies in the ideal of the
    /// local ring.
    ///
    /// For finite colength the reduction discards terms of degree at least
    /// [`truncation_degree`](Self::truncation_degree), which lie in the
    /// ideal, so it always terminates.  Otherwise the reduction may run
    /// forever in principle and is stopped at the degree cap.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        if p.nvars() != self.nvars {
            return Err(Error::ContextMismatch {
                left: self.nvars,
                right: p.nvars(),
            });
        }
        if self.is_unit() {
            return Ok(Poly::zero(self.nvars));
        }
        let bound = self.truncation_degree();
        let trunc = |q: Poly| match bound {
            Some(d) => q.truncate_degree(d),
            None => q,
        };
        let mut work = trunc(p.clone());
        let mut out: Vec<(Mono, Rat)> = Vec::new();
        while let Some((m, c)) = self
            .order
            .leading_term(&work)
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            match self.leading.iter().position(|l| l.divides(&m)) {
                Some(i) => {
                    let t = m.div(&self.leading[i]).expect("divisor checked");
                    work = trunc(&work - &self.generators[i].mul_term(&t, &c));
                    if bound.is_none() && work.total_degree().unwrap_or(0) > self.degree_cap {
                        return Err(Error::DegreeCap {
                            cap: self.degree_cap,
                        });
                    }
                }
                None => {
                    work = &work - &Poly::monomial(m.clone(), c.clone());
                    out.push((m, c));
                }
            }
        }
        Ok(Poly::from_terms(self.nvars, out))
    }

    /// Whether `p` lies in the ideal of the local ring.
    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

/// `true` if `p` is a unit of the local ring.
pub fn is_local_unit(p: &Poly) -> bool {
    !p.constant_term().is_zero()
}
