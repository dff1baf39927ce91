//! Symmetric rational matrices, exact inertia, and the quadratic forms
//! `Q(a, b) = l(a * b)` on local algebras.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::upoly::UPoly;
use crate::fiber::{self, solve::eval_mod, FiberAnalysis, FiberSpec};
use crate::index::{complex_index, GermProblem};
use crate::local::QuotAlg;
use crate::poly::{Mono, Poly, PolyMat, Rat};

/// Symmetric matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMat {
    dim: usize,
    entries: Vec<Vec<Rat>>,
}

impl SymMat {
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<Self> {
        let dim = entries.len();
        for row in &entries {
            if row.len() != dim {
                return Err(Error::NonSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
        }
        for i in 0..dim {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Precondition(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(SymMat { dim, entries })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut entries = vec![vec![Rat::zero(); dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                entries[j][i] = v.clone();
                entries[i][j] = v;
            }
        }
        SymMat { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        SymMat::from_fn(dim, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    pub fn diagonal(d: &[Rat]) -> Self {
        SymMat::from_fn(d.len(), |i, j| if i == j { d[i].clone() } else { Rat::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    /// `S^T M S` for a square `s` of the same size.
    pub fn congruent(&self, s: &[Vec<Rat>]) -> Result<SymMat> {
        let n = self.dim;
        if s.len() != n || s.iter().any(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: s.len(),
            });
        }
        let mut ms = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rat::zero();
                for k in 0..n {
                    if !self.entries[i][k].is_zero() && !s[k][j].is_zero() {
                        acc += &self.entries[i][k] * &s[k][j];
                    }
                }
                ms[i][j] = acc;
            }
        }
        Ok(SymMat::from_fn(n, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..n {
                if !s[k][i].is_zero() {
                    acc += &s[k][i] * &ms[k][j];
                }
            }
            acc
        }))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect()
    }
}

/// Inertia of a symmetric matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignatureTriple {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl SignatureTriple {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }
}

/// Exact inertia by symmetric elimination, using `2 x 2` pivots when the
/// remaining diagonal vanishes.
pub fn signature(m: &SymMat) -> SignatureTriple {
    let mut a = m.entries.clone();
    let mut active: Vec<usize> = (0..m.dim).collect();
    let mut out = SignatureTriple::default();
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let i = active.remove(pos);
            let p = a[i][i].clone();
            if p.is_positive() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            for &r in &active {
                if a[r][i].is_zero() {
                    continue;
                }
                let f = &a[r][i] / &p;
                for &s in &active {
                    if !a[i][s].is_zero() {
                        let d = &f * &a[i][s];
                        a[r][s] -= d;
                    }
                }
            }
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            out.zero += active.len();
            break;
        };
        // [[0, b], [b, 0]] has one positive and one negative eigenvalue
        out.positive += 1;
        out.negative += 1;
        let b = a[i][j].clone();
        active.retain(|&r| r != i && r != j);
        for &r in &active {
            for &s in &active {
                let t = &a[r][i] * &a[j][s] + &a[r][j] * &a[i][s];
                if !t.is_zero() {
                    a[r][s] -= t / &b;
                }
            }
        }
    }
    out
}

/// A linear functional on a quotient algebra, as values on its basis.
pub type Functional = Vec<Rat>;

/// `det(dA_i / dx_j)`.
pub fn hessian_poly(g: &GermProblem) -> Result<Poly> {
    let n = g.n();
    let mut rows = Vec::with_capacity(n);
    for a in g.a() {
        rows.push((0..n).map(|j| a.derivative(j)).collect::<Result<Vec<_>>>()?);
    }
    PolyMat::from_rows(n, rows)?.determinant()
}

/// The functional dual to the highest basis monomial carrying the
/// Hessian class, normalized so that `l(hessian) = dim`.
pub fn el_functional_smooth(q: &QuotAlg, hessian_class: &Poly) -> Result<Functional> {
    let c = q.coords(hessian_class)?;
    let Some(s) = c.iter().rposition(|v| !v.is_zero()) else {
        return Err(Error::Inconsistent(
            "the Hessian class vanishes in a finite dimensional local algebra".into(),
        ));
    };
    let mut ell = vec![Rat::zero(); q.dim()];
    ell[s] = Rat::from_integer((q.dim() as i64).into()) / &c[s];
    Ok(ell)
}

/// `Q_ab = l(phi_a phi_b)` through the multiplication table.
pub fn gram(q: &QuotAlg, ell: &[Rat]) -> Result<SymMat> {
    if ell.len() != q.dim() {
        return Err(Error::LengthMismatch {
            expected: q.dim(),
            got: ell.len(),
        });
    }
    Ok(SymMat::from_fn(q.dim(), |a, b| {
        q.product(a, b)
            .iter()
            .zip(ell)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| c * l)
            .sum()
    }))
}

/// Value of a functional on a polynomial.
pub fn apply_functional(q: &QuotAlg, ell: &[Rat], p: &Poly) -> Result<Rat> {
    Ok(q.coords(p)?.iter().zip(ell).map(|(c, l)| c * l).sum())
}

#[derive(Clone, Debug)]
pub struct SmoothIndexReport {
    pub quotient: QuotAlg,
    pub hessian_class: Vec<Rat>,
    pub functional: Functional,
    pub gram: SymMat,
    pub inertia: SignatureTriple,
    pub real_index: i64,
}

/// Real index of `omega` at an isolated zero in `R^n` (`k = 0`).
pub fn real_index_smooth(g: &GermProblem) -> Result<SmoothIndexReport> {
    if g.k() != 0 {
        return Err(Error::Precondition(format!(
            "the smooth real index needs k = 0, got k = {}",
            g.k()
        )));
    }
    let report = complex_index(g)?;
    let Some(q) = report.quotient else {
        return Err(Error::InfiniteColength);
    };
    let h = hessian_poly(g)?;
    let ell = el_functional_smooth(&q, &h)?;
    let gm = gram(&q, &ell)?;
    let inertia = signature(&gm);
    if !inertia.is_nondegenerate() {
        return Err(Error::Inconsistent("degenerate local form".into()));
    }
    Ok(SmoothIndexReport {
        hessian_class: q.coords(&h)?,
        quotient: q,
        functional: ell,
        gram: gm,
        real_index: inertia.signature(),
        inertia,
    })
}

/// Power sums `p_0 .. p_{d-1}` of the roots of the monic `r`.
fn power_sums(r: &UPoly) -> Vec<Rat> {
    let d = r.deg();
    let c = r.coeffs();
    let mut p = Vec::with_capacity(d);
    if d == 0 {
        return p;
    }
    p.push(Rat::from_integer((d as i64).into()));
    for k in 1..d {
        let mut s = Rat::from_integer((k as i64).into()) * &c[d - k];
        for i in 1..k {
            s += &c[d - i] * &p[k - i];
        }
        p.push(-s);
    }
    p
}

#[derive(Clone, Debug)]
struct TracePiece {
    r: UPoly,
    x: UPoly,
    y: UPoly,
    inv_h: UPoly,
    sums: Vec<Rat>,
}

/// `l(psi) = sum psi / h~` over the zeros on the fiber, evaluated as
/// traces in `Q[t] / (r)`.
#[derive(Clone, Debug)]
pub struct FiberFunctional {
    pieces: Vec<TracePiece>,
}

impl FiberFunctional {
    pub fn apply(&self, psi: &Poly) -> Rat {
        let mut total = Rat::zero();
        for p in &self.pieces {
            let v = eval_mod(psi, &p.x, &p.y, &p.r).mul_mod(&p.inv_h, &p.r);
            for (a, s) in v.coeffs().iter().zip(&p.sums) {
                total += a * s;
            }
        }
        total
    }

    pub fn gram(&self, basis: &[Mono]) -> SymMat {
        SymMat::from_fn(basis.len(), |a, b| {
            self.apply(&Poly::monomial(basis[a].mul(&basis[b]), Rat::one()))
        })
    }
}

/// Builds the trace functional; every zero must be simple with `h~ != 0`.
pub fn fiber_functional(a: &FiberAnalysis) -> Result<FiberFunctional> {
    let mut pieces = Vec::with_capacity(a.pieces.len());
    for p in &a.pieces {
        if p.multiplicity != 1 {
            return Err(Error::Degenerate(
                "a zero on the fiber is not simple; perturb the form".into(),
            ));
        }
        let inv = p.h_num.inverse_mod(&p.r).ok_or_else(|| {
            Error::Degenerate("the Hessian vanishes at a zero on the fiber; perturb the form".into())
        })?;
        pieces.push(TracePiece {
            inv_h: p.h_den.mul_mod(&inv, &p.r),
            sums: power_sums(&p.r),
            r: p.r.clone(),
            x: p.x.clone(),
            y: p.y.clone(),
        });
    }
    Ok(FiberFunctional { pieces })
}

#[derive(Clone, Debug)]
pub struct FiberIndexReport {
    pub analysis: FiberAnalysis,
    pub quotient: QuotAlg,
    pub gram: SymMat,
    pub inertia: SignatureTriple,
    pub euler_char: i64,
    pub real_index: i64,
}

/// `signature(Q) - chi + 1` for a plane curve, with `Q` the trace form on
/// the local algebra of the unperturbed index ideal.
pub fn real_index_via_fiber(g: &GermProblem, spec: &FiberSpec) -> Result<FiberIndexReport> {
    let report = complex_index(g)?;
    let Some(q) = report.quotient else {
        return Err(Error::InfiniteColength);
    };
    let a = fiber::analyze_fiber(g, spec)?;
    if !a.all_in_ball() {
        return Err(Error::Degenerate(
            "some affine zeros lie outside the ball; the trace form needs all of them inside"
                .into(),
        ));
    }
    let ell = fiber_functional(&a)?;
    let zeros = a.count_in_ball();
    if zeros != q.dim() {
        return Err(Error::Inconsistent(format!(
            "{zeros} zeros on the fiber but the local algebra has dimension {}",
            q.dim()
        )));
    }
    let gm = ell.gram(q.basis());
    let inertia = signature(&gm);
    let chi = fiber::euler_char_real_curve(&g.f()[0], &a.epsilon, &a.delta)?;
    Ok(FiberIndexReport {
        real_index: inertia.signature() - chi + 1,
        analysis: a,
        quotient: q,
        gram: gm,
        inertia,
        euler_char: chi,
    })
}
