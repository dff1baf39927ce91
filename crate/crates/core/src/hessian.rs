//! Restriction of a 1-form to the fibers of `f` in a coordinate chart, and
//! two independent routes to its Hessian.
//!
//! In the chart the eliminated variables `x_E` are functions of the free
//! ones `x_F` along each fiber.  The restricted form has coefficients
//! `m_i / Delta`, where `Delta` is the Jacobian minor in the eliminated
//! columns and `m_i` the bordered minor with row `A` and column `i`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::GermProblem;
use crate::poly::{common_denominator, Poly, PolyMat, Rat, RatFunc};

/// Coordinate chart on the fibers of `f`.
#[derive(Clone, Debug)]
pub struct FiberChart {
    problem: GermProblem,
    eliminated: Vec<usize>,
    free: Vec<usize>,
    delta: Poly,
    m: Vec<Poly>,
}

impl FiberChart {
    /// Chart eliminating the first `k` variables.
    pub fn new(g: &GermProblem) -> Result<Self> {
        FiberChart::with_eliminated(g, (0..g.k()).collect())
    }

    /// Chart eliminating the given variables (in that column order).
    pub fn with_eliminated(g: &GermProblem, eliminated: Vec<usize>) -> Result<Self> {
        let n = g.n();
        if eliminated.len() != g.k() {
            return Err(Error::LengthMismatch {
                expected: g.k(),
                got: eliminated.len(),
            });
        }
        for (i, &v) in eliminated.iter().enumerate() {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, nvars: n });
            }
            if eliminated[..i].contains(&v) {
                return Err(Error::Precondition(format!("variable {v} eliminated twice")));
            }
        }
        let free: Vec<usize> = (0..n).filter(|v| !eliminated.contains(v)).collect();
        let mat = g.index_matrix();
        let jac_rows: Vec<usize> = (0..g.k()).collect();
        let delta = mat.select(&jac_rows, &eliminated).determinant()?;
        if delta.is_zero() {
            return Err(Error::Precondition(
                "Jacobian minor of the chart vanishes identically; permute the variables".into(),
            ));
        }
        let all_rows: Vec<usize> = (0..=g.k()).collect();
        let m = free
            .iter()
            .map(|&i| {
                let mut cols = eliminated.clone();
                cols.push(i);
                mat.select(&all_rows, &cols).determinant()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiberChart {
            problem: g.clone(),
            eliminated,
            free,
            delta,
            m,
        })
    }

    pub fn problem(&self) -> &GermProblem {
        &self.problem
    }

    pub fn eliminated(&self) -> &[usize] {
        &self.eliminated
    }

    pub fn free(&self) -> &[usize] {
        &self.free
    }

    pub fn delta(&self) -> &Poly {
        &self.delta
    }

    /// Bordered minors, one per free variable.
    pub fn minors(&self) -> &[Poly] {
        &self.m
    }

    /// The same chart with `p` added to the `i`-th bordered minor.  Only
    /// useful to check that the identity tests notice a broken input.
    pub fn with_perturbed_minor(&self, i: usize, p: &Poly) -> Result<Self> {
        if i >= self.m.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.m.len(),
            });
        }
        let mut c = self.clone();
        c.m[i] = &c.m[i] + p;
        Ok(c)
    }

    fn nvars(&self) -> usize {
        self.problem.n()
    }

    /// `[m_i / Delta]` over the free variables.
    pub fn restriction_coefficients(&self) -> Result<Vec<RatFunc>> {
        self.m
            .iter()
            .map(|mi| RatFunc::new(mi.clone(), self.delta.clone()))
            .collect()
    }

    /// Derivative of an eliminated variable along the fiber with respect to
    /// the free variable `j`, by Cramer's rule.
    fn implicit_derivative(&self, pos: usize, j: usize) -> Result<RatFunc> {
        let jac = self.problem.jacobian();
        let rows: Vec<usize> = (0..self.problem.k()).collect();
        let mut cols = self.eliminated.clone();
        cols[pos] = j;
        let num = jac.select(&rows, &cols).determinant()?;
        RatFunc::new(-num, self.delta.clone())
    }

    /// Determinant of the matrix of total derivatives `d/dx_j (m_i / Delta)`
    /// along the fiber.
    pub fn hessian_direct(&self) -> Result<RatFunc> {
        let coeffs = self.restriction_coefficients()?;
        let implicit: Vec<Vec<RatFunc>> = (0..self.eliminated.len())
            .map(|pos| {
                self.free
                    .iter()
                    .map(|&j| self.implicit_derivative(pos, j))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let mut rows = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            let partial: Vec<RatFunc> = (0..self.nvars())
                .map(|v| c.derivative(v))
                .collect::<Result<_>>()?;
            let row = self
                .free
                .iter()
                .enumerate()
                .map(|(jj, &j)| {
                    let mut d = partial[j].clone();
                    for (pos, &l) in self.eliminated.iter().enumerate() {
                        if !partial[l].is_zero() {
                            d = d.add(&partial[l].mul(&implicit[pos][jj]));
                        }
                    }
                    d
                })
                .collect();
            rows.push(row);
        }
        ratfunc_determinant(self.nvars(), &rows)
    }

    /// The bordered `(n+1) x (n+1)` matrix whose determinant, divided by a
    /// power of `Delta`, gives the Hessian.  Derivative columns are ordered
    /// eliminated variables first, then free ones.
    pub fn bordered_matrix(&self) -> Result<PolyMat> {
        let n = self.nvars();
        let order: Vec<usize> = self.eliminated.iter().chain(&self.free).copied().collect();
        let row = |lead: Poly, p: &Poly| -> Result<Vec<Poly>> {
            let mut r = vec![lead];
            for &v in &order {
                r.push(p.derivative(v)?);
            }
            Ok(r)
        };
        let mut rows = vec![row(self.delta.clone(), &self.delta)?];
        for fi in self.problem.f() {
            rows.push(row(Poly::zero(n), fi)?);
        }
        for mi in &self.m {
            rows.push(row(mi.clone(), mi)?);
        }
        PolyMat::from_rows(n, rows)
    }

    /// `det(bordered) / Delta^(2 + n - k)`.
    pub fn hessian_formula(&self) -> Result<RatFunc> {
        let det = self.bordered_matrix()?.determinant()?;
        let e = 2 + self.free.len() as u32;
        RatFunc::new(det, self.delta.pow(e))
    }

    /// `h * Delta^2` as a function, i.e. `det(bordered) / Delta^(n - k)`.
    pub fn scaled_hessian(&self) -> Result<RatFunc> {
        let det = self.bordered_matrix()?.determinant()?;
        RatFunc::new(det, self.delta.pow(self.free.len() as u32))
    }

    /// `h(P) * Delta(P)^2` with `Delta` frozen at `P`.
    pub fn point_scaled_hessian(&self, point: &[Rat]) -> Result<Rat> {
        let d = self.delta.evaluate(point)?;
        let h = self.hessian_formula()?.evaluate(point)?;
        Ok(h * &d * &d)
    }
}

/// Determinant of a square matrix of rational functions.
pub fn ratfunc_determinant(nvars: usize, rows: &[Vec<RatFunc>]) -> Result<RatFunc> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::NonSquare {
            rows: n,
            cols: rows.first().map_or(0, Vec::len),
        });
    }
    let mut den = Poly::one(nvars);
    let mut nums = Vec::with_capacity(n);
    for r in rows {
        let (row_nums, row_den) = common_denominator(r);
        den = &den * &row_den;
        nums.push(row_nums);
    }
    let det = PolyMat::from_rows(nvars, nums)?.determinant()?;
    RatFunc::new(det, den)
}

/// Outcome of one random evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct TrialEvaluation {
    pub point: Vec<String>,
    pub fiber: Vec<String>,
    pub direct: String,
    pub formula: String,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HessianVerdict {
    /// The cross-multiplied difference of the two routes vanishes.
    pub symbolic: bool,
    pub trials: Vec<TrialEvaluation>,
    /// Trials requested but abandoned because no admissible point was found.
    pub skipped: usize,
    pub passed: bool,
}

/// Compares the direct and formula Hessians of the default chart.
///
/// The symbolic check is that the cross-multiplied difference is the zero
/// polynomial, which implies equality on every fiber.  The random trials
/// evaluate both sides exactly at rational points off `Delta = 0`; each
/// such point lies on the rational fiber `f = f(P)`.
pub fn verify_hessian_identity(g: &GermProblem, trials: usize, seed: u64) -> Result<HessianVerdict> {
    let chart = FiberChart::new(g)?;
    compare_routes(&chart, &chart, trials, seed)
}

/// As [`verify_hessian_identity`], but with `1 + x_j` (`x_j` the first free
/// variable) added to the bordered minor `which` on the formula side only.
/// A sound checker reports failure.
pub fn verify_hessian_identity_mutated(
    g: &GermProblem,
    trials: usize,
    seed: u64,
    which: usize,
) -> Result<HessianVerdict> {
    let chart = FiberChart::new(g)?;
    // a constant alone can be invisible when Delta is constant
    let bump = &Poly::one(g.n()) + &Poly::var(g.n(), chart.free()[0]);
    let mutated = chart.with_perturbed_minor(which, &bump)?;
    compare_routes(&chart, &mutated, trials, seed)
}

fn compare_routes(
    direct_chart: &FiberChart,
    formula_chart: &FiberChart,
    trials: usize,
    seed: u64,
) -> Result<HessianVerdict> {
    let g = direct_chart.problem();
    if g.k() == 0 {
        return Err(Error::Precondition("the identity needs at least one equation".into()));
    }
    let direct = direct_chart.hessian_direct()?;
    let formula = formula_chart.hessian_formula()?;
    let symbolic = direct.cross_difference(&formula).is_zero();

    let names = g.vars();
    let fmt = |r: &Rat| r.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    let mut skipped = 0;
    for _ in 0..trials {
        let mut found = None;
        for _ in 0..64 {
            let point: Vec<Rat> = (0..names.len()).map(|_| random_rat(&mut rng)).collect();
            let d1 = direct_chart.delta().evaluate(&point)?;
            let d2 = formula_chart.delta().evaluate(&point)?;
            if !d1.is_zero() && !d2.is_zero() {
                found = Some(point);
                break;
            }
        }
        let Some(point) = found else {
            skipped += 1;
            continue;
        };
        let a = direct.evaluate(&point)?;
        let b = formula.evaluate(&point)?;
        let fiber = g
            .f()
            .iter()
            .map(|fi| fi.evaluate(&point).map(|v| fmt(&v)))
            .collect::<Result<_>>()?;
        out.push(TrialEvaluation {
            point: point.iter().map(fmt).collect(),
            fiber,
            agree: a == b,
            direct: fmt(&a),
            formula: fmt(&b),
        });
    }
    let passed = symbolic && out.iter().all(|t| t.agree);
    Ok(HessianVerdict {
        symbolic,
        trials: out,
        skipped,
        passed,
    })
}

/// Small random rational `p/q` with `|p| <= 12`, `1 <= q <= 7`.
fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    crate::poly::rat(rng.gen_range(-12..=12), rng.gen_range(1..=7))
}
