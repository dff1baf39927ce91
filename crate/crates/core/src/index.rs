//! The complex index of a holomorphic 1-form on an ICIS as the colength of
//! the ideal generated by the equations and the maximal minors of the
//! Jacobian matrix bordered by the coefficients of the form.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::local::{quotient_algebra, standard_basis, Colength, LocalOrder, QuotAlg, StdBasis};
use crate::poly::{mono_to_string, parse_poly, Mono, Poly, PolyDisplay, PolyMat};

/// Germ `V = f^{-1}(0)` at the origin together with `omega = sum A_i dx_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermProblem {
    vars: Vec<String>,
    f: Vec<Poly>,
    a: Vec<Poly>,
}

impl GermProblem {
    pub fn new(vars: Vec<String>, f: Vec<Poly>, a: Vec<Poly>) -> Result<Self> {
        let n = vars.len();
        if n == 0 {
            return Err(Error::Precondition("no variables".into()));
        }
        if a.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: a.len(),
            });
        }
        if f.len() >= n {
            return Err(Error::Precondition(format!(
                "need fewer equations than variables, got {} for {n}",
                f.len()
            )));
        }
        for p in f.iter().chain(&a) {
            if p.nvars() != n {
                return Err(Error::ContextMismatch {
                    left: n,
                    right: p.nvars(),
                });
            }
        }
        if let Some(i) = f.iter().position(|p| !p.constant_term().is_zero()) {
            return Err(Error::Precondition(format!(
                "equation {} does not vanish at the origin",
                i + 1
            )));
        }
        Ok(GermProblem { vars, f, a })
    }

    /// Parses equations and form coefficients in the text grammar.
    pub fn parse<S: AsRef<str>>(vars: &[S], f: &[S], omega: &[S]) -> Result<Self> {
        let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let parse_all = |items: &[S]| -> Result<Vec<Poly>> {
            items.iter().map(|s| parse_poly(s.as_ref(), &names)).collect()
        };
        let f = parse_all(f)?;
        let a = parse_all(omega)?;
        GermProblem::new(names, f, a)
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn k(&self) -> usize {
        self.f.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn f(&self) -> &[Poly] {
        &self.f
    }

    pub fn a(&self) -> &[Poly] {
        &self.a
    }

    /// Same germ, different form.
    pub fn with_form(&self, a: Vec<Poly>) -> Result<Self> {
        GermProblem::new(self.vars.clone(), self.f.clone(), a)
    }

    /// The `k x n` Jacobian matrix of `f`.
    pub fn jacobian(&self) -> PolyMat {
        let n = self.n();
        let rows = self
            .f
            .iter()
            .map(|p| (0..n).map(|j| p.derivative(j).expect("in range")).collect())
            .collect();
        PolyMat::from_rows(n, rows).unwrap_or_else(|_| PolyMat::zeros(0, n, n))
    }

    /// The Jacobian with the row `A_1 ... A_n` appended.
    pub fn index_matrix(&self) -> PolyMat {
        let n = self.n();
        let jac = self.jacobian();
        let mut rows: Vec<Vec<Poly>> = (0..jac.rows())
            .map(|i| (0..n).map(|j| jac.get(i, j).clone()).collect())
            .collect();
        rows.push(self.a.clone());
        PolyMat::from_rows(n, rows).expect("rectangular")
    }
}

/// `f_1, ..., f_k` followed by all `(k+1)`-minors of the index matrix in
/// lexicographic order of column subsets.  For `k = 0` these are the `A_i`.
pub fn build_index_ideal(g: &GermProblem) -> Vec<Poly> {
    let m = g.index_matrix();
    let mut gens = g.f.clone();
    gens.extend(m.minors(g.k() + 1).expect("k < n"));
    gens
}

#[derive(Clone, Debug)]
pub struct IndexReport {
    pub index: Colength,
    pub ideal_generators: Vec<Poly>,
    pub std_basis: StdBasis,
    pub quotient: Option<QuotAlg>,
}

impl IndexReport {
    pub fn leading_monomials(&self) -> &[Mono] {
        self.std_basis.leading_monomials()
    }

    pub fn quotient_basis(&self) -> &[Mono] {
        self.quotient.as_ref().map_or(&[], |q| q.basis())
    }
}

/// `dim O / I`; [`Colength::Infinite`] signals a zero that is not
/// algebraically isolated.
pub fn complex_index(g: &GermProblem) -> Result<IndexReport> {
    let gens = build_index_ideal(g);
    let sb = standard_basis(&gens, LocalOrder::default())?;
    let index = sb.colength();
    let quotient = match index {
        Colength::Finite(_) => Some(quotient_algebra(&sb)?),
        Colength::Infinite => None,
    };
    Ok(IndexReport {
        index,
        ideal_generators: gens,
        std_basis: sb,
        quotient,
    })
}

/// Sufficient check that `f^{-1}(0)` has an isolated singular point: the
/// equations together with the maximal minors of the Jacobian have finite
/// colength.
pub fn check_icis(g: &GermProblem) -> Result<bool> {
    if g.k() == 0 {
        return Ok(true);
    }
    let mut gens = g.f.clone();
    gens.extend(g.jacobian().minors(g.k())?);
    let sb = standard_basis(&gens, LocalOrder::default())?;
    Ok(matches!(sb.colength(), Colength::Finite(_)))
}

/// Summary used by reports.
#[derive(Clone, Debug, Serialize)]
pub struct IndexSummary {
    pub index: Option<usize>,
    pub generators: Vec<String>,
    pub leading_monomials: Vec<String>,
    pub quotient_basis: Vec<String>,
}

impl IndexReport {
    pub fn summary(&self, vars: &[String]) -> IndexSummary {
        let mono = |m: &Mono| mono_to_string(m, vars);
        IndexSummary {
            index: self.index.finite(),
            generators: self
                .ideal_generators
                .iter()
                .map(|p| PolyDisplay::new(p, vars).to_string())
                .collect(),
            leading_monomials: self.leading_monomials().iter().map(mono).collect(),
            quotient_basis: self.quotient_basis().iter().map(mono).collect(),
        }
    }
}
