use std::collections::HashMap;

use num_traits::Zero;

use super::{Colength, StdBasis};
use crate::error::{Error, Result};
use crate::poly::{Mono, Poly, Rat};

/// Finite dimensional quotient `O / I` of the local ring, with the
/// staircase complement as basis.
#[derive(Clone, Debug)]
pub struct QuotAlg {
    sb: StdBasis,
    basis: Vec<Mono>,
    position: HashMap<Mono, usize>,
    /// `table[a][b]` holds the coordinates of `basis[a] * basis[b]`.
    table: Vec<Vec<Vec<Rat>>>,
}

/// Builds the quotient algebra; basis sorted by total degree, then
/// descending in the local order.
pub fn quotient_algebra(sb: &StdBasis) -> Result<QuotAlg> {
    let Some(mut basis) = sb.standard_monomials() else {
        return Err(Error::InfiniteColength);
    };
    sb.order().sort_descending(&mut basis);
    let position: HashMap<Mono, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let mut q = QuotAlg {
        sb: sb.clone(),
        basis,
        position,
        table: Vec::new(),
    };
    let n = q.basis.len();
    let mut table = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in a..n {
            let prod = Poly::monomial(q.basis[a].mul(&q.basis[b]), Rat::from_integer(1.into()));
            let c = q.coords(&prod)?;
            table[b][a] = c.clone();
            table[a][b] = c;
        }
    }
    q.table = table;
    Ok(q)
}

impl QuotAlg {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn colength(&self) -> Colength {
        Colength::Finite(self.basis.len())
    }

    pub fn basis(&self) -> &[Mono] {
        &self.basis
    }

    pub fn std_basis(&self) -> &StdBasis {
        &self.sb
    }

    pub fn nvars(&self) -> usize {
        self.sb.nvars()
    }

    /// Coordinates of `basis[a] * basis[b]`.
    pub fn product(&self, a: usize, b: usize) -> &[Rat] {
        &self.table[a][b]
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.sb.normal_form(p)
    }

    /// Coordinates of the class of `p`.
    pub fn coords(&self, p: &Poly) -> Result<Vec<Rat>> {
        let nf = self.sb.normal_form(p)?;
        let mut out = vec![Rat::zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            let i = self.position.get(m).ok_or_else(|| {
                Error::Inconsistent("normal form has a term outside the quotient basis".into())
            })?;
            out[*i] = c.clone();
        }
        Ok(out)
    }

    /// The representative `sum coords[i] * basis[i]`.
    pub fn to_poly(&self, coords: &[Rat]) -> Poly {
        Poly::from_terms(
            self.nvars(),
            self.basis
                .iter()
                .zip(coords)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Product of two classes given in coordinates.
    pub fn mul_coords(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.basis.len();
        let mut out = vec![Rat::zero(); n];
        for a in 0..n {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if v[b].is_zero() {
                    continue;
                }
                let w = &u[a] * &v[b];
                for (e, c) in self.table[a][b].iter().enumerate() {
                    if !c.is_zero() {
                        out[e] += &w * c;
                    }
                }
            }
        }
        out
    }
}
