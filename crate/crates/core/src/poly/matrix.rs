use super::{Poly, Rat};
use crate::error::{Error, Result};

/// Dense matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    pub fn new(rows: usize, cols: usize, nvars: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::ContextMismatch {
                left: nvars,
                right: bad.nvars(),
            });
        }
        Ok(PolyMat {
            rows,
            cols,
            nvars,
            entries,
        })
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::BlockShape("ragged rows".into()));
        }
        PolyMat::new(r, c, nvars, rows.into_iter().flatten().collect())
    }

    pub fn from_rat_rows(nvars: usize, rows: Vec<Vec<Rat>>) -> Result<Self> {
        PolyMat::from_rows(
            nvars,
            rows.into_iter()
                .map(|row| row.into_iter().map(|c| Poly::constant(nvars, c)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMat {
            rows,
            cols,
            nvars,
            entries: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = PolyMat::zeros(n, n, nvars);
        for i in 0..n {
            m.set(i, i, Poly::one(nvars));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert_eq!(p.nvars(), self.nvars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    /// Submatrix on the given row and column indices, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMat {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        PolyMat {
            rows: rows.len(),
            cols: cols.len(),
            nvars: self.nvars,
            entries,
        }
    }

    pub fn transpose(&self) -> PolyMat {
        let mut t = PolyMat::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.cols != other.rows {
            return Err(Error::BlockShape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMat::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(self.nvars);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, p: &Poly) -> PolyMat {
        PolyMat {
            entries: self.entries.iter().map(|e| e * p).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::BlockShape("subtraction of different shapes".into()));
        }
        Ok(PolyMat {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        })
    }

    /// Assembles `[[A, B], [C, D]]`.
    pub fn from_blocks(a: &PolyMat, b: &PolyMat, c: &PolyMat, d: &PolyMat) -> Result<PolyMat> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::BlockShape(format!(
                "A {}x{}, B {}x{}, C {}x{}, D {}x{}",
                a.rows, a.cols, b.rows, b.cols, c.rows, c.cols, d.rows, d.cols
            )));
        }
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut m = PolyMat::zeros(rows, cols, a.nvars);
        for i in 0..rows {
            for j in 0..cols {
                let e = match (i < a.rows, j < a.cols) {
                    (true, true) => a.get(i, j),
                    (true, false) => b.get(i, j - a.cols),
                    (false, true) => c.get(i - a.rows, j),
                    (false, false) => d.get(i - a.rows, j - a.cols),
                };
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(self.nvars));
        }
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Poly::one(self.nvars);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                // Prefer the sparsest available pivot.
                let Some(p) = (k + 1..n)
                    .filter(|&i| !m[i][k].is_zero())
                    .min_by_key(|&i| m[i][k].len())
                else {
                    return Ok(Poly::zero(self.nvars));
                };
                m.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = if prev.is_constant() {
                        num.scale(&prev.constant_term().recip())
                    } else {
                        num.div_exact(&prev)
                            .expect("Bareiss step must divide exactly")
                    };
                }
                m[i][k] = Poly::zero(self.nvars);
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// All `size x size` minors, rows subsets outermost, both in
    /// lexicographic order of index subsets.
    pub fn minors(&self, size: usize) -> Result<Vec<Poly>> {
        if size > self.rows.min(self.cols) {
            return Err(Error::MinorTooLarge {
                size,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let row_sets = combinations(self.rows, size);
        let col_sets = combinations(self.cols, size);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.select(rs, cs).determinant()?);
            }
        }
        Ok(out)
    }

    /// Classical adjugate, `adj(A) * A = det(A) * I`.
    pub fn adjugate(&self) -> Result<PolyMat> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut adj = PolyMat::zeros(n, n, self.nvars);
        if n == 1 {
            adj.set(0, 0, Poly::one(self.nvars));
            return Ok(adj);
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.select(&rows, &cols).determinant()?;
                adj.set(i, j, if (i + j) % 2 == 0 { minor } else { -minor });
            }
        }
        Ok(adj)
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn check_blocks(a: &PolyMat, b: &PolyMat, c: &PolyMat, d: &PolyMat) -> Result<(usize, usize)> {
    let l = a.rows;
    let m = d.rows;
    let ok = a.cols == l
        && d.cols == m
        && b.rows == l
        && b.cols == m
        && c.rows == m
        && c.cols == l
        && l > 0
        && m > 0;
    if !ok {
        return Err(Error::BlockShape(format!(
            "expected A lxl, B lxm, C mxl, D mxm; got A {}x{}, B {}x{}, C {}x{}, D {}x{}",
            a.rows, a.cols, b.rows, b.cols, c.rows, c.cols, d.rows, d.cols
        )));
    }
    Ok((l, m))
}

/// Both sides of the Schur-complement identity
/// `det [[A, B], [C, D]] = det A * det(D - C A^{-1} B)`.
///
/// The right side is evaluated as `det(det(A) D - C adj(A) B) / det(A)^(m-1)`,
/// i.e. over the fraction field with the denominators cleared.
pub fn block_det_product(
    a: &PolyMat,
    b: &PolyMat,
    c: &PolyMat,
    d: &PolyMat,
) -> Result<(Poly, Poly)> {
    let (_, m) = check_blocks(a, b, c, d)?;
    let det_a = a.determinant()?;
    if det_a.is_zero() {
        return Err(Error::SingularBlock);
    }
    let full = PolyMat::from_blocks(a, b, c, d)?.determinant()?;
    let schur = d.scale(&det_a).sub(&c.mul(&a.adjugate()?)?.mul(b)?)?;
    let scaled = schur.determinant()?;
    let denom = det_a.pow(m as u32 - 1);
    let rhs = scaled.div_exact(&denom).ok_or_else(|| {
        Error::Inconsistent("Schur complement determinant not divisible by det(A)^(m-1)".into())
    })?;
    Ok((full, rhs))
}

/// The `m x m` matrix `H` with `H[i][j] = det [[A, b_j], [c^i, d_ij]]`,
/// where `b_j` is the j-th column of `B` and `c^i` the i-th row of `C`.
pub fn bordered_minor_matrix(a: &PolyMat, b: &PolyMat, c: &PolyMat, d: &PolyMat) -> Result<PolyMat> {
    let (l, m) = check_blocks(a, b, c, d)?;
    if a.determinant()?.is_zero() {
        return Err(Error::SingularBlock);
    }
    let full = PolyMat::from_blocks(a, b, c, d)?;
    let mut h = PolyMat::zeros(m, m, a.nvars);
    let head: Vec<usize> = (0..l).collect();
    for i in 0..m {
        for j in 0..m {
            let mut rows = head.clone();
            rows.push(l + i);
            let mut cols = head.clone();
            cols.push(l + j);
            h.set(i, j, full.select(&rows, &cols).determinant()?);
        }
    }
    Ok(h)
}

/// Both sides of `det H = det(A)^(m-1) * det [[A, B], [C, D]]`.
pub fn bordered_minor_identity(
    a: &PolyMat,
    b: &PolyMat,
    c: &PolyMat,
    d: &PolyMat,
) -> Result<(Poly, Poly)> {
    let h = bordered_minor_matrix(a, b, c, d)?;
    let m = d.rows;
    let lhs = h.determinant()?;
    let full = PolyMat::from_blocks(a, b, c, d)?.determinant()?;
    let rhs = &a.determinant()?.pow(m as u32 - 1) * &full;
    Ok((lhs, rhs))
}
