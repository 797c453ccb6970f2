use super::RationalPolynomial;
use crate::error::{Error, Result};

/// Dense matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalPolynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RationalPolynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<RationalPolynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalPolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// The matrix with row `i` and column `j` deleted.
    pub fn minor(&self, i: usize, j: usize) -> PolyMatrix {
        let entries = (0..self.rows)
            .filter(|&r| r != i)
            .flat_map(|r| {
                (0..self.cols)
                    .filter(move |&c| c != j)
                    .map(move |c| self.get(r, c).clone())
            })
            .collect();
        PolyMatrix {
            rows: self.rows.saturating_sub(1),
            cols: self.cols.saturating_sub(1),
            entries,
        }
    }

    fn check_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination over `Q[x]`.
///
/// Each step pivots on the lowest-degree nonzero entry of the column. A
/// column with no nonzero candidate means the determinant is zero, which is
/// also what cofactor expansion would return for it.
pub fn determinant(m: &PolyMatrix) -> Result<RationalPolynomial> {
    m.check_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(RationalPolynomial::one());
    }
    let mut a: Vec<Vec<RationalPolynomial>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut negate = false;
    let mut prev = RationalPolynomial::one();
    for k in 0..n - 1 {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].degree());
        let Some(p) = pivot else {
            return Ok(RationalPolynomial::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if prev.is_constant() {
                    v.scale(&prev.coeff(0).recip())
                } else {
                    v.exact_div(&prev)
                };
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Laplace expansion along the first row; exponential cost, kept as an
/// independent reference for small matrices.
pub fn determinant_cofactor(m: &PolyMatrix) -> Result<RationalPolynomial> {
    m.check_square()?;
    Ok(cofactor(m))
}

fn cofactor(m: &PolyMatrix) -> RationalPolynomial {
    match m.rows {
        0 => RationalPolynomial::one(),
        1 => m.get(0, 0).clone(),
        n => {
            let mut acc = RationalPolynomial::zero();
            for j in 0..n {
                let e = m.get(0, j);
                if e.is_zero() {
                    continue;
                }
                let term = e * &cofactor(&m.minor(0, j));
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}
