use std::fmt;

use crate::rational::Rational;
use crate::{Error, Result};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RationalMatrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// Exact inverse. Lower-triangular input is solved by forward
    /// substitution, anything else by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        if self.is_lower_triangular() {
            self.lower_inverse()
        } else {
            self.gauss_jordan_inverse()
        }
    }

    fn lower_inverse(&self) -> Result<RationalMatrix> {
        let n = self.rows;
        let mut inv = Self::zeros(n, n);
        for j in 0..n {
            for i in j..n {
                let diag = self.get(i, i);
                if diag.is_zero() {
                    return Err(Error::Singular);
                }
                let mut acc = if i == j { Rational::one() } else { Rational::zero() };
                for l in j..i {
                    let a = self.get(i, l);
                    if !a.is_zero() {
                        acc -= &(a * inv.get(l, j));
                    }
                }
                inv.set(i, j, acc / diag);
            }
        }
        Ok(inv)
    }

    pub fn gauss_jordan_inverse(&self) -> Result<RationalMatrix> {
        let n = self.rows;
        let mut left = self.clone();
        let mut right = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !left.get(r, col).is_zero()).ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    left.data.swap(pivot * n + j, col * n + j);
                    right.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = left.get(col, col).recip()?;
            for j in 0..n {
                let l = left.get(col, j) * &p;
                left.set(col, j, l);
                let r = right.get(col, j) * &p;
                right.set(col, j, r);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = left.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let l = left.get(r, j) - &(&f * left.get(col, j));
                    left.set(r, j, l);
                    let v = right.get(r, j) - &(&f * right.get(col, j));
                    right.set(r, j, v);
                }
            }
        }
        Ok(right)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i).to_vec())).finish()
    }
}
