use std::fmt;

use crate::error::{Error, Result};

use super::ring::Ring;

/// Dense square matrix over an exact ring, stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![R::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn diagonal(values: &[R]) -> Self {
        Matrix::from_fn(values.len(), |i, j| if i == j { values[i].clone() } else { R::zero() })
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch(n, row.len()));
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| R::from_i64(v)).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Option<S>) -> Option<Matrix<S>> {
        let data = self.data.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(Matrix { n: self.n, data })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mat_mul(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch(self.n, rhs.n));
        }
        let n = self.n;
        let mut out = Matrix::<R>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch(self.n, rhs.n));
        }
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn sub(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch(self.n, rhs.n));
        }
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        })
    }

    pub fn scale(&self, c: &R) -> Matrix<R> {
        self.map(|a| a.clone() * c.clone())
    }

    /// Kronecker product: entry `(i*m + k, j*m + l)` is `A[i][j] * B[k][l]`.
    pub fn tensor(&self, rhs: &Matrix<R>) -> Matrix<R> {
        let m = rhs.n;
        Matrix::from_fn(self.n * m, |r, c| {
            self.get(r / m, c / m).clone() * rhs.get(r % m, c % m).clone()
        })
    }

    pub fn trace(&self) -> R {
        (0..self.n).fold(R::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn sum_entries(&self) -> R {
        self.data.iter().fold(R::zero(), |acc, v| acc + v.clone())
    }

    pub fn row_sum(&self, i: usize) -> R {
        self.row(i).iter().fold(R::zero(), |acc, v| acc + v.clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    /// `P A P^T` for the permutation sending new index `k` to old index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Matrix<R> {
        Matrix::from_fn(self.n, |i, j| self.get(perm[i], perm[j]).clone())
    }

    /// Leading principal or arbitrary principal submatrix on `idx`.
    pub fn principal(&self, idx: &[usize]) -> Matrix<R> {
        Matrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    pub fn pow(&self, k: u32) -> Matrix<R> {
        let mut acc = Matrix::identity(self.n);
        for _ in 0..k {
            acc = acc.mat_mul(self).expect("same order");
        }
        acc
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
