//! Small dense row-major matrices. Operator families in this crate are a
//! handful of tiny matrices, so nothing here is blocked or vectorized.

use std::ops::{Add, Mul, Sub};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ensure, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![T::one(); n])
    }

    pub fn diag(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        ensure!(
            data.len() == rows * cols,
            Dimension,
            "{} entries for a {}x{} matrix",
            data.len(),
            rows,
            cols
        );
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        ensure!(!rows.is_empty(), Dimension, "matrix with no rows");
        let cols = rows[0].len();
        ensure!(cols > 0, Dimension, "matrix with no columns");
        ensure!(rows.iter().all(|r| r.len() == cols), Dimension, "ragged matrix rows");
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    /// `u vᵀ`.
    pub fn outer(u: &[T], v: &[T]) -> Self {
        let mut data = Vec::with_capacity(u.len() * v.len());
        for &a in u {
            data.extend(v.iter().map(|&b| a * b));
        }
        Matrix { rows: u.len(), cols: v.len(), data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, c: T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| v * c).collect() }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: T, other: &Self) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    /// Largest singular value, from the Jacobi eigen-decomposition of the
    /// smaller Gram matrix.
    pub fn spectral_norm(&self) -> T {
        let gram = if self.rows <= self.cols {
            self.matmul(&self.transpose())
        } else {
            self.transpose().matmul(self)
        };
        symmetric_eigenvalues(&gram)
            .into_iter()
            .fold(T::zero(), |m, v| m.max(v))
            .max(T::zero())
            .sqrt()
    }

    /// Haar-distributed orthogonal matrix (Gram-Schmidt on a Gaussian matrix).
    pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let mut cols: Vec<Vec<T>> = Vec::with_capacity(n);
            let mut ok = true;
            for _ in 0..n {
                let mut v: Vec<T> =
                    (0..n).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect();
                for u in &cols {
                    let d: T = u.iter().zip(&v).map(|(&a, &b)| a * b).sum();
                    for (vi, &ui) in v.iter_mut().zip(u) {
                        *vi -= d * ui;
                    }
                }
                let norm = v.iter().map(|&a| a * a).sum::<T>().sqrt();
                if norm < T::lit(1e-6) {
                    ok = false;
                    break;
                }
                v.iter_mut().for_each(|a| *a /= norm);
                cols.push(v);
            }
            if ok {
                return Matrix::from_rows(&cols).expect("square").transpose();
            }
        }
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    let n = m.rows();
    let mut a = m.clone();
    let eps = T::epsilon();
    for _sweep in 0..100 {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        let diag: T = (0..n).map(|i| a[(i, i)] * a[(i, i)]).sum();
        if off <= eps * eps * diag || off.is_zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.is_zero() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[(i, i)]).collect()
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        let mut out = self.clone();
        out.axpy(T::one(), rhs);
        out
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        let mut out = self.clone();
        out.axpy(-T::one(), rhs);
        out
    }
}

impl<T: Scalar> Mul<T> for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, c: T) -> Matrix<T> {
        self.scale(c)
    }
}

impl<T: Scalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(d)?;
        Matrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}
