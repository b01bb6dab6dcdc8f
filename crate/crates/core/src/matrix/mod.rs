//! Dense square matrices over an exact scalar, with the triangular structure
//! used for the Borel subalgebra and its dual.

mod quadruple;
mod structured;

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use quadruple::{borel_act, Quadruple, QuadrupleJson};
pub use structured::{is_regular_semisimple, project_to_dual, BorelMatrix, DualBorelMatrix};

/// Largest dimension accepted unless a caller asks for more.
pub const DEFAULT_MAX_DIM: usize = 8;

pub fn check_dim(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        Err(Error::DimensionOutOfRange { n, max })
    } else {
        Ok(())
    }
}

/// Row-major `n x n` matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, entries: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |a, b| if a == b { T::one() } else { T::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                entries.push(f(a, b));
            }
        }
        Matrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    pub fn diagonal(values: &[T]) -> Self {
        Self::from_fn(values.len(), |a, b| if a == b { values[a].clone() } else { T::zero() })
    }

    /// Matrix unit `E_kk`.
    pub fn unit(n: usize, k: usize) -> Self {
        Self::from_fn(n, |a, b| if a == k && b == k { T::one() } else { T::zero() })
    }

    pub fn outer(column: &[T], row: &[T]) -> Self {
        assert_eq!(column.len(), row.len(), "outer product of mismatched vectors");
        Self::from_fn(column.len(), |a, b| column[a].clone() * row[b].clone())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.entries[row * self.n + col] = value;
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n.max(1)).map(<[T]>::to_vec).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.n).map(|k| self.get(k, k).clone()).collect()
    }

    /// The diagonal part, as a matrix.
    pub fn diagonal_part(&self) -> Self {
        Self::from_fn(self.n, |a, b| if a == b { self.get(a, a).clone() } else { T::zero() })
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, k| acc + self.get(k, k).clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &T) -> Self {
        let mut out = self.clone();
        for k in 0..self.n {
            let v = out.get(k, k).clone() - c.clone();
            out.set(k, k, v);
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.n, v.len(), "matrix-vector dimension mismatch");
        (0..self.n).map(|a| (0..self.n).fold(T::zero(), |acc, b| acc + self.get(a, b).clone() * v[b].clone())).collect()
    }

    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.n, v.len(), "vector-matrix dimension mismatch");
        (0..self.n).map(|b| (0..self.n).fold(T::zero(), |acc, a| acc + v[a].clone() * self.get(a, b).clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.get(a, b).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.get(a, b).is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_upper_triangular() && self.is_lower_triangular()
    }

    /// Inverse of an upper-triangular matrix by back-substitution.
    ///
    /// Fails with [`Error::NotInvertible`] when a diagonal entry is not a unit.
    pub fn upper_triangular_inverse(&self) -> Result<Self> {
        if !self.is_upper_triangular() {
            return Err(Error::Shape("upper triangular"));
        }
        let n = self.n;
        let inv_diag =
            (0..n).map(|k| self.get(k, k).try_inv().ok_or(Error::NotInvertible)).collect::<Result<Vec<_>>>()?;
        let mut inv = Self::zeros(n);
        // Column c of the inverse solves U x = e_c; x vanishes below row c.
        for c in 0..n {
            inv.set(c, c, inv_diag[c].clone());
            for a in (0..c).rev() {
                let mut acc = T::zero();
                for k in a + 1..=c {
                    acc = acc + self.get(a, k).clone() * inv.get(k, c).clone();
                }
                inv.set(a, c, -(acc * inv_diag[a].clone()));
            }
        }
        Ok(inv)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (row, col): (usize, usize)) -> &T {
        &self.entries[row * self.n + col]
    }
}

impl<T: Scalar> Mul<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n, "matrix product dimension mismatch");
        let n = self.n;
        Matrix::from_fn(n, |a, b| {
            (0..n).fold(T::zero(), |acc, k| {
                let x = self.get(a, k);
                let y = rhs.get(k, b);
                if x.is_zero() || y.is_zero() {
                    acc
                } else {
                    acc + x.clone() * y.clone()
                }
            })
        })
    }
}

impl<T: Scalar> Add<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n, "matrix sum dimension mismatch");
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n, "matrix difference dimension mismatch");
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.entries.chunks(self.n.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<T: Scalar + Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn product_and_trace() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.trace(), Rational::from(5));
        assert_eq!(a.commutator(&a), Matrix::zeros(2));
    }

    #[test]
    fn back_substitution_inverse() {
        let b = m(&[&[2, -1, 3], &[0, 1, 4], &[0, 0, -5]]);
        let inv = b.upper_triangular_inverse().unwrap();
        assert_eq!(&b * &inv, Matrix::identity(3));
        assert_eq!(&inv * &b, Matrix::identity(3));
        assert!(inv.is_upper_triangular());
    }

    #[test]
    fn singular_triangular_matrix_is_rejected() {
        let b = m(&[&[1, 1], &[0, 0]]);
        assert_eq!(b.upper_triangular_inverse(), Err(Error::NotInvertible));
        let lower = m(&[&[1, 0], &[1, 1]]);
        assert_eq!(lower.upper_triangular_inverse(), Err(Error::Shape("upper triangular")));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let rows = vec![vec![Rational::from(1)], vec![Rational::from(1), Rational::from(2)]];
        assert!(Matrix::from_rows(rows).is_err());
    }

    #[test]
    fn json_rows() {
        let a = m(&[&[1, 0], &[-1, 2]]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"[["1","0"],["-1","2"]]"#);
        let back: Matrix<Rational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}
