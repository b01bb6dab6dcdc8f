use serde::{Deserialize, Serialize};

use super::{BorelMatrix, DualBorelMatrix, Matrix};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// A point `(r, s, i, j)` of `T*(b x C^n)`: `r` upper triangular, `s` in the
/// lower-triangular model of the dual Borel, `i` a column vector and `j` a
/// row covector, all of the same dimension.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quadruple<T> {
    r: BorelMatrix<T>,
    s: DualBorelMatrix<T>,
    i: Vec<T>,
    j: Vec<T>,
}

impl<T: Scalar> Quadruple<T> {
    pub fn new(r: BorelMatrix<T>, s: DualBorelMatrix<T>, i: Vec<T>, j: Vec<T>) -> Result<Self> {
        let n = r.dim();
        for found in [s.dim(), i.len(), j.len()] {
            if found != n {
                return Err(Error::DimensionMismatch { expected: n, found });
            }
        }
        Ok(Quadruple { r, s, i, j })
    }

    /// `(diag(r), diag(s), 0, 0)`.
    pub fn closed_orbit_point(r_diag: &[T], s_diag: &[T]) -> Result<Self> {
        let n = r_diag.len();
        Self::new(
            BorelMatrix::diagonal(r_diag),
            DualBorelMatrix::diagonal(s_diag),
            vec![T::zero(); n],
            vec![T::zero(); n],
        )
    }

    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    pub fn r(&self) -> &BorelMatrix<T> {
        &self.r
    }

    pub fn s(&self) -> &DualBorelMatrix<T> {
        &self.s
    }

    pub fn i(&self) -> &[T] {
        &self.i
    }

    pub fn j(&self) -> &[T] {
        &self.j
    }

    pub fn into_parts(self) -> (BorelMatrix<T>, DualBorelMatrix<T>, Vec<T>, Vec<T>) {
        (self.r, self.s, self.i, self.j)
    }

    pub fn with_s(&self, s: DualBorelMatrix<T>) -> Result<Self> {
        Self::new(self.r.clone(), s, self.i.clone(), self.j.clone())
    }

    pub fn with_ij(&self, i: Vec<T>, j: Vec<T>) -> Result<Self> {
        Self::new(self.r.clone(), self.s.clone(), i, j)
    }

    /// Applies `(Ad_b(r), Ad*_b(s), b i, j b^-1)` given both `b` and its
    /// inverse.
    pub(crate) fn act_with_inverse(&self, b: &Matrix<T>, b_inv: &Matrix<T>) -> Result<Self> {
        let n = self.dim();
        if b.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
        }
        let r = BorelMatrix::new(&(b * self.r.matrix()) * b_inv)?;
        let s = DualBorelMatrix::project(&(&(b * self.s.matrix()) * b_inv));
        Ok(Quadruple { r, s, i: b.mul_vec(&self.i), j: b_inv.vec_mul(&self.j) })
    }
}

/// The Borel action `b.(r, s, i, j) = (b r b^-1, proj(b s b^-1), b i, j b^-1)`.
///
/// The inverse of `b` comes from back-substitution.
pub fn borel_act<T: Scalar>(b: &BorelMatrix<T>, q: &Quadruple<T>) -> Result<Quadruple<T>> {
    let b_inv = b.inverse()?;
    q.act_with_inverse(b.matrix(), b_inv.matrix())
}

/// Wire format of a rational quadruple.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadrupleJson {
    pub n: usize,
    pub r: Vec<Vec<Rational>>,
    pub s: Vec<Vec<Rational>>,
    pub i: Vec<Rational>,
    pub j: Vec<Rational>,
}

impl TryFrom<QuadrupleJson> for Quadruple<Rational> {
    type Error = Error;

    fn try_from(raw: QuadrupleJson) -> Result<Self> {
        let n = raw.n;
        for found in [raw.r.len(), raw.s.len()] {
            if found != n {
                return Err(Error::DimensionMismatch { expected: n, found });
            }
        }
        let r = BorelMatrix::new(Matrix::from_rows(raw.r)?)?;
        let s = DualBorelMatrix::new(Matrix::from_rows(raw.s)?)?;
        Quadruple::new(r, s, raw.i, raw.j)
    }
}

impl From<Quadruple<Rational>> for QuadrupleJson {
    fn from(q: Quadruple<Rational>) -> Self {
        QuadrupleJson { n: q.dim(), r: q.r.to_rows(), s: q.s.to_rows(), i: q.i, j: q.j }
    }
}

impl Serialize for Quadruple<Rational> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QuadrupleJson::from(self.clone()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Quadruple<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = QuadrupleJson::deserialize(deserializer)?;
        Quadruple::try_from(raw).map_err(serde::de::Error::custom)
    }
}
