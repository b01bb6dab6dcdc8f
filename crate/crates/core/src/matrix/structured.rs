use std::ops::Deref;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Upper-triangular matrix: an element of the Borel subalgebra, or of the
/// Borel subgroup when invertible.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BorelMatrix<T>(Matrix<T>);

impl<T: Scalar> BorelMatrix<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if m.is_upper_triangular() {
            Ok(BorelMatrix(m))
        } else {
            Err(Error::Shape("upper triangular"))
        }
    }

    pub fn identity(n: usize) -> Self {
        BorelMatrix(Matrix::identity(n))
    }

    pub fn diagonal(values: &[T]) -> Self {
        BorelMatrix(Matrix::diagonal(values))
    }

    /// First pair of coinciding diagonal entries, if any.
    pub fn repeated_eigenvalue(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| self.get(a, a) == self.get(b, b))
    }

    /// Diagonal entries (the eigenvalues) are pairwise distinct.
    pub fn is_regular_semisimple(&self) -> bool {
        self.repeated_eigenvalue().is_none()
    }

    pub fn require_regular_semisimple(&self) -> Result<()> {
        match self.repeated_eigenvalue() {
            Some((first, second)) => Err(Error::NotRegularSemisimple { first, second }),
            None => Ok(()),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        self.0.upper_triangular_inverse().map(BorelMatrix)
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }
}

impl<T> Deref for BorelMatrix<T> {
    type Target = Matrix<T>;
    fn deref(&self) -> &Matrix<T> {
        &self.0
    }
}

pub fn is_regular_semisimple<T: Scalar>(r: &BorelMatrix<T>) -> bool {
    r.is_regular_semisimple()
}

/// Lower-triangular matrix (diagonal included), the chosen section of
/// `g / u` standing for the dual of the Borel subalgebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DualBorelMatrix<T>(Matrix<T>);

impl<T: Scalar> DualBorelMatrix<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if m.is_lower_triangular() {
            Ok(DualBorelMatrix(m))
        } else {
            Err(Error::Shape("lower triangular"))
        }
    }

    pub fn zeros(n: usize) -> Self {
        DualBorelMatrix(Matrix::zeros(n))
    }

    pub fn diagonal(values: &[T]) -> Self {
        DualBorelMatrix(Matrix::diagonal(values))
    }

    /// Kills the strictly upper part of `m`.
    pub fn project(m: &Matrix<T>) -> Self {
        DualBorelMatrix(Matrix::from_fn(m.dim(), |a, b| if a < b { T::zero() } else { m.get(a, b).clone() }))
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }
}

impl<T> Deref for DualBorelMatrix<T> {
    type Target = Matrix<T>;
    fn deref(&self) -> &Matrix<T> {
        &self.0
    }
}

/// Canonical projection from `gl_n` onto the lower-triangular model of the
/// dual Borel.
pub fn project_to_dual<T: Scalar>(m: &Matrix<T>) -> DualBorelMatrix<T> {
    DualBorelMatrix::project(m)
}

macro_rules! serde_via_matrix {
    ($ty:ident) => {
        impl<T: Scalar + Serialize> Serialize for $ty<T> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                self.0.serialize(serializer)
            }
        }

        impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for $ty<T> {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
                let m = Matrix::<T>::deserialize(deserializer)?;
                $ty::new(m).map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_via_matrix!(BorelMatrix);
serde_via_matrix!(DualBorelMatrix);
