//! Exact arithmetic for the Borel moment map on `T*(b x C^n)`.
//!
//! A point of `T*(b x C^n)` is a quadruple `(r, s, i, j)` with `r` upper
//! triangular, `s` in the dual Borel (modeled as lower-triangular matrices),
//! `i` a vector and `j` a covector. The Borel group `B` of invertible upper
//! triangular matrices acts by `(Ad_b r, Ad*_b s, b i, j b^-1)` with moment
//! map `(r, s, i, j) -> proj([r, s] + i j)`.
//!
//! On the regular semisimple locus (distinct diagonal entries of `r`) this
//! crate builds the spectral idempotents of `r`, the closed-form Borel
//! diagonalizer, the `B`-invariant functions `F`, `G`, `H`, `K`, the quotient
//! map onto pairs `(x, y)` with pairwise distinct `x`, orbit-closure limits
//! along one-parameter subgroups, and the initial-term certificate that the
//! diagonal moment equations form a regular sequence.
//!
//! All arithmetic is exact over ℚ.

pub mod borel;
pub mod error;
pub mod idempotents;
pub mod instance;
pub mod invariants;
pub mod matrix;
pub mod moment;
pub mod report;
pub mod scalar;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{borel_act, project_to_dual, BorelMatrix, DualBorelMatrix, Matrix, Quadruple};
pub use scalar::{parse_rational, LaurentPoly, MultiRational, Rational, Scalar};
