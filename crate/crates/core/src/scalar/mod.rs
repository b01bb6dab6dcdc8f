//! Exact scalars.
//!
//! Everything is done over the rationals. Each identity checked by this crate
//! is an algebraic identity whose coefficients are rational functions of the
//! inputs, so it holds over the complex numbers exactly when it holds on a
//! Zariski-dense set of rational points.

mod dual;
mod laurent;
mod poly;
mod rational;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use dual::Dual;
pub use laurent::{laurent_limit_at_zero, LaurentPoly};
pub use poly::{Monomial, MultiRational, Poly, Var};
pub use rational::{parse_rational, Rational};

/// A commutative ring element usable as a matrix entry.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse, `None` when the element is not a unit.
    fn try_inv(&self) -> Option<Self>;

    fn from_i64(value: i64) -> Self;
}
