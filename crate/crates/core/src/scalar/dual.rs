use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rational, Scalar};

/// Forward-mode dual number `value + slope * eps` with `eps^2 = 0`.
///
/// Running a rational computation over `Dual` yields its exact directional
/// derivative in the `slope` part.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Dual {
    pub value: Rational,
    pub slope: Rational,
}

impl Dual {
    pub fn new(value: Rational, slope: Rational) -> Self {
        Dual { value, slope }
    }

    pub fn constant(value: Rational) -> Self {
        Dual { value, slope: Rational::zero() }
    }

    pub fn variable(value: Rational) -> Self {
        Dual { value, slope: Rational::one() }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual { value: self.value + rhs.value, slope: self.slope + rhs.slope }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual { value: self.value - rhs.value, slope: self.slope - rhs.slope }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        let slope = &self.value * &rhs.slope + &self.slope * &rhs.value;
        Dual { value: self.value * rhs.value, slope }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { value: -self.value, slope: -self.slope }
    }
}

impl Zero for Dual {
    fn zero() -> Self {
        Dual::constant(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.slope.is_zero()
    }
}

impl One for Dual {
    fn one() -> Self {
        Dual::constant(Rational::one())
    }
}

impl Scalar for Dual {
    fn try_inv(&self) -> Option<Self> {
        let inv = self.value.recip()?;
        let slope = -(&self.slope * &inv * &inv);
        Some(Dual { value: inv, slope })
    }

    fn from_i64(value: i64) -> Self {
        Dual::constant(Rational::from_integer(value))
    }
}
