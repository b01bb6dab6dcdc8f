//! Sparse multivariate polynomials and unreduced rational functions over ℚ.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rational, Scalar};
use crate::error::{Error, Result};

/// Indeterminate. Indices are 1-based as in the printed names `r_k_l`,
/// `x_k`, `y_l`.
///
/// The derived order coincides with lexicographic order on printed names for
/// single-digit indices. It only fixes a canonical storage order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    R(u8, u8),
    X(u8),
    Y(u8),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::R(k, l) => write!(f, "r_{k}_{l}"),
            Var::X(k) => write!(f, "x_{k}"),
            Var::Y(l) => write!(f, "y_{l}"),
        }
    }
}

/// Power product with variables sorted and no zero exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let f = other.exponent(v);
                    (f > 0).then(|| (v, e.min(f)))
                })
                .collect(),
        )
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for &(v, e) in &self.0 {
            let f = other.exponent(v);
            match e.cmp(&f) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => out.push((v, e - f)),
            }
        }
        if other.0.iter().any(|&(v, _)| self.exponent(v) == 0) {
            return None;
        }
        Some(Monomial(out))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over ℚ. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn var(v: Var) -> Self {
        Poly::term(Rational::one(), Monomial::var(v))
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn term(coeff: Rational, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Poly { terms }
    }

    fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&monomial) {
            Some(c) => {
                *c = &*c + &coeff;
                if c.is_zero() {
                    self.terms.remove(&monomial);
                }
            }
            None => {
                self.terms.insert(monomial, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest term under the storage order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Gcd of all monomials in the support.
    pub fn monomial_content(&self) -> Monomial {
        let mut keys = self.terms.keys();
        let Some(first) = keys.next() else {
            return Monomial::one();
        };
        keys.fold(first.clone(), |acc, m| acc.gcd(m))
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (mono, c) in &self.terms {
            terms.insert(mono.div(m)?, c.clone());
        }
        Some(Poly { terms })
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Evaluates with the given assignment; `None` if some variable in the
    /// support is unassigned.
    pub fn evaluate(&self, point: &dyn Fn(Var) -> Option<Rational>) -> Option<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for &(v, e) in m.powers() {
                value = value * point(v)?.pow(e);
            }
            total = total + value;
        }
        Some(total)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl Scalar for Poly {
    fn try_inv(&self) -> Option<Self> {
        self.as_constant().and_then(|c| c.recip()).map(Poly::constant)
    }

    fn from_i64(value: i64) -> Self {
        Poly::constant(Rational::from_integer(value))
    }
}

/// Quotient of two polynomials, kept unreduced.
///
/// Normalization only cancels the common monomial content of numerator and
/// denominator and makes the leading coefficient of the denominator
/// positive. Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct MultiRational {
    numer: Poly,
    denom: Poly,
}

impl MultiRational {
    pub fn new(numer: Poly, denom: Poly) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(numer, denom))
    }

    fn normalized(numer: Poly, denom: Poly) -> Self {
        if numer.is_zero() {
            return MultiRational { numer, denom: Poly::one() };
        }
        let content = numer.monomial_content().gcd(&denom.monomial_content());
        let (mut numer, mut denom) = if content.is_one() {
            (numer, denom)
        } else {
            (
                numer.div_monomial(&content).expect("content divides numerator"),
                denom.div_monomial(&content).expect("content divides denominator"),
            )
        };
        if denom.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            numer = -numer;
            denom = -denom;
        }
        MultiRational { numer, denom }
    }

    pub fn from_poly(p: Poly) -> Self {
        MultiRational { numer: p, denom: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    /// Constant value if this function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        let n = self.numer.as_constant()?;
        let d = self.denom.as_constant()?;
        n.checked_div(&d)
    }

    /// Degree of homogeneity, `deg numer - deg denom`, when both parts are
    /// homogeneous. Zero is homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.numer.is_zero() {
            return Some(0);
        }
        let n = self.numer.homogeneous_degree()?;
        let d = self.denom.homogeneous_degree()?;
        Some(i64::from(n) - i64::from(d))
    }

    /// `None` if a variable is unassigned or the denominator vanishes.
    pub fn evaluate(&self, point: &dyn Fn(Var) -> Option<Rational>) -> Option<Rational> {
        let n = self.numer.evaluate(point)?;
        let d = self.denom.evaluate(point)?;
        n.checked_div(&d)
    }

    pub fn checked_div(&self, rhs: &MultiRational) -> Result<MultiRational> {
        MultiRational::new(&self.numer * &rhs.denom, &self.denom * &rhs.numer)
    }
}

impl PartialEq for MultiRational {
    fn eq(&self, other: &Self) -> bool {
        (&self.numer * &other.denom) == (&other.numer * &self.denom)
    }
}

impl Eq for MultiRational {}

impl fmt::Display for MultiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.denom.as_constant() {
            Some(d) if d.is_one() => write!(f, "{}", self.numer),
            _ => write!(f, "({})/({})", self.numer, self.denom),
        }
    }
}

impl fmt::Debug for MultiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for MultiRational {
    type Output = MultiRational;
    fn add(self, rhs: MultiRational) -> MultiRational {
        if self.denom == rhs.denom {
            return Self::normalized(self.numer + rhs.numer, self.denom);
        }
        let numer = &self.numer * &rhs.denom + &rhs.numer * &self.denom;
        Self::normalized(numer, &self.denom * &rhs.denom)
    }
}

impl Sub for MultiRational {
    type Output = MultiRational;
    fn sub(self, rhs: MultiRational) -> MultiRational {
        self + (-rhs)
    }
}

impl Mul for MultiRational {
    type Output = MultiRational;
    fn mul(self, rhs: MultiRational) -> MultiRational {
        Self::normalized(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
    }
}

impl Div for MultiRational {
    type Output = MultiRational;
    /// Panics on a zero divisor.
    fn div(self, rhs: MultiRational) -> MultiRational {
        self.checked_div(&rhs).expect("division by the zero rational function")
    }
}

impl Neg for MultiRational {
    type Output = MultiRational;
    fn neg(self) -> MultiRational {
        MultiRational { numer: -self.numer, denom: self.denom }
    }
}

impl Zero for MultiRational {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
}

impl One for MultiRational {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl Scalar for MultiRational {
    fn try_inv(&self) -> Option<Self> {
        if self.numer.is_zero() {
            None
        } else {
            Some(Self::normalized(self.denom.clone(), self.numer.clone()))
        }
    }

    fn from_i64(value: i64) -> Self {
        Self::constant(Rational::from_integer(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(k: u8, l: u8) -> Poly {
        Poly::var(Var::R(k, l))
    }

    #[test]
    fn variable_names() {
        assert_eq!(Var::R(1, 2).to_string(), "r_1_2");
        assert_eq!(Var::X(3).to_string(), "x_3");
        assert_eq!(Var::Y(1).to_string(), "y_1");
        assert!(Var::R(2, 3) < Var::X(1) && Var::X(4) < Var::Y(1));
    }

    #[test]
    fn monomial_division_and_gcd() {
        let a = Monomial::from_powers([(Var::X(1), 2), (Var::Y(1), 1)]);
        let b = Monomial::from_powers([(Var::X(1), 1), (Var::X(2), 1)]);
        assert_eq!(a.gcd(&b), Monomial::var(Var::X(1)));
        assert_eq!(a.div(&Monomial::var(Var::X(1))), Some(Monomial::from_powers([(Var::X(1), 1), (Var::Y(1), 1)])));
        assert_eq!(a.div(&b), None);
    }

    #[test]
    fn difference_of_squares() {
        let a = r(1, 1);
        let b = r(2, 2);
        let lhs = &(&a - &b) * &(&a + &b);
        let rhs = &(&a * &a) - &(&b * &b);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.homogeneous_degree(), Some(2));
    }

    #[test]
    fn rational_function_equality_by_cross_multiplication() {
        let a = r(1, 1);
        let b = r(2, 2);
        // (a^2 - b^2)/(a - b) == a + b although the quotient is stored unreduced
        let f = MultiRational::new(&(&a * &a) - &(&b * &b), &a - &b).unwrap();
        let g = MultiRational::from_poly(&a + &b);
        assert_eq!(f, g);
        assert_ne!(f, MultiRational::from_poly(&a - &b));
    }

    #[test]
    fn content_cancels_and_denominator_sign_is_normalized() {
        let a = r(1, 2);
        let b = r(1, 1);
        let f = MultiRational::new(&a * &b, -&(&b * &r(2, 2))).unwrap();
        assert_eq!(f.numer(), &-&a);
        assert_eq!(f.denom(), &r(2, 2));
        assert!(MultiRational::new(a, Poly::zero()).is_err());
    }

    #[test]
    fn evaluation() {
        let f = MultiRational::new(r(1, 2), &r(1, 1) - &r(2, 2)).unwrap();
        let point = |v: Var| match v {
            Var::R(1, 2) => Some(Rational::from_integer(1)),
            Var::R(1, 1) => Some(Rational::from_integer(1)),
            Var::R(2, 2) => Some(Rational::from_integer(2)),
            _ => None,
        };
        assert_eq!(f.evaluate(&point), Some(Rational::from_integer(-1)));
        let singular = |v: Var| match v {
            Var::R(..) => Some(Rational::from_integer(1)),
            _ => None,
        };
        assert_eq!(f.evaluate(&singular), None);
        assert_eq!(f.homogeneous_degree(), Some(0));
    }
}
