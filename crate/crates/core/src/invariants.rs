//! The `B`-invariant functions on the regular semisimple locus and the
//! quotient map built from them.
//!
//! | family | formula             | meaning                               |
//! |--------|---------------------|---------------------------------------|
//! | `F_ι`  | `tr(j L^ι i)`       | diagonal of the moment after elimination |
//! | `G_ι`  | `tr(L^ι s)`         | `s'_ιι` once `r` is diagonalized      |
//! | `H_ι`  | `tr(L^ι r)`         | `r_ιι`                                |
//! | `K_γν` | `tr((L^ν - L^γ) r)^-1` | `(r_νν - r_γγ)^-1`, for `γ < ν`    |
//!
//! Indices are 0-based.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::idempotents::{eigenvalue_gap_product, idempotent, idempotent_family, shifted_product};
use crate::matrix::{Matrix, Quadruple};
use crate::moment::{in_zero_fiber_rss, TargetPoint};
use crate::scalar::{Rational, Scalar};

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `F_ι = tr(j L^ι i)`.
pub fn invariant_f<T: Scalar>(q: &Quadruple<T>, iota: usize) -> Result<T> {
    let l = idempotent(q.r(), iota)?;
    Ok(dot(q.j(), &l.matrix().mul_vec(q.i())))
}

/// `G_ι = tr(L^ι s)`.
pub fn invariant_g<T: Scalar>(q: &Quadruple<T>, iota: usize) -> Result<T> {
    let l = idempotent(q.r(), iota)?;
    Ok((l.matrix() * q.s().matrix()).trace())
}

/// `H_ι = tr(L^ι r)`, which equals `r_ιι`.
pub fn invariant_h<T: Scalar>(q: &Quadruple<T>, iota: usize) -> Result<T> {
    let l = idempotent(q.r(), iota)?;
    Ok((l.matrix() * q.r().matrix()).trace())
}

/// `K_γν = tr((L^ν - L^γ) r)^-1`, defined for `γ < ν`.
pub fn invariant_k<T: Scalar>(q: &Quadruple<T>, gamma: usize, nu: usize) -> Result<T> {
    if gamma >= nu {
        return Err(Error::IndexOutOfRange { index: gamma, n: nu });
    }
    let l_nu = idempotent(q.r(), nu)?;
    let l_gamma = idempotent(q.r(), gamma)?;
    let diff = l_nu.matrix() - l_gamma.matrix();
    (&diff * q.r().matrix()).trace().try_inv().ok_or(Error::NotRegularSemisimple { first: gamma, second: nu })
}

/// `F_ι` through the unnormalized product,
/// `[∏_{k != ι}(r_ιι - r_kk)]^-1 tr(j ∏ l_k(r) i)`.
pub fn invariant_f_trace_form<T: Scalar>(q: &Quadruple<T>, iota: usize) -> Result<T> {
    q.r().require_regular_semisimple()?;
    let product = shifted_product(q.r().matrix(), iota);
    let norm = eigenvalue_gap_product(q.r().matrix(), iota).try_inv().ok_or(Error::NotInvertible)?;
    Ok(norm * dot(q.j(), &product.mul_vec(q.i())))
}

/// `G_ι` through the unnormalized product.
pub fn invariant_g_trace_form<T: Scalar>(q: &Quadruple<T>, iota: usize) -> Result<T> {
    q.r().require_regular_semisimple()?;
    let product = shifted_product(q.r().matrix(), iota);
    let norm = eigenvalue_gap_product(q.r().matrix(), iota).try_inv().ok_or(Error::NotInvertible)?;
    Ok(norm * (&product * q.s().matrix()).trace())
}

/// `H_ι` as `e_ι* r e_ι`.
pub fn invariant_h_unit_form<T: Scalar>(q: &Quadruple<T>, iota: usize) -> T {
    let n = q.dim();
    let e: Vec<T> = (0..n).map(|k| if k == iota { T::one() } else { T::zero() }).collect();
    dot(&e, &q.r().mul_vec(&e))
}

/// `K_γν` for one pair `γ < ν`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PairValue {
    pub gamma: usize,
    pub nu: usize,
    pub value: Rational,
}

/// All four invariant families at one point.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InvariantVector {
    #[serde(rename = "F")]
    pub f: Vec<Rational>,
    #[serde(rename = "G")]
    pub g: Vec<Rational>,
    #[serde(rename = "H")]
    pub h: Vec<Rational>,
    /// `K_γν` for `γ < ν`, lexicographic in `(γ, ν)`.
    #[serde(rename = "K")]
    pub k: Vec<PairValue>,
}

impl InvariantVector {
    /// Evaluates every family, sharing one idempotent family.
    pub fn of(q: &Quadruple<Rational>) -> Result<Self> {
        let n = q.dim();
        let family = idempotent_family(q.r())?;
        let mut f = Vec::with_capacity(n);
        let mut g = Vec::with_capacity(n);
        let mut h = Vec::with_capacity(n);
        for l in &family {
            f.push(dot(q.j(), &l.matrix().mul_vec(q.i())));
            g.push((l.matrix() * q.s().matrix()).trace());
            h.push((l.matrix() * q.r().matrix()).trace());
        }
        let mut k = Vec::new();
        for gamma in 0..n {
            for nu in gamma + 1..n {
                let diff: Matrix<Rational> = family[nu].matrix() - family[gamma].matrix();
                let value = (&diff * q.r().matrix())
                    .trace()
                    .recip()
                    .ok_or(Error::NotRegularSemisimple { first: gamma, second: nu })?;
                k.push(PairValue { gamma, nu, value });
            }
        }
        Ok(InvariantVector { f, g, h, k })
    }

    pub fn k(&self, gamma: usize, nu: usize) -> Option<&Rational> {
        self.k.iter().find(|p| p.gamma == gamma && p.nu == nu).map(|p| &p.value)
    }

    /// `K_νγ = -K_γν`.
    pub fn k_antisymmetric(&self, a: usize, b: usize) -> Option<Rational> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.k(a, b).cloned(),
            std::cmp::Ordering::Greater => self.k(b, a).map(|v| -v),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// `K_γν (H_ν - H_γ) = 1` for every stored pair.
    pub fn is_consistent(&self) -> bool {
        self.k.iter().all(|p| (&p.value * &(&self.h[p.nu] - &self.h[p.gamma])).is_one())
    }
}

/// `P(r, s, i, j) = ((H_1, ..., H_n), (G_1, ..., G_n))` on the regular
/// semisimple zero fiber.
pub fn quotient_map(q: &Quadruple<Rational>) -> Result<TargetPoint> {
    if !in_zero_fiber_rss(q) {
        return Err(Error::NotInFiber);
    }
    let inv = InvariantVector::of(q)?;
    TargetPoint::new(inv.h, inv.g)
}
