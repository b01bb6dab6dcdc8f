//! The orthogonal idempotents `L^ι` of a regular semisimple upper-triangular
//! matrix `r`.
//!
//! `L^ι` is the product of the shifted matrices `l_k(r) = r - r_kk I` over
//! `k != ι`, divided by its trace. The trace equals
//! `∏_{k != ι} (r_ιι - r_kk)`, which is nonzero exactly when the diagonal of
//! `r` has no repeated entry. The family is a complete set of orthogonal
//! idempotents commuting with `r`: the spectral projectors of `r`.
//!
//! Indices are 0-based throughout the API.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{BorelMatrix, DualBorelMatrix, Matrix};
use crate::report::Laws;
use crate::scalar::{Rational, Scalar};

/// `l_k(r) = r - r_kk I`.
pub fn shifted<T: Scalar>(r: &Matrix<T>, k: usize) -> Matrix<T> {
    r.shift(r.get(k, k))
}

/// Unnormalized product `∏_{k != ι} l_k(r)`, taken in ascending `k`.
///
/// The empty product (n = 1) is the identity.
pub fn shifted_product<T: Scalar>(r: &Matrix<T>, iota: usize) -> Matrix<T> {
    let n = r.dim();
    (0..n).filter(|&k| k != iota).fold(Matrix::identity(n), |acc, k| &acc * &shifted(r, k))
}

/// `∏_{k != ι} (r_ιι - r_kk)`, the trace of [`shifted_product`].
pub fn eigenvalue_gap_product<T: Scalar>(r: &Matrix<T>, iota: usize) -> T {
    let pivot = r.get(iota, iota);
    (0..r.dim()).filter(|&k| k != iota).fold(T::one(), |acc, k| acc * (pivot.clone() - r.get(k, k).clone()))
}

fn check_index(iota: usize, n: usize) -> Result<()> {
    if iota < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: iota, n })
    }
}

/// The idempotent `L^ι` together with the matrix it was built from.
#[derive(Clone, PartialEq, Debug)]
pub struct Idempotent<T = Rational> {
    iota: usize,
    matrix: Matrix<T>,
    source_r: BorelMatrix<T>,
}

impl<T: Scalar> Idempotent<T> {
    pub fn iota(&self) -> usize {
        self.iota
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn source_r(&self) -> &BorelMatrix<T> {
        &self.source_r
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }
}

/// Builds `L^ι` for a regular semisimple `r`.
pub fn idempotent<T: Scalar>(r: &BorelMatrix<T>, iota: usize) -> Result<Idempotent<T>> {
    check_index(iota, r.dim())?;
    r.require_regular_semisimple()?;
    let product = shifted_product(r.matrix(), iota);
    let normalizer = product.trace().try_inv().ok_or_else(|| {
        // only reachable for scalars whose units are not all nonzero elements
        let other = usize::from(iota == 0);
        Error::NotRegularSemisimple { first: iota.min(other), second: iota.max(other) }
    })?;
    Ok(Idempotent { iota, matrix: product.scale(&normalizer), source_r: r.clone() })
}

/// All of `L^1, ..., L^n`; they sum to the identity.
pub fn idempotent_family<T: Scalar>(r: &BorelMatrix<T>) -> Result<Vec<Idempotent<T>>> {
    r.require_regular_semisimple()?;
    (0..r.dim()).map(|iota| idempotent(r, iota)).collect()
}

/// Sum over increasing chains `from = c_0 < c_1 < ... < c_m = to` of
/// `∏ r_{c_u c_{u+1}} / ∏ (r_pp - r_cc)`, the denominator running over the
/// chain nodes selected by `weighted`.
fn chain_sum<T: Scalar>(
    r: &Matrix<T>,
    from: usize,
    to: usize,
    pivot: usize,
    weighted: impl Fn(usize) -> bool,
) -> Option<T> {
    let interior: Vec<usize> = (from + 1..to).collect();
    let mut total = T::zero();
    for mask in 0u64..(1u64 << interior.len()) {
        let mut chain = vec![from];
        chain.extend(interior.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &k)| k));
        chain.push(to);
        let mut term = T::one();
        for w in chain.windows(2) {
            term = term * r.get(w[0], w[1]).clone();
        }
        for &c in chain.iter().filter(|&&c| weighted(c)) {
            let gap = r.get(pivot, pivot).clone() - r.get(c, c).clone();
            term = term * gap.try_inv()?;
        }
        total = total + term;
    }
    Some(total)
}

/// Entry `L^ι_{ιγ}` (γ > ι) from the nested-sum coordinate formula for the
/// rows of the diagonalizing Borel element, without any matrix products.
pub fn closed_form_row_entry<T: Scalar>(r: &BorelMatrix<T>, iota: usize, gamma: usize) -> Result<T> {
    check_index(gamma, r.dim())?;
    r.require_regular_semisimple()?;
    match gamma.cmp(&iota) {
        std::cmp::Ordering::Less => Ok(T::zero()),
        std::cmp::Ordering::Equal => Ok(T::one()),
        std::cmp::Ordering::Greater => chain_sum(r.matrix(), iota, gamma, iota, |c| c != iota)
            .ok_or(Error::Internal("vanishing eigenvalue gap".into())),
    }
}

/// Entry `L^γ_{ιγ}` (ι < γ) from the nested-sum coordinate formula for the
/// columns of the inverse diagonalizer.
pub fn closed_form_column_entry<T: Scalar>(r: &BorelMatrix<T>, iota: usize, gamma: usize) -> Result<T> {
    check_index(iota.max(gamma), r.dim())?;
    r.require_regular_semisimple()?;
    match iota.cmp(&gamma) {
        std::cmp::Ordering::Greater => Ok(T::zero()),
        std::cmp::Ordering::Equal => Ok(T::one()),
        std::cmp::Ordering::Less => chain_sum(r.matrix(), iota, gamma, gamma, |c| c != gamma)
            .ok_or(Error::Internal("vanishing eigenvalue gap".into())),
    }
}

/// Checks every algebraic law of the idempotent family of `r`.
///
/// `conj` is a random invertible Borel element for the equivariance law,
/// `scale` a nonzero scalar for the homogeneity law and `s` a random element
/// of the dual Borel.
pub fn check_laws(
    r: &BorelMatrix<Rational>,
    conj: &BorelMatrix<Rational>,
    scale: &Rational,
    s: &DualBorelMatrix<Rational>,
) -> Result<Laws> {
    let n = r.dim();
    let family = idempotent_family(r)?;
    let mats: Vec<&Matrix<Rational>> = family.iter().map(Idempotent::matrix).collect();
    let identity = Matrix::identity(n);
    let zero = Matrix::zeros(n);
    let mut laws = Laws::new();

    laws.record("trace_one", mats.iter().all(|l| l.trace() == Rational::from(1)));
    laws.record("idempotent", mats.iter().all(|l| &(*l * *l) == *l));
    laws.record("orthogonality", (0..n).all(|a| (0..n).filter(|&b| b != a).all(|b| mats[a] * mats[b] == zero)));
    let sum = mats.iter().fold(Matrix::zeros(n), |acc, l| &acc + *l);
    laws.record("sum_identity", sum == identity);
    laws.record("commutes_with_r", mats.iter().all(|l| *l * r.matrix() == r.matrix() * *l));

    let vanishing = |m: &Matrix<Rational>, iota: usize| {
        (0..n).all(|a| (0..n).all(|b| (a <= iota && b >= iota) || m.get(a, b).is_zero()))
    };
    laws.record(
        "vanishing_pattern",
        family.iter().all(|l| {
            let lr = l.matrix() * r.matrix();
            vanishing(l.matrix(), l.iota()) && vanishing(&lr, l.iota())
        }),
    );
    laws.record(
        "diagonal_action",
        family.iter().all(|l| {
            let lr = l.matrix() * r.matrix();
            let rl = r.matrix() * l.matrix();
            let pivot = r.get(l.iota(), l.iota());
            (0..n).all(|g| {
                let expected = pivot * l.matrix().get(g, g);
                lr.get(g, g) == &expected && rl.get(g, g) == &expected
            })
        }),
    );
    laws.record(
        "dual_vanishing",
        family.iter().all(|l| {
            let ls = l.matrix() * s.matrix();
            (l.iota() + 1..n).all(|g| (0..n).all(|m| ls.get(g, m).is_zero()))
        }),
    );

    let conj_inv = conj.inverse()?;
    let conjugated = BorelMatrix::new(&(conj.matrix() * r.matrix()) * conj_inv.matrix())?;
    let conj_family = idempotent_family(&conjugated)?;
    laws.record(
        "equivariance",
        family
            .iter()
            .zip(&conj_family)
            .all(|(l, lc)| lc.matrix() == &(&(conj.matrix() * l.matrix()) * conj_inv.matrix())),
    );

    let scaled = BorelMatrix::new(r.scale(scale))?;
    let scaled_family = idempotent_family(&scaled)?;
    laws.record("scale_invariance", family.iter().zip(&scaled_family).all(|(a, b)| a.matrix() == b.matrix()));

    let mut closed_form = true;
    for a in 0..n {
        for g in a..n {
            closed_form &= &closed_form_row_entry(r, a, g)? == mats[a].get(a, g);
            closed_form &= &closed_form_column_entry(r, a, g)? == mats[g].get(a, g);
        }
    }
    laws.record("closed_form_entries", closed_form);
    Ok(laws)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    fn running_r() -> BorelMatrix<Rational> {
        BorelMatrix::new(m(&[&[1, 1], &[0, 2]])).unwrap()
    }

    #[test]
    fn running_example_idempotents() {
        // (r - 2I)/tr(r - 2I) and (r - I)/tr(r - I)
        let r = running_r();
        assert_eq!(idempotent(&r, 0).unwrap().matrix(), &m(&[&[1, -1], &[0, 0]]));
        assert_eq!(idempotent(&r, 1).unwrap().matrix(), &m(&[&[0, 1], &[0, 1]]));
        let family = idempotent_family(&r).unwrap();
        let sum = family.iter().fold(Matrix::zeros(2), |acc, l| &acc + l.matrix());
        assert_eq!(sum, Matrix::identity(2));
    }

    #[test]
    fn diagonal_r_gives_matrix_units() {
        let r = BorelMatrix::diagonal(&[q(3), q(-1), q(7)]);
        for (iota, l) in idempotent_family(&r).unwrap().iter().enumerate() {
            assert_eq!(l.matrix(), &Matrix::unit(3, iota));
        }
    }

    #[test]
    fn one_by_one_uses_empty_product() {
        let r = BorelMatrix::diagonal(&[q(5)]);
        let family = idempotent_family(&r).unwrap();
        assert_eq!(family.len(), 1);
        assert_eq!(family[0].matrix(), &Matrix::identity(1));
    }

    #[test]
    fn repeated_diagonal_is_rejected() {
        let r = BorelMatrix::new(m(&[&[1, 5], &[0, 1]])).unwrap();
        assert_eq!(idempotent(&r, 0), Err(Error::NotRegularSemisimple { first: 0, second: 1 }));
        assert!(idempotent_family(&r).is_err());
        assert_eq!(idempotent(&running_r(), 2), Err(Error::IndexOutOfRange { index: 2, n: 2 }));
    }

    #[test]
    fn trace_of_product_is_gap_product() {
        let r = BorelMatrix::new(m(&[&[2, 1, -3], &[0, -1, 4], &[0, 0, 5]])).unwrap();
        for iota in 0..3 {
            assert_eq!(shifted_product(&r, iota).trace(), eigenvalue_gap_product(&r, iota));
        }
    }

    #[test]
    fn product_order_is_irrelevant() {
        let r = BorelMatrix::new(m(&[&[2, 1, -3, 1], &[0, -1, 4, 2], &[0, 0, 5, -2], &[0, 0, 0, 3]])).unwrap();
        for iota in 0..4 {
            let descending =
                (0..4).rev().filter(|&k| k != iota).fold(Matrix::identity(4), |acc, k| &acc * &shifted(&r, k));
            assert_eq!(descending, shifted_product(&r, iota));
        }
    }

    #[test]
    fn closed_form_matches_products_in_dimension_four() {
        let r = BorelMatrix::new(m(&[&[2, 1, -3, 1], &[0, -1, 4, 2], &[0, 0, 5, -2], &[0, 0, 0, 3]])).unwrap();
        let family = idempotent_family(&r).unwrap();
        for a in 0..4 {
            for g in 0..4 {
                if g >= a {
                    assert_eq!(&closed_form_row_entry(&r, a, g).unwrap(), family[a].matrix().get(a, g));
                }
                if a <= g {
                    assert_eq!(&closed_form_column_entry(&r, a, g).unwrap(), family[g].matrix().get(a, g));
                }
            }
        }
    }

    #[test]
    fn laws_hold_on_a_fixed_instance() {
        let r = BorelMatrix::new(m(&[&[2, 1, -3], &[0, -1, 4], &[0, 0, 5]])).unwrap();
        let conj = BorelMatrix::new(m(&[&[1, 2, 0], &[0, -3, 1], &[0, 0, 2]])).unwrap();
        let s = DualBorelMatrix::new(m(&[&[1, 0, 0], &[2, -1, 0], &[3, 4, 5]])).unwrap();
        let laws = check_laws(&r, &conj, &Rational::new(-2, 3), &s).unwrap();
        assert!(laws.all_pass(), "{laws:?}");
    }
}
