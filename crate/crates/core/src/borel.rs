//! The closed-form Borel diagonalizer, one-parameter subgroups and
//! orbit-closure limits on the regular semisimple zero fiber.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::idempotents::idempotent_family;
use crate::invariants::invariant_g;
use crate::matrix::{BorelMatrix, DualBorelMatrix, Matrix, Quadruple};
use crate::moment::in_zero_fiber_rss;
use crate::scalar::{LaurentPoly, Rational, Scalar};

/// A Borel element `b` with `b r b^-1 = diag(r)`, together with `b^-1`.
#[derive(Clone, PartialEq, Debug)]
pub struct Diagonalizer<T> {
    pub b: BorelMatrix<T>,
    pub b_inv: BorelMatrix<T>,
}

/// `b = Σ E_ιι D L^ι` and `b^-1 = Σ L^ι D^-1 E_ιι`, where `D = diag(d)`
/// fixes the diagonal of `b` (identity when `d` is `None`).
///
/// Both `b b^-1 = I` and `b r b^-1 = diag(r)` are verified exactly before
/// returning.
pub fn diagonalizing_borel<T: Scalar>(r: &BorelMatrix<T>, d: Option<&[T]>) -> Result<Diagonalizer<T>> {
    let n = r.dim();
    let family = idempotent_family(r)?;
    let d: Vec<T> = match d {
        Some(d) if d.len() != n => return Err(Error::DimensionMismatch { expected: n, found: d.len() }),
        Some(d) => d.to_vec(),
        None => vec![T::one(); n],
    };
    let d_inv = d.iter().map(|x| x.try_inv().ok_or(Error::NotInvertible)).collect::<Result<Vec<_>>>()?;
    let diag_d = Matrix::diagonal(&d);
    let diag_d_inv = Matrix::diagonal(&d_inv);

    let mut b = Matrix::zeros(n);
    let mut b_inv = Matrix::zeros(n);
    for l in &family {
        let unit = Matrix::unit(n, l.iota());
        b = &b + &(&(&unit * &diag_d) * l.matrix());
        b_inv = &b_inv + &(&(l.matrix() * &diag_d_inv) * &unit);
    }
    if &b * &b_inv != Matrix::identity(n) {
        return Err(Error::Internal("diagonalizer times its inverse is not the identity".into()));
    }
    if &(&b * r.matrix()) * &b_inv != r.diagonal_part() {
        return Err(Error::Internal("diagonalizer does not conjugate r to its diagonal".into()));
    }
    Ok(Diagonalizer { b: BorelMatrix::new(b)?, b_inv: BorelMatrix::new(b_inv)? })
}

/// `λ(t) = diag(t^a_1, ..., t^a_n)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OneParamSubgroup {
    pub exponents: Vec<i64>,
}

impl OneParamSubgroup {
    pub fn new(exponents: Vec<i64>) -> Self {
        OneParamSubgroup { exponents }
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn matrix(&self) -> Matrix<LaurentPoly> {
        let diag: Vec<_> = self.exponents.iter().map(|&a| LaurentPoly::monomial(Rational::one(), a)).collect();
        Matrix::diagonal(&diag)
    }

    pub fn inverse_matrix(&self) -> Matrix<LaurentPoly> {
        let diag: Vec<_> = self.exponents.iter().map(|&a| LaurentPoly::monomial(Rational::one(), -a)).collect();
        Matrix::diagonal(&diag)
    }

    /// `λ(t).q` as a quadruple over Laurent polynomials in `t`.
    pub fn act(&self, q: &Quadruple<Rational>) -> Result<Quadruple<LaurentPoly>> {
        if self.dim() != q.dim() {
            return Err(Error::DimensionMismatch { expected: q.dim(), found: self.dim() });
        }
        lift(q)?.act_with_inverse(&self.matrix(), &self.inverse_matrix())
    }
}

fn lift(q: &Quadruple<Rational>) -> Result<Quadruple<LaurentPoly>> {
    let c = |x: &Rational| LaurentPoly::constant(x.clone());
    Quadruple::new(
        BorelMatrix::new(q.r().map(c))?,
        DualBorelMatrix::new(q.s().map(c))?,
        q.i().iter().map(c).collect(),
        q.j().iter().map(c).collect(),
    )
}

fn laurent_scalars(q: &Quadruple<LaurentPoly>) -> impl Iterator<Item = &LaurentPoly> {
    q.r().entries().iter().chain(q.s().entries()).chain(q.i()).chain(q.j())
}

/// Smallest `t`-exponent over all scalars of `q`, `None` if `q` is zero.
pub fn min_exponent(q: &Quadruple<LaurentPoly>) -> Option<i64> {
    laurent_scalars(q).filter_map(LaurentPoly::min_exponent).min()
}

/// Entrywise limit `t -> 0`.
pub fn limit_at_zero(q: &Quadruple<LaurentPoly>) -> Result<Quadruple<Rational>> {
    let lim = |m: &Matrix<LaurentPoly>| -> Result<Matrix<Rational>> {
        Matrix::from_rows(
            m.to_rows()
                .iter()
                .map(|row| row.iter().map(LaurentPoly::limit_at_zero).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    };
    Quadruple::new(
        BorelMatrix::new(lim(q.r())?)?,
        DualBorelMatrix::new(lim(q.s())?)?,
        q.i().iter().map(LaurentPoly::limit_at_zero).collect::<Result<_>>()?,
        q.j().iter().map(LaurentPoly::limit_at_zero).collect::<Result<_>>()?,
    )
}

/// Exponents pushing `(diag r, s', i', j')` to its closed-orbit point:
/// `a_ι = 1` where `i'_ι != 0`, `-1` where `j'_ι != 0`, else `0`.
pub fn limit_exponents<T: Scalar>(i_prime: &[T], j_prime: &[T]) -> Result<OneParamSubgroup> {
    if i_prime.len() != j_prime.len() {
        return Err(Error::DimensionMismatch { expected: i_prime.len(), found: j_prime.len() });
    }
    i_prime
        .iter()
        .zip(j_prime)
        .enumerate()
        .map(|(index, (x, y))| match (x.is_zero(), y.is_zero()) {
            (false, false) => Err(Error::InvalidFiberPoint { index }),
            (false, true) => Ok(1),
            (true, false) => Ok(-1),
            (true, true) => Ok(0),
        })
        .collect::<Result<Vec<_>>>()
        .map(OneParamSubgroup::new)
}

/// Outcome of [`orbit_limit`].
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct OrbitLimit {
    /// `lim_{t -> 0} λ(t).(b.q)`, of the form `(diag r, diag s', 0, 0)`.
    pub limit: Quadruple<Rational>,
    pub exponents: OneParamSubgroup,
    /// `b.q` for the diagonalizing `b`.
    pub diagonalized: Quadruple<Rational>,
    /// Smallest `t`-exponent in `λ(t).(b.q)`; never negative.
    pub min_exponent: Option<i64>,
}

/// Closed-orbit point in the orbit closure of a point of the regular
/// semisimple zero fiber.
///
/// Diagonalizes `r`, acts by the one-parameter subgroup chosen by
/// [`limit_exponents`], and takes the limit symbolically. The result is
/// checked to equal `(diag r, diag(G_1, ..., G_n), 0, 0)`.
pub fn orbit_limit(q: &Quadruple<Rational>) -> Result<OrbitLimit> {
    if !in_zero_fiber_rss(q) {
        return Err(Error::NotInFiber);
    }
    let n = q.dim();
    let diag = diagonalizing_borel(q.r(), None)?;
    let diagonalized = q.act_with_inverse(diag.b.matrix(), diag.b_inv.matrix())?;
    let exponents = limit_exponents(diagonalized.i(), diagonalized.j())?;
    let acted = exponents.act(&diagonalized)?;

    // λ(t) has weight 0 on the diagonal of s'
    if !(0..n).all(|k| acted.s().get(k, k).is_constant()) {
        return Err(Error::Internal("one-parameter subgroup moved diag(s')".into()));
    }
    let min_exponent = min_exponent(&acted);
    let limit = limit_at_zero(&acted)?;

    let g = (0..n).map(|iota| invariant_g(q, iota)).collect::<Result<Vec<_>>>()?;
    if limit != Quadruple::closed_orbit_point(&q.r().diag(), &g)? {
        return Err(Error::Internal("orbit limit differs from (diag r, diag G, 0, 0)".into()));
    }
    Ok(OrbitLimit { limit, exponents, diagonalized, min_exponent })
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

    fn running_example() -> Quadruple<Rational> {
        Quadruple::new(
            BorelMatrix::new(m(&[&[1, 1], &[0, 2]])).unwrap(),
            DualBorelMatrix::new(m(&[&[0, 0], &[-1, 0]])).unwrap(),
            vec![q(1), q(1)],
            vec![q(1), q(-1)],
        )
        .unwrap()
    }

    #[test]
    fn diagonalizer_of_running_example() {
        let r = BorelMatrix::new(m(&[&[1, 1], &[0, 2]])).unwrap();
        let d = diagonalizing_borel(&r, None).unwrap();
        assert_eq!(d.b.matrix(), &m(&[&[1, -1], &[0, 1]]));
        assert_eq!(d.b_inv.matrix(), &m(&[&[1, 1], &[0, 1]]));
        assert_eq!(&(d.b.matrix() * r.matrix()) * d.b_inv.matrix(), m(&[&[1, 0], &[0, 2]]));
    }

    #[test]
    fn diagonal_r_has_identity_diagonalizer() {
        let r = BorelMatrix::diagonal(&[q(4), q(-2), q(0)]);
        let d = diagonalizing_borel(&r, None).unwrap();
        assert_eq!(d.b, BorelMatrix::identity(3));
    }

    #[test]
    fn diagonal_of_b_is_free() {
        let r = BorelMatrix::new(m(&[&[1, 3, -1], &[0, 2, 5], &[0, 0, -4]])).unwrap();
        let d = diagonalizing_borel(&r, Some(&[q(2), Rational::new(-1, 3), q(5)])).unwrap();
        assert_eq!(d.b.diag(), vec![q(2), Rational::new(-1, 3), q(5)]);
        assert_eq!(&(d.b.matrix() * r.matrix()) * d.b_inv.matrix(), r.diagonal_part());
        assert_eq!(diagonalizing_borel(&r, Some(&[q(1), q(0), q(1)])), Err(Error::NotInvertible));
    }

    #[test]
    fn exponent_recipe() {
        assert_eq!(limit_exponents(&[q(0), q(1)], &[q(1), q(0)]).unwrap().exponents, vec![-1, 1]);
        assert_eq!(limit_exponents(&vec![q(0); 3], &vec![q(0); 3]).unwrap().exponents, vec![0, 0, 0]);
        assert_eq!(limit_exponents(&[q(1), q(0), q(0)], &[q(0), q(0), q(5)]).unwrap().exponents, vec![1, 0, -1]);
        assert_eq!(limit_exponents(&[q(1)], &[q(2)]), Err(Error::InvalidFiberPoint { index: 0 }));
    }

    #[test]
    fn running_example_limit() {
        let result = orbit_limit(&running_example()).unwrap();
        assert_eq!(result.exponents.exponents, vec![-1, 1]);
        assert_eq!(result.limit, Quadruple::closed_orbit_point(&[q(1), q(2)], &[q(1), q(-1)]).unwrap());
        // s'_21 scales as t^2, i' and j' as t
        let acted = result.exponents.act(&result.diagonalized).unwrap();
        assert_eq!(acted.s().get(1, 0), &LaurentPoly::monomial(q(-1), 2));
        assert_eq!(acted.i()[1], LaurentPoly::monomial(q(1), 1));
        assert_eq!(acted.j()[0], LaurentPoly::monomial(q(1), 1));
        assert_eq!(result.min_exponent, Some(0));
    }

    #[test]
    fn closed_orbit_point_is_its_own_limit() {
        let p = Quadruple::closed_orbit_point(&[q(3), q(1), q(-2)], &[q(0), q(7), Rational::new(1, 2)]).unwrap();
        let result = orbit_limit(&p).unwrap();
        assert_eq!(result.limit, p);
        assert_eq!(result.exponents.exponents, vec![0, 0, 0]);
    }

    #[test]
    fn points_off_the_fiber_are_rejected() {
        let off = running_example().with_ij(vec![q(1), q(1)], vec![q(1), q(1)]).unwrap();
        assert_eq!(orbit_limit(&off), Err(Error::NotInFiber));
    }
}
