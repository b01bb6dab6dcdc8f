//! The moment map `μ(r, s, i, j) = proj([r, s] + i j)`, its regular
//! semisimple zero fiber, elimination of the subdiagonal of `s`, and
//! witnesses for surjectivity of the quotient map.

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::borel::diagonalizing_borel;
use crate::error::{Error, Result};
use crate::idempotents::idempotent_family;
use crate::instance::Sampler;
use crate::invariants::{invariant_f, quotient_map};
use crate::matrix::{BorelMatrix, DualBorelMatrix, Matrix, Quadruple};
use crate::scalar::{Dual, Rational, Scalar};

/// `proj([r, s] + i j)`.
pub fn moment<T: Scalar>(q: &Quadruple<T>) -> DualBorelMatrix<T> {
    let bracket = q.r().commutator(q.s());
    DualBorelMatrix::project(&(&bracket + &Matrix::outer(q.i(), q.j())))
}

/// `μ(q) = 0` and `r` is regular semisimple.
pub fn in_zero_fiber_rss<T: Scalar>(q: &Quadruple<T>) -> bool {
    q.r().is_regular_semisimple() && moment(q).is_zero()
}

/// Solves the strictly-lower equations `μ(r, s, i, j)_ιγ = 0` (ι > γ) for
/// the subdiagonal of `s`, keeping the prescribed diagonal.
///
/// Levels `ι - γ` are processed from `n - 1` down to `1`, rows increasing
/// within a level, so every right-hand side only involves entries already
/// solved. The diagonal of the resulting moment is `(F_1, ..., F_n)` and is
/// not forced to vanish.
#[allow(clippy::needless_range_loop)]
pub fn solve_subdiagonal_s<T: Scalar>(
    r: &BorelMatrix<T>,
    i: &[T],
    j: &[T],
    diag_s: &[T],
) -> Result<DualBorelMatrix<T>> {
    let n = r.dim();
    for found in [i.len(), j.len(), diag_s.len()] {
        if found != n {
            return Err(Error::DimensionMismatch { expected: n, found });
        }
    }
    r.require_regular_semisimple()?;
    let mut s = Matrix::diagonal(diag_s);
    for level in (1..n).rev() {
        for row in level..n {
            let col = row - level;
            let mut rhs = i[row].clone() * j[col].clone();
            for k in row + 1..n {
                rhs = rhs + r.get(row, k).clone() * s.get(k, col).clone();
            }
            for k in 0..col {
                rhs = rhs - s.get(row, k).clone() * r.get(k, col).clone();
            }
            let gap = r.get(col, col).clone() - r.get(row, row).clone();
            let inv = gap.try_inv().ok_or(Error::NotRegularSemisimple { first: col, second: row })?;
            s.set(row, col, rhs * inv);
        }
    }
    DualBorelMatrix::new(s)
}

/// A point of `C^2n` minus the diagonal locus: `x` has pairwise distinct
/// entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "TargetJson")]
pub struct TargetPoint {
    x: Vec<Rational>,
    y: Vec<Rational>,
}

#[derive(Deserialize)]
struct TargetJson {
    x: Vec<Rational>,
    y: Vec<Rational>,
}

impl TryFrom<TargetJson> for TargetPoint {
    type Error = Error;
    fn try_from(raw: TargetJson) -> Result<Self> {
        TargetPoint::new(raw.x, raw.y)
    }
}

impl TargetPoint {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
        }
        let n = x.len();
        for first in 0..n {
            for second in first + 1..n {
                if x[first] == x[second] {
                    return Err(Error::NotInTarget { first, second });
                }
            }
        }
        Ok(TargetPoint { x, y })
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn y(&self) -> &[Rational] {
        &self.y
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WitnessMode {
    /// The closed-orbit point `(diag x, diag y, 0, 0)`.
    Canonical,
    /// A non-diagonal preimage built from the seed.
    Generic { seed: u64, max_coeff: u32 },
}

/// A point of the regular semisimple zero fiber mapping to `t`.
///
/// In generic mode `r` has diagonal `x` and a random strictly upper part.
/// The vectors are chosen so that in the eigenbasis of `r` each index carries
/// a nonzero `i`-coordinate, a nonzero `j`-coordinate, or neither, which
/// makes every `F_ι` vanish. The subdiagonal of `s` is then solved and its
/// diagonal is set to `s_ιι = y_ι - tr(L^ι (s - diag s))`.
pub fn surjectivity_witness(t: &TargetPoint, mode: WitnessMode) -> Result<Quadruple<Rational>> {
    let n = t.dim();
    let WitnessMode::Generic { seed, max_coeff } = mode else {
        return Quadruple::closed_orbit_point(t.x(), t.y());
    };
    let mut sampler = Sampler::new(seed, max_coeff);
    let r = BorelMatrix::new(Matrix::from_fn(n, |a, b| match a.cmp(&b) {
        std::cmp::Ordering::Equal => t.x()[a].clone(),
        std::cmp::Ordering::Less => sampler.rational(),
        std::cmp::Ordering::Greater => Rational::zero(),
    }))?;
    let (i, j) = fiber_vectors(&r, &mut sampler)?;
    let s_off = solve_subdiagonal_s(&r, &i, &j, &vec![Rational::zero(); n])?;
    let family = idempotent_family(&r)?;
    let mut s = s_off.matrix().clone();
    for l in &family {
        let iota = l.iota();
        let correction = (l.matrix() * s_off.matrix()).trace();
        s.set(iota, iota, &t.y()[iota] - &correction);
    }
    let witness = Quadruple::new(r, DualBorelMatrix::new(s)?, i, j)?;
    if quotient_map(&witness)? != *t {
        return Err(Error::Internal("surjectivity witness misses its target".into()));
    }
    Ok(witness)
}

/// Random `(i, j)` with every `F_ι = tr(j L^ι i)` zero: in the eigenbasis of
/// `r`, coordinate `ι` of `i'` and of `j'` are never both nonzero.
pub(crate) fn fiber_vectors(
    r: &BorelMatrix<Rational>,
    sampler: &mut Sampler,
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let n = r.dim();
    let mut i_prime = vec![Rational::zero(); n];
    let mut j_prime = vec![Rational::zero(); n];
    for k in 0..n {
        match sampler.rng().gen_range(0..5u8) {
            0 | 1 => i_prime[k] = sampler.nonzero_rational(),
            2 | 3 => j_prime[k] = sampler.nonzero_rational(),
            _ => {}
        }
    }
    vectors_from_eigen_coordinates(r, &i_prime, &j_prime)
}

/// `i = b^-1 i'` and `j = j' b` for the diagonalizer `b` of `r`.
pub(crate) fn vectors_from_eigen_coordinates(
    r: &BorelMatrix<Rational>,
    i_prime: &[Rational],
    j_prime: &[Rational],
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let diag = diagonalizing_borel(r, None)?;
    Ok((diag.b_inv.mul_vec(i_prime), diag.b.vec_mul(j_prime)))
}

/// A coordinate of `T*(b x C^n)` left free by the subdiagonal elimination.
/// Indices are 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FreeCoordinate {
    R(usize, usize),
    I(usize),
    J(usize),
    SDiag(usize),
}

pub fn free_coordinates(n: usize) -> Vec<FreeCoordinate> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            out.push(FreeCoordinate::R(a, b));
        }
    }
    out.extend((0..n).map(FreeCoordinate::I));
    out.extend((0..n).map(FreeCoordinate::J));
    out.extend((0..n).map(FreeCoordinate::SDiag));
    out
}

/// Exact Jacobian of `(F_1, ..., F_n)` with respect to [`free_coordinates`],
/// one row per `F_ι`. Derivatives come from forward-mode dual numbers.
pub fn invariant_jacobian(q: &Quadruple<Rational>) -> Result<Vec<Vec<Rational>>> {
    let n = q.dim();
    let coords = free_coordinates(n);
    let mut rows = vec![Vec::with_capacity(coords.len()); n];
    for &coord in &coords {
        let seeded = seed_direction(q, coord)?;
        for (iota, row) in rows.iter_mut().enumerate() {
            row.push(invariant_f(&seeded, iota)?.slope);
        }
    }
    Ok(rows)
}

fn seed_direction(q: &Quadruple<Rational>, coord: FreeCoordinate) -> Result<Quadruple<Dual>> {
    let n = q.dim();
    let lift = |x: &Rational, active: bool| if active { Dual::variable(x.clone()) } else { Dual::constant(x.clone()) };
    let r = Matrix::from_fn(n, |a, b| lift(q.r().get(a, b), coord == FreeCoordinate::R(a, b)));
    let s = Matrix::from_fn(n, |a, b| lift(q.s().get(a, b), a == b && coord == FreeCoordinate::SDiag(a)));
    let i = q.i().iter().enumerate().map(|(k, x)| lift(x, coord == FreeCoordinate::I(k))).collect();
    let j = q.j().iter().enumerate().map(|(k, x)| lift(x, coord == FreeCoordinate::J(k))).collect();
    Quadruple::new(BorelMatrix::new(r)?, DualBorelMatrix::new(s)?, i, j)
}

/// Rank over ℚ by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn exact_rank(rows: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].recip().expect("pivot is nonzero");
        for k in rank + 1..rows.len() {
            if rows[k][c].is_zero() {
                continue;
            }
            let factor = &rows[k][c] * &inv;
            for cc in c..cols {
                let v = &rows[k][cc] - &(&factor * &rows[rank][cc]);
                rows[k][cc] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of [`invariant_jacobian`] at `q`.
pub fn jacobian_rank(q: &Quadruple<Rational>) -> Result<usize> {
    Ok(exact_rank(&invariant_jacobian(q)?))
}

/// `moment(b.q)` equals `proj(b moment(q) b^-1)`.
pub fn equivariance_holds(b: &BorelMatrix<Rational>, q: &Quadruple<Rational>) -> Result<bool> {
    let acted = crate::matrix::borel_act(b, q)?;
    let b_inv = b.inverse()?;
    let transported = DualBorelMatrix::project(&(&(b.matrix() * moment(q).matrix()) * b_inv.matrix()));
    Ok(moment(&acted) == transported)
}
