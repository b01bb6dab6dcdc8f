//! Seeded random instances.
//!
//! Rationals are drawn with numerator in `[-max_coeff, max_coeff]` and
//! denominator in `[1, max_coeff]`. Every draw is a pure function of the
//! seed.

use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{BorelMatrix, DualBorelMatrix, Matrix, Quadruple};
use crate::moment::{fiber_vectors, in_zero_fiber_rss, solve_subdiagonal_s, vectors_from_eigen_coordinates};
use crate::scalar::Rational;

pub const DEFAULT_MAX_COEFF: u32 = 20;

const MAX_ATTEMPTS: usize = 1000;

/// Seeded source of small random rationals and matrices.
pub struct Sampler {
    rng: ChaCha8Rng,
    max_coeff: i64,
}

impl Sampler {
    pub fn new(seed: u64, max_coeff: u32) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), max_coeff: i64::from(max_coeff.max(1)) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational(&mut self) -> Rational {
        let numer = self.rng.gen_range(-self.max_coeff..=self.max_coeff);
        let denom = self.rng.gen_range(1..=self.max_coeff);
        Rational::new(numer, denom)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn vector(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.rational()).collect()
    }

    /// Upper-triangular matrix with pairwise distinct diagonal, by rejection.
    pub fn rss_borel(&mut self, n: usize) -> Result<BorelMatrix<Rational>> {
        for _ in 0..MAX_ATTEMPTS {
            let r = BorelMatrix::new(self.upper(n, false))?;
            if r.is_regular_semisimple() {
                return Ok(r);
            }
        }
        Err(Error::Generation { attempts: MAX_ATTEMPTS })
    }

    /// Invertible upper-triangular matrix.
    pub fn borel_group_element(&mut self, n: usize) -> BorelMatrix<Rational> {
        BorelMatrix::new(self.upper(n, true)).expect("upper triangular by construction")
    }

    pub fn dual_borel(&mut self, n: usize) -> DualBorelMatrix<Rational> {
        let m = Matrix::from_fn(n, |a, b| if a >= b { self.rational() } else { Rational::zero() });
        DualBorelMatrix::new(m).expect("lower triangular by construction")
    }

    pub fn nonzero_vector(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.nonzero_rational()).collect()
    }

    /// Pairwise distinct entries.
    pub fn distinct_vector(&mut self, n: usize) -> Result<Vec<Rational>> {
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        let mut attempts = 0;
        while out.len() < n {
            attempts += 1;
            if attempts > MAX_ATTEMPTS {
                return Err(Error::Generation { attempts: MAX_ATTEMPTS });
            }
            let x = self.rational();
            if !out.contains(&x) {
                out.push(x);
            }
        }
        Ok(out)
    }

    fn upper(&mut self, n: usize, invertible: bool) -> Matrix<Rational> {
        Matrix::from_fn(n, |a, b| match a.cmp(&b) {
            std::cmp::Ordering::Greater => Rational::zero(),
            std::cmp::Ordering::Equal if invertible => self.nonzero_rational(),
            _ => self.rational(),
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenerationMode {
    /// A point of the regular semisimple zero fiber.
    Fiber,
    /// Arbitrary `(r, s, i, j)` with regular semisimple `r`.
    Free,
}

impl FromStr for GenerationMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fiber" => Ok(GenerationMode::Fiber),
            "free" => Ok(GenerationMode::Free),
            other => Err(format!("unknown mode {other:?}, expected fiber or free")),
        }
    }
}

/// Deterministic random quadruple for `(n, seed)`.
///
/// In fiber mode `j` is supported away from the eigen-directions where `i`
/// lives, so every `F_ι` vanishes, and `s` is the elimination solution with
/// a random diagonal.
pub fn generate_instance(n: usize, seed: u64, mode: GenerationMode, max_coeff: u32) -> Result<Quadruple<Rational>> {
    if n == 0 {
        return Err(Error::DimensionOutOfRange { n, max: usize::MAX });
    }
    let mut sampler = Sampler::new(seed, max_coeff);
    let r = sampler.rss_borel(n)?;
    match mode {
        GenerationMode::Free => {
            let s = sampler.dual_borel(n);
            let i = sampler.vector(n);
            let j = sampler.vector(n);
            Quadruple::new(r, s, i, j)
        }
        GenerationMode::Fiber => {
            let (i, j) = fiber_vectors(&r, &mut sampler)?;
            let diag = sampler.vector(n);
            let s = solve_subdiagonal_s(&r, &i, &j, &diag)?;
            let q = Quadruple::new(r, s, i, j)?;
            if !in_zero_fiber_rss(&q) {
                return Err(Error::Internal("fiber instance has nonzero moment".into()));
            }
            Ok(q)
        }
    }
}

/// Fiber point where, in the eigenbasis of `r`, each index carries exactly
/// one nonzero coordinate of `i'` or `j'`. These are the smooth points of
/// the fiber.
pub fn generate_full_support_fiber_point(n: usize, seed: u64, max_coeff: u32) -> Result<Quadruple<Rational>> {
    let mut sampler = Sampler::new(seed, max_coeff);
    let r = sampler.rss_borel(n)?;
    let mut i_prime = vec![Rational::zero(); n];
    let mut j_prime = vec![Rational::zero(); n];
    for k in 0..n {
        if sampler.rng().gen_bool(0.5) {
            i_prime[k] = sampler.nonzero_rational();
        } else {
            j_prime[k] = sampler.nonzero_rational();
        }
    }
    let (i, j) = vectors_from_eigen_coordinates(&r, &i_prime, &j_prime)?;
    let diag = sampler.vector(n);
    let s = solve_subdiagonal_s(&r, &i, &j, &diag)?;
    Quadruple::new(r, s, i, j)
}

/// Mixes a base seed with a dimension and trial index.
pub fn trial_seed(base: u64, n: usize, trial: usize) -> u64 {
    let mut z =
        base ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (trial as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
