//! Symbolic `F_ι` over ℚ(r_kl), the term order on `x, y` monomials, and the
//! initial-term certificate that `F_1, ..., F_n` is a regular sequence.
//!
//! Coefficients stay rational functions in the `r_kl`. The term order never
//! looks at them, which is what treating the `z`-variables as constants
//! amounts to. Their weight is checked directly: every coefficient is
//! homogeneous of degree 0 in `r`.
//!
//! Indices in this module are 1-based, matching the printed variable names.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::idempotents::{eigenvalue_gap_product, shifted_product};
use crate::matrix::{BorelMatrix, Matrix};
use crate::report::Laws;
use crate::scalar::{MultiRational, Poly, Rational, Var};

pub const DEFAULT_SYMBOLIC_MAX: usize = 5;

/// `x_1^{a_1} ... x_n^{a_n} y_1^{b_1} ... y_n^{b_n}`.
///
/// Ordered by the concatenated vector `(a_1, ..., a_n, b_n, ..., b_1)`
/// compared lexicographically. Both monomials must have the same `n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct XYMonomial {
    x: Vec<u32>,
    y: Vec<u32>,
}

impl XYMonomial {
    pub fn new(x: Vec<u32>, y: Vec<u32>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
        }
        Ok(XYMonomial { x, y })
    }

    pub fn one(n: usize) -> Self {
        XYMonomial { x: vec![0; n], y: vec![0; n] }
    }

    /// `x_mu y_gamma`, 1-based.
    pub fn bilinear(n: usize, mu: usize, gamma: usize) -> Self {
        let mut m = Self::one(n);
        m.x[mu - 1] = 1;
        m.y[gamma - 1] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn y_exponents(&self) -> &[u32] {
        &self.y
    }

    pub fn degree(&self) -> u32 {
        self.x.iter().chain(&self.y).sum()
    }

    pub fn is_one(&self) -> bool {
        self.degree() == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        XYMonomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        let disjoint = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(p, q)| *p == 0 || *q == 0);
        disjoint(&self.x, &other.x) && disjoint(&self.y, &other.y)
    }

    fn order_key(&self) -> impl Iterator<Item = u32> + '_ {
        self.x.iter().chain(self.y.iter().rev()).copied()
    }
}

impl Ord for XYMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.dim(), other.dim(), "comparing monomials in different rings");
        self.order_key().cmp(other.order_key())
    }
}

impl PartialOrd for XYMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for XYMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .x
            .iter()
            .enumerate()
            .map(|(k, &e)| (format!("x_{}", k + 1), e))
            .chain(self.y.iter().enumerate().map(|(k, &e)| (format!("y_{}", k + 1), e)))
            .filter(|&(_, e)| e > 0)
            .map(|(name, e)| if e == 1 { name } else { format!("{name}^{e}") })
            .collect();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

impl Serialize for XYMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `F_ι = Σ y_γ L^ι_γμ x_μ` with nonzero rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicBilinear {
    n: usize,
    iota: usize,
    terms: BTreeMap<XYMonomial, MultiRational>,
}

impl SymbolicBilinear {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn iota(&self) -> usize {
        self.iota
    }

    pub fn terms(&self) -> &BTreeMap<XYMonomial, MultiRational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &XYMonomial) -> Option<&MultiRational> {
        self.terms.get(m)
    }

    /// Value at `r`, `x = i`, `y = j`. `None` if a denominator vanishes.
    pub fn evaluate(&self, r: &Matrix<Rational>, x: &[Rational], y: &[Rational]) -> Option<Rational> {
        let point = |v: Var| match v {
            Var::R(k, l) => Some(r.get(usize::from(k) - 1, usize::from(l) - 1).clone()),
            Var::X(k) => x.get(usize::from(k) - 1).cloned(),
            Var::Y(l) => y.get(usize::from(l) - 1).cloned(),
        };
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.evaluate(&point)?;
            for k in 0..self.n {
                value = value * x[k].pow(m.x[k]) * y[k].pow(m.y[k]);
            }
            total = total + value;
        }
        Some(total)
    }

    /// Every monomial is `x_μ y_γ` with `μ >= ι >= γ`.
    pub fn has_support_pattern(&self) -> bool {
        self.terms.keys().all(|m| {
            m.degree() == 2
                && (0..self.n).any(|k| m.x[k] == 1 && k + 1 >= self.iota)
                && (0..self.n).any(|k| m.y[k] == 1 && k < self.iota)
        })
    }

    /// Every coefficient is homogeneous of degree 0 under `r -> c r`.
    pub fn has_weight_zero_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.homogeneous_degree() == Some(0))
    }
}

impl fmt::Display for SymbolicBilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Largest monomial first.
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "[{c}]*{m}")?;
            }
        }
        Ok(())
    }
}

pub fn check_symbolic_dim(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::SymbolicBound { n, max });
    }
    Ok(())
}

/// Upper-triangular matrix of indeterminates `r_kl`, `k <= l`.
pub fn generic_r(n: usize) -> Matrix<Poly> {
    Matrix::from_fn(n, |k, l| if k <= l { Poly::var(Var::R(k as u8 + 1, l as u8 + 1)) } else { Poly::zero() })
}

/// Symbolic `F_ι` for `1 <= ι <= n <= max`.
pub fn expand_f_bounded(n: usize, iota: usize, max: usize) -> Result<SymbolicBilinear> {
    check_symbolic_dim(n, max)?;
    if iota == 0 || iota > n {
        return Err(Error::IndexOutOfRange { index: iota, n });
    }
    let r = generic_r(n);
    let numerators = shifted_product(&r, iota - 1);
    let denominator = eigenvalue_gap_product(&r, iota - 1);
    let mut terms = BTreeMap::new();
    for gamma in 0..n {
        for mu in 0..n {
            let p = numerators.get(gamma, mu);
            if p.is_zero() {
                continue;
            }
            let coeff = MultiRational::new(p.clone(), denominator.clone())?;
            terms.insert(XYMonomial::bilinear(n, mu + 1, gamma + 1), coeff);
        }
    }
    Ok(SymbolicBilinear { n, iota, terms })
}

pub fn expand_f(n: usize, iota: usize) -> Result<SymbolicBilinear> {
    expand_f_bounded(n, iota, DEFAULT_SYMBOLIC_MAX)
}

/// Largest monomial of `f` under the term order.
pub fn initial_term(f: &SymbolicBilinear) -> Result<XYMonomial> {
    f.terms.keys().next_back().cloned().ok_or(Error::ZeroPolynomial)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InitialTermSummary {
    pub iota: usize,
    pub initial_monomial: XYMonomial,
    pub coefficient_is_one: bool,
    pub support_size: usize,
}

pub fn initial_term_summary(f: &SymbolicBilinear) -> Result<InitialTermSummary> {
    let m = initial_term(f)?;
    let coefficient_is_one = f.terms[&m].is_one();
    Ok(InitialTermSummary { iota: f.iota, initial_monomial: m, coefficient_is_one, support_size: f.terms.len() })
}

/// Expands every `F_ι` in parallel.
pub fn expand_all(n: usize, max: usize) -> Result<Vec<SymbolicBilinear>> {
    check_symbolic_dim(n, max)?;
    (1..=n).into_par_iter().map(|iota| expand_f_bounded(n, iota, max)).collect()
}

pub fn initial_terms(n: usize, max: usize) -> Result<Vec<InitialTermSummary>> {
    expand_all(n, max)?.iter().map(initial_term_summary).collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RegularSequenceCertificate {
    pub n: usize,
    pub initial_terms: Vec<InitialTermSummary>,
    pub coprime_pairs: usize,
    pub checks: Laws,
    pub pass: bool,
}

/// Certifies that each `In(F_ι) = x_ι y_ι` with coefficient 1 and that the
/// initial monomials are pairwise coprime. Failures are reported, not
/// raised.
pub fn regular_sequence_certificate_bounded(n: usize, max: usize) -> Result<RegularSequenceCertificate> {
    let expansions = expand_all(n, max)?;
    let summaries: Vec<InitialTermSummary> = expansions.iter().map(initial_term_summary).collect::<Result<_>>()?;

    let mut checks = Laws::new();
    checks.record(
        "initial_term_is_x_iota_y_iota",
        summaries.iter().all(|s| s.initial_monomial == XYMonomial::bilinear(n, s.iota, s.iota)),
    );
    checks.record("coefficient_is_one", summaries.iter().all(|s| s.coefficient_is_one));
    let mut coprime_pairs = 0;
    let mut all_coprime = true;
    for a in 0..summaries.len() {
        for b in a + 1..summaries.len() {
            if summaries[a].initial_monomial.is_coprime(&summaries[b].initial_monomial) {
                coprime_pairs += 1;
            } else {
                all_coprime = false;
            }
        }
    }
    checks.record("pairwise_coprime", all_coprime);
    checks.record("support_pattern", expansions.iter().all(SymbolicBilinear::has_support_pattern));
    checks.record("weight_zero", expansions.iter().all(SymbolicBilinear::has_weight_zero_coefficients));
    let pass = checks.all_pass();
    Ok(RegularSequenceCertificate { n, initial_terms: summaries, coprime_pairs, checks, pass })
}

pub fn regular_sequence_certificate(n: usize) -> Result<RegularSequenceCertificate> {
    regular_sequence_certificate_bounded(n, DEFAULT_SYMBOLIC_MAX)
}

/// Symbolic `F_ι` evaluated at a concrete point, for comparison with the
/// numeric invariant.
pub fn evaluate_f(f: &SymbolicBilinear, r: &BorelMatrix<Rational>, i: &[Rational], j: &[Rational]) -> Option<Rational> {
    f.evaluate(r.matrix(), i, j)
}
