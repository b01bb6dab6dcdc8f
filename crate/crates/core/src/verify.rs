//! Seeded verification suites, one per module, with deterministic reports.
//!
//! A suite runs `trials` random trials for every dimension in
//! `n_min..=n_max`. Trials run in parallel but are aggregated in
//! `(n, trial)` order, so a report depends only on its configuration.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::borel::{diagonalizing_borel, orbit_limit};
use crate::error::{Error, Result};
use crate::idempotents::{check_laws, idempotent_family};
use crate::instance::{generate_full_support_fiber_point, generate_instance, trial_seed, GenerationMode, Sampler};
use crate::invariants::{invariant_f_trace_form, quotient_map, InvariantVector};
use crate::matrix::{borel_act, DualBorelMatrix, Matrix, Quadruple};
use crate::moment::{
    equivariance_holds, in_zero_fiber_rss, jacobian_rank, moment, solve_subdiagonal_s, surjectivity_witness,
    TargetPoint, WitnessMode,
};
use crate::report::Laws;
use crate::scalar::Rational;
use crate::symbolic::{expand_all, regular_sequence_certificate_bounded, RegularSequenceCertificate, SymbolicBilinear};

pub const SYMBOLIC_MAX: usize = crate::symbolic::DEFAULT_SYMBOLIC_MAX;

/// Random Borel elements applied per trial in the invariance suite.
pub const CONJUGATIONS_PER_TRIAL: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Idempotents,
    Diagonalize,
    Invariance,
    Limits,
    Solver,
    Symbolic,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Idempotents, Suite::Diagonalize, Suite::Invariance, Suite::Limits, Suite::Solver, Suite::Symbolic];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Idempotents => "idempotents",
            Suite::Diagonalize => "diagonalize",
            Suite::Invariance => "invariance",
            Suite::Limits => "limits",
            Suite::Solver => "solver",
            Suite::Symbolic => "symbolic",
        }
    }

    /// Law names in report order.
    pub fn laws(self) -> &'static [&'static str] {
        match self {
            Suite::Idempotents => &[
                "trace_one",
                "idempotent",
                "orthogonality",
                "sum_identity",
                "commutes_with_r",
                "vanishing_pattern",
                "diagonal_action",
                "dual_vanishing",
                "equivariance",
                "scale_invariance",
                "closed_form_entries",
            ],
            Suite::Diagonalize => &["inverse", "conjugates_to_diagonal", "diagonal_of_b", "dual_diagonal_formula"],
            Suite::Invariance => &["f_invariant", "g_invariant", "h_invariant", "k_invariant", "moment_equivariant"],
            Suite::Limits => &[
                "nonnegative_exponents",
                "limit_is_closed_orbit_point",
                "limit_invariant_under_b",
                "quotient_constant_along_orbit",
                "quotient_constant_under_limit",
            ],
            Suite::Solver => &[
                "off_diagonal_moment_zero",
                "diagonal_is_f",
                "i_zero_gives_diagonal_s",
                "j_zero_gives_diagonal_s",
                "witness_round_trip",
                "witness_in_fiber",
                "separation",
                "jacobian_full_rank",
            ],
            Suite::Symbolic => &[
                "initial_term_is_x_iota_y_iota",
                "coefficient_is_one",
                "pairwise_coprime",
                "support_pattern",
                "weight_zero",
                "numeric_agreement",
            ],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `verify all` or a single suite.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![name.parse()?])
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SuiteConfig {
    pub n_min: usize,
    pub n_max: usize,
    /// Trials per dimension.
    pub trials: usize,
    pub seed: u64,
    pub max_coeff: u32,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LawCount {
    pub name: &'static str,
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub failed: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<Quadruple<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub trials_per_dimension: usize,
    /// Total trials; `pass + fail` equals this for every law.
    pub trials: usize,
    pub laws: Vec<LawCount>,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.laws.iter().all(|l| l.fail == 0)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}  n={}..{}  trials={} ({} per n)  seed={}",
            self.suite, self.n_min, self.n_max, self.trials, self.trials_per_dimension, self.seed
        )?;
        let width = self.laws.iter().map(|l| l.name.len()).max().unwrap_or(0);
        for law in &self.laws {
            writeln!(f, "  {:<width$}  {:>6} pass  {:>6} fail", law.name, law.pass, law.fail)?;
        }
        if let Some(c) = &self.counterexample {
            write!(
                f,
                "  counterexample: n={} trial={} seed={} failed=[{}]",
                c.n,
                c.trial,
                c.seed,
                c.failed.join(", ")
            )?;
            if let Some(e) = &c.error {
                write!(f, " error: {e}")?;
            }
            if let Some(q) = &c.instance {
                write!(f, "\n  instance: {}", serde_json::to_string(q).map_err(|_| fmt::Error)?)?;
            }
            writeln!(f)?;
        }
        write!(f, "  result: {}", if self.all_pass() { "PASS" } else { "FAIL" })
    }
}

struct TrialOutcome {
    laws: Laws,
    instance: Option<Quadruple<Rational>>,
    error: Option<String>,
}

/// Effective dimension range: the symbolic suite is capped.
fn dimensions(suite: Suite, config: &SuiteConfig) -> std::ops::RangeInclusive<usize> {
    let hi = if suite == Suite::Symbolic { config.n_max.min(SYMBOLIC_MAX) } else { config.n_max };
    config.n_min.max(1)..=hi
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<VerificationReport> {
    let dims: Vec<usize> = dimensions(suite, config).collect();
    let symbolic: Vec<(usize, RegularSequenceCertificate, Vec<SymbolicBilinear>)> =
        if suite == Suite::Symbolic && config.trials > 0 {
            dims.iter()
                .map(|&n| Ok((n, regular_sequence_certificate_bounded(n, SYMBOLIC_MAX)?, expand_all(n, SYMBOLIC_MAX)?)))
                .collect::<Result<_>>()?
        } else {
            Vec::new()
        };

    let jobs: Vec<(usize, usize)> = dims.iter().flat_map(|&n| (0..config.trials).map(move |t| (n, t))).collect();
    let outcomes: Vec<TrialOutcome> = jobs
        .par_iter()
        .map(|&(n, t)| {
            let seed = trial_seed(config.seed, n, t);
            let result = match suite {
                Suite::Idempotents => idempotents_trial(n, seed, config.max_coeff),
                Suite::Diagonalize => diagonalize_trial(n, seed, config.max_coeff),
                Suite::Invariance => invariance_trial(n, seed, config.max_coeff),
                Suite::Limits => limits_trial(n, seed, config.max_coeff),
                Suite::Solver => solver_trial(n, seed, config.max_coeff),
                Suite::Symbolic => {
                    let (_, cert, expansions) = symbolic.iter().find(|(m, _, _)| *m == n).expect("expanded above");
                    symbolic_trial(n, seed, config.max_coeff, cert, expansions)
                }
            };
            match result {
                Ok((laws, instance)) => TrialOutcome { laws, instance, error: None },
                Err(e) => {
                    let mut laws = Laws::new();
                    for &name in suite.laws() {
                        laws.record(name, false);
                    }
                    TrialOutcome { laws, instance: None, error: Some(e.to_string()) }
                }
            }
        })
        .collect();

    let mut counts: Vec<LawCount> = suite.laws().iter().map(|&name| LawCount { name, pass: 0, fail: 0 }).collect();
    let mut counterexample = None;
    for (&(n, trial), outcome) in jobs.iter().zip(outcomes) {
        for count in counts.iter_mut() {
            match outcome.laws.get(count.name) {
                Some(true) => count.pass += 1,
                _ => count.fail += 1,
            }
        }
        let failed: Vec<&'static str> =
            suite.laws().iter().copied().filter(|name| outcome.laws.get(name) != Some(true)).collect();
        if counterexample.is_none() && !failed.is_empty() {
            counterexample = Some(Counterexample {
                n,
                trial,
                seed: trial_seed(config.seed, n, trial),
                failed,
                instance: outcome.instance,
                error: outcome.error,
            });
        }
    }
    Ok(VerificationReport {
        suite,
        n_min: *dims.first().unwrap_or(&config.n_min),
        n_max: *dims.last().unwrap_or(&config.n_max),
        seed: config.seed,
        trials_per_dimension: config.trials,
        trials: jobs.len(),
        laws: counts,
        counterexample,
    })
}

type Trial = Result<(Laws, Option<Quadruple<Rational>>)>;

fn idempotents_trial(n: usize, seed: u64, max_coeff: u32) -> Trial {
    let mut sampler = Sampler::new(seed, max_coeff);
    let r = sampler.rss_borel(n)?;
    let conj = sampler.borel_group_element(n);
    let scale = sampler.nonzero_rational();
    let s = sampler.dual_borel(n);
    let laws = check_laws(&r, &conj, &scale, &s)?;
    let q = Quadruple::new(r, s, vec![Rational::zero(); n], vec![Rational::zero(); n])?;
    Ok((laws, Some(q)))
}

fn diagonalize_trial(n: usize, seed: u64, max_coeff: u32) -> Trial {
    let q = generate_instance(n, seed, GenerationMode::Free, max_coeff)?;
    let mut sampler = Sampler::new(seed ^ 0xD1A6, max_coeff);
    let d = sampler.nonzero_vector(n);
    let diag = diagonalizing_borel(q.r(), Some(&d))?;
    let (b, b_inv) = (diag.b.matrix(), diag.b_inv.matrix());
    let mut laws = Laws::new();
    laws.record("inverse", b * b_inv == Matrix::identity(n) && b_inv * b == Matrix::identity(n));
    laws.record("conjugates_to_diagonal", &(b * q.r().matrix()) * b_inv == q.r().diagonal_part());
    laws.record("diagonal_of_b", b.diag() == d);
    let coadjoint = DualBorelMatrix::project(&(&(b * q.s().matrix()) * b_inv));
    let family = idempotent_family(q.r())?;
    laws.record(
        "dual_diagonal_formula",
        family.iter().all(|l| coadjoint.get(l.iota(), l.iota()) == &(l.matrix() * q.s().matrix()).trace()),
    );
    Ok((laws, Some(q)))
}

fn invariance_trial(n: usize, seed: u64, max_coeff: u32) -> Trial {
    let q = generate_instance(n, seed, GenerationMode::Free, max_coeff)?;
    let base = InvariantVector::of(&q)?;
    let mut sampler = Sampler::new(seed ^ 0xB0E1, max_coeff);
    let (mut f, mut g, mut h, mut k, mut eq) = (true, true, true, true, true);
    for _ in 0..CONJUGATIONS_PER_TRIAL {
        let b = sampler.borel_group_element(n);
        let moved = InvariantVector::of(&borel_act(&b, &q)?)?;
        f &= moved.f == base.f;
        g &= moved.g == base.g;
        h &= moved.h == base.h;
        k &= moved.k == base.k;
        eq &= equivariance_holds(&b, &q)?;
    }
    let mut laws = Laws::new();
    laws.record("f_invariant", f)
        .record("g_invariant", g)
        .record("h_invariant", h)
        .record("k_invariant", k)
        .record("moment_equivariant", eq);
    Ok((laws, Some(q)))
}

fn limits_trial(n: usize, seed: u64, max_coeff: u32) -> Trial {
    let q = generate_instance(n, seed, GenerationMode::Fiber, max_coeff)?;
    let result = orbit_limit(&q)?;
    let target = quotient_map(&q)?;
    let expected = Quadruple::closed_orbit_point(&q.r().diag(), target.y())?;
    let b = Sampler::new(seed ^ 0x11A1, max_coeff).borel_group_element(n);
    let moved = borel_act(&b, &q)?;
    let mut laws = Laws::new();
    laws.record("nonnegative_exponents", result.min_exponent.is_none_or(|e| e >= 0));
    laws.record("limit_is_closed_orbit_point", result.limit == expected);
    laws.record("limit_invariant_under_b", orbit_limit(&moved)?.limit == result.limit);
    laws.record("quotient_constant_along_orbit", quotient_map(&moved)? == target);
    laws.record("quotient_constant_under_limit", quotient_map(&result.limit)? == target);
    Ok((laws, Some(q)))
}

fn random_target(sampler: &mut Sampler, n: usize) -> Result<TargetPoint> {
    let x = sampler.distinct_vector(n)?;
    let y = sampler.vector(n);
    TargetPoint::new(x, y)
}

fn solver_trial(n: usize, seed: u64, max_coeff: u32) -> Trial {
    let free = generate_instance(n, seed, GenerationMode::Free, max_coeff)?;
    let mut sampler = Sampler::new(seed ^ 0x501E, max_coeff);
    let diag = sampler.vector(n);
    let (r, i, j) = (free.r(), free.i(), free.j());
    let s = solve_subdiagonal_s(r, i, j, &diag)?;
    let solved = free.with_s(s)?;
    let mu = moment(&solved);
    let mut laws = Laws::new();
    laws.record("off_diagonal_moment_zero", (0..n).all(|a| (0..a).all(|b| mu.get(a, b).is_zero())));
    let f = (0..n).map(|iota| invariant_f_trace_form(&solved, iota)).collect::<Result<Vec<_>>>()?;
    laws.record("diagonal_is_f", mu.diag() == f);

    let zero = vec![Rational::zero(); n];
    let strictly_lower_zero = |s: &DualBorelMatrix<Rational>| (0..n).all(|a| (0..a).all(|b| s.get(a, b).is_zero()));
    laws.record("i_zero_gives_diagonal_s", strictly_lower_zero(&solve_subdiagonal_s(r, &zero, j, &diag)?));
    laws.record("j_zero_gives_diagonal_s", strictly_lower_zero(&solve_subdiagonal_s(r, i, &zero, &diag)?));

    let t = random_target(&mut sampler, n)?;
    let canonical = surjectivity_witness(&t, WitnessMode::Canonical)?;
    let generic = surjectivity_witness(&t, WitnessMode::Generic { seed: seed ^ 0x7, max_coeff })?;
    laws.record(
        "witness_round_trip",
        quotient_map(&canonical)? == t && quotient_map(&generic)? == t && orbit_limit(&generic)?.limit == canonical,
    );
    laws.record("witness_in_fiber", in_zero_fiber_rss(&canonical) && in_zero_fiber_rss(&generic));
    let other = random_target(&mut sampler, n)?;
    let other_point = Quadruple::closed_orbit_point(other.x(), other.y())?;
    laws.record("separation", (quotient_map(&other_point)? == quotient_map(&canonical)?) == (other == t));

    let smooth = generate_full_support_fiber_point(n, seed ^ 0x1AC0, max_coeff)?;
    laws.record("jacobian_full_rank", jacobian_rank(&smooth)? == n);
    Ok((laws, Some(solved)))
}

fn symbolic_trial(
    n: usize,
    seed: u64,
    max_coeff: u32,
    cert: &RegularSequenceCertificate,
    expansions: &[SymbolicBilinear],
) -> Trial {
    let q = generate_instance(n, seed, GenerationMode::Free, max_coeff)?;
    let mut laws = Laws::new();
    for &name in &Suite::Symbolic.laws()[..5] {
        laws.record(name, cert.checks.get(name) == Some(true));
    }
    let mut agree = true;
    for f in expansions {
        let symbolic = f.evaluate(q.r().matrix(), q.i(), q.j());
        agree &= symbolic == Some(invariant_f_trace_form(&q, f.iota() - 1)?);
    }
    laws.record("numeric_agreement", agree);
    Ok((laws, Some(q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(trials: usize) -> SuiteConfig {
        SuiteConfig { n_min: 1, n_max: 4, trials, seed: 7, max_coeff: 20 }
    }

    #[test]
    fn every_suite_passes_on_small_runs() {
        for suite in Suite::ALL {
            let report = run_suite(suite, &config(3)).unwrap();
            assert!(report.all_pass(), "{report}");
            assert!(report.counterexample.is_none());
            for law in &report.laws {
                assert_eq!(law.pass + law.fail, report.trials);
            }
        }
    }

    #[test]
    fn zero_trials_is_empty_and_passing() {
        let report = run_suite(Suite::Idempotents, &config(0)).unwrap();
        assert_eq!(report.trials, 0);
        assert!(report.all_pass());
    }

    #[test]
    fn reports_are_reproducible() {
        let a = serde_json::to_string(&run_suite(Suite::Limits, &config(4)).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::Limits, &config(4)).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert_eq!(parse_suites("all").unwrap().len(), 6);
        assert_eq!("bogus".parse::<Suite>(), Err(Error::UnknownSuite("bogus".into())));
    }

    #[test]
    fn symbolic_suite_is_capped() {
        let report =
            run_suite(Suite::Symbolic, &SuiteConfig { n_min: 1, n_max: 7, trials: 1, seed: 0, max_coeff: 5 }).unwrap();
        assert_eq!(report.n_max, SYMBOLIC_MAX);
        assert_eq!(report.trials, SYMBOLIC_MAX);
    }
}
