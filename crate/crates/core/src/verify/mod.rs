//! Brute-force and randomized checkers.

mod algebra;
mod boundary;
mod enumerate;
mod l2check;
mod mcl;
pub mod quotient;
mod recover;
mod report;
pub mod sampling;
mod solve;
mod treecheck;

pub use algebra::{finewilf_suite, words_suite};
pub use boundary::boundary_suite;
pub use enumerate::{enumerate_words, WordEnumerator};
pub use l2check::{l2_suite, ticadd2_exponents, ticadd2_suite, Settled, TicInstance};
pub use mcl::{c4_threshold, mcl_suite, observation_identity, C4Threshold};
pub use recover::{recover_conjugator, recover_conjugator_general, recover_suite, Recovery, RECOVER_CAP};
pub use report::{run_check, trial_rng, CheckRun, CheckSummary, Failure, Outcome, SuiteReport};
pub use solve::{m_equation, solve_equation_system, solve_suite};
pub use treecheck::{overlap_with_retry, tree_suite, ORACLE_RADIUS};

use crate::groups::Signature;

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 10] =
    ["words", "finewilf", "boundary", "mcl", "tree", "l2", "ticadd2", "recover", "solve-demo", "all"];

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("unknown suite `{0}`; expected one of {}", SUITES.join(", "))]
pub struct UnknownSuite(pub String);

/// Parameters shared by every suite.
#[derive(Clone, Copy, Debug)]
pub struct SuiteParams {
    pub samples: u64,
    pub seed: u64,
    /// Syllable cap for the test-word suites.
    pub budget: usize,
    /// Enumeration bound for the solver suite.
    pub max_len: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self { samples: 200, seed: 0, budget: crate::slp::default_budget(), max_len: 4 }
    }
}

/// Runs a suite by name. The construction-heavy suites (`l2`, `ticadd2`,
/// `recover`) run `samples / 10` trials, at least one.
pub fn run_suite(name: &str, sig: &Signature, p: &SuiteParams) -> Result<SuiteReport, UnknownSuite> {
    let heavy = (p.samples / 10).max(1);
    Ok(match name {
        "words" => words_suite(sig, p.samples, p.seed),
        "finewilf" => finewilf_suite(sig, p.samples, p.seed),
        "boundary" => boundary_suite(sig, p.samples, p.seed),
        "mcl" => mcl_suite(sig, p.samples, p.seed),
        "tree" => tree_suite(sig, p.samples, p.seed),
        "l2" => l2_suite(sig, heavy, p.seed, p.budget),
        "ticadd2" => ticadd2_suite(sig, heavy, p.seed, p.budget),
        "recover" => recover_suite(sig, heavy, p.seed, p.budget),
        "solve-demo" => solve_suite(sig, p.samples, p.seed, p.max_len, p.budget),
        "all" => {
            let start = std::time::Instant::now();
            let mut all = SuiteReport::new("all", &sig.to_string(), p.seed);
            for s in &SUITES[..SUITES.len() - 1] {
                all.absorb(run_suite(s, sig, p)?);
            }
            all.elapsed = start.elapsed();
            all
        }
        _ => return Err(UnknownSuite(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        let sig = Signature::parse("Z2*Z3").unwrap();
        let err = run_suite("bogus", &sig, &SuiteParams::default()).unwrap_err();
        assert_eq!(err, UnknownSuite("bogus".into()));
    }

    #[test]
    fn all_aggregates_every_suite() {
        let sig = Signature::parse("Z2*Z3").unwrap();
        let p = SuiteParams { samples: 20, seed: 4, ..SuiteParams::default() };
        let r = run_suite("all", &sig, &p).unwrap();
        assert!(r.passed(), "{r}");
        for s in &SUITES[..SUITES.len() - 1] {
            assert!(r.checks.iter().any(|c| c.name.starts_with(&format!("{s}/"))), "{s} missing");
        }
    }
}
