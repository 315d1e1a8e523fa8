//! The nested test words `L₂`, `E`, `J`, `T`, `P`, `M` as straight-line
//! programs, together with the constant searches that make them work.
//!
//! Constants that cannot be certified within the syllable budget are kept as
//! placeholders and marked [`ConstantStatus::Unresolved`]; the expressions are
//! still built, so their shape and exponent sums remain checkable.

mod axis;
mod ewords;
mod family;
mod pm;

use std::fmt;

use crate::slp::SlpError;
use crate::words::WordError;

pub use axis::{
    commutator_axis_data, kappa, kappa_data, l2, l2_vars, w_structure, CommutatorAxisData, KappaOptions, WStructure,
};
pub use ewords::{choose_j_constants, e_k, e_k_values, e_n, j_k, verify_j_constants, JConstants};
pub use family::{mirror_tuple, t_prime_words, t_words, t_words_partial, TPrimeFamily, TWordFamily};
pub use pm::{build_x_hat, find_witnesses, m_words, p_words, p_words_partial, MWords, PWords, Witness, Witnesses};

/// Limits shared by the constructors.
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Syllable cap for any concrete word computed along the way.
    pub budget: usize,
    /// Values of `k` tried by each `κ` search past its admissible start.
    pub kappa_window: u64,
    /// Largest exponent tried by the growth searches for `k̄`, `k̂̄`.
    pub search_cap: u64,
    /// Largest free-word size enumerated for the witnesses `w`, `u₁`, `u₂`, `s`.
    pub witness_size: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { budget: crate::slp::default_budget(), kappa_window: 64, search_cap: 64, witness_size: 6 }
    }
}

impl BuildOptions {
    pub fn with_budget(budget: usize) -> Self {
        Self { budget, ..Self::default() }
    }

    pub fn kappa(&self) -> KappaOptions {
        KappaOptions { window: self.kappa_window, budget: self.budget }
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum TestWordError {
    #[error("input {0} is not hyperbolic")]
    NotHyperbolic(String),
    #[error("inputs {0} commute")]
    CommutingPair(String),
    #[error("{what}: no candidate up to {tried}")]
    SearchExhausted { what: String, tried: String },
    #[error("{what} needs {length} syllables, over the budget of {budget}")]
    BudgetExceeded { what: String, length: usize, budget: usize },
    #[error("structure mismatch: {0}")]
    StructureMismatch(String),
    #[error("expected {expected} arguments, got {given}")]
    BadArity { expected: usize, given: usize },
    #[error("property violated: {0}")]
    PropertyViolated(String),
    #[error(transparent)]
    Slp(#[from] SlpError),
    #[error(transparent)]
    Word(#[from] WordError),
}

impl TestWordError {
    pub fn is_budget(&self) -> bool {
        matches!(self, Self::BudgetExceeded { .. } | Self::Slp(SlpError::BudgetExceeded { .. }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantStatus {
    /// The defining conditions were checked at this value.
    Certified,
    /// The value is a placeholder; the reason says what was out of reach.
    Unresolved(String),
}

/// A constant chosen by a search, with its certification status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constant {
    pub value: u64,
    pub status: ConstantStatus,
}

impl Constant {
    pub fn certified(value: u64) -> Self {
        Self { value, status: ConstantStatus::Certified }
    }

    pub fn unresolved(reason: impl Into<String>) -> Self {
        Self { value: 1, status: ConstantStatus::Unresolved(reason.into()) }
    }

    pub fn is_certified(&self) -> bool {
        self.status == ConstantStatus::Certified
    }

    pub fn as_exponent(&self) -> i64 {
        self.value as i64
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            ConstantStatus::Certified => write!(f, "{}", self.value),
            ConstantStatus::Unresolved(_) => write!(f, "{} (unresolved)", self.value),
        }
    }
}

/// Plain-text `key=value` lines; unresolved constants get a `.status` line.
pub fn manifest_lines(entries: &[(String, Constant)]) -> Vec<String> {
    let mut out = Vec::new();
    for (key, c) in entries {
        out.push(format!("{key}={}", c.value));
        match &c.status {
            ConstantStatus::Certified => out.push(format!("{key}.status=certified")),
            ConstantStatus::Unresolved(why) => out.push(format!("{key}.status=unresolved: {why}")),
        }
    }
    out
}
