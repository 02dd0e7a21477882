//! Brute-force cross-checks for the fast algorithms.
//!
//! Everything here is exponential and meant for small instances only.
//! [`run_lemma_suite`] and [`run_agreement_suite`] turn each check into an
//! [`OracleReport`]; failures are reports, never panics.

mod brute;
mod suite;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use brute::{
    brute_decomposition_count, brute_min_syllable_conjugate, brute_star_length,
    brute_syllable_length, elements_within, exhaustive_join_search, letters, rewrite_closure, runs,
    Letter,
};
pub use suite::{
    bundled_instances, heawood_graph, run_agreement_suite, run_lemma_suite, Instance, SuiteParams,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("size guard: {0}")]
    Guard(String),
}

/// Outcome of one check on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub check: String,
    pub instance: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl OracleReport {
    /// Passes when the two displayed values agree.
    pub fn equal(check: &str, instance: String, expected: impl fmt::Display, computed: impl fmt::Display) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Self {
            check: check.to_string(),
            instance,
            pass: expected == computed,
            expected,
            computed,
        }
    }

    pub fn holds(check: &str, instance: String, expected: impl fmt::Display, computed: impl fmt::Display, pass: bool) -> Self {
        Self {
            check: check.to_string(),
            instance,
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
        }
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] expected {} computed {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.instance,
            self.expected,
            self.computed
        )
    }
}
