//! Exact analysis of balance-scale protocols that prove a coin collection
//! holds exactly `f` lighter fakes rather than `d`, without saying which
//! coins they are.
//!
//! A [`Strategy`] fixes piles, the prover's placement of fakes and a list of
//! oblivious weighings. [`verify`] counts what an observer can still believe
//! afterwards; the [`strategies`] module builds the known families and
//! searches linear-combination layouts; [`sensitivity`] covers the average
//! sensitivity of `MOD*_m` behind the oblivious lower bound.

pub mod analytic;
pub mod combinatorics;
pub mod error;
pub mod model;
pub mod sensitivity;
pub mod strategies;
pub mod verifier;

pub use combinatorics::{Count, Ratio};
pub use error::{Error, Result};
pub use model::{
    expected_syndrome, refine, validate, Outcome, Params, Pile, Strategy, Syndrome, ValidationReport, Weighing,
};
pub use sensitivity::SensitivityResult;
pub use strategies::{LinCombConfig, SolutionVector};
pub use verifier::{admissible_count, oracle_admissible_count, verify, AdmissibleCount, AdmissibleReport};
