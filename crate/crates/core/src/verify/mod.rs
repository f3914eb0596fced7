//! Independent oracles and runnable verification suites.
//!
//! - [`quadrature`]: adaptive Gauss–Kronrod integration and `E g(λ|X|)`.
//! - [`stats`]: Kolmogorov–Smirnov statistics and standard errors.
//! - [`montecarlo`]: seeded experiments (concentration, maxima, tails).
//! - [`report`]: case records and reports.
//! - [`suites`]: the named suites run by the command line.

pub mod montecarlo;
pub mod quadrature;
pub mod report;
pub mod stats;
pub mod suites;

pub use montecarlo::{
    empirical_k_search, empirical_k_search_with, run_concentration_trial, verify_max_bound, ConcentrationTrial,
    KSearch, MaxBoundCheck,
};
pub use quadrature::{quadrature_mean, Integrand};
pub use report::{CaseKind, CaseResult, VerificationReport};
pub use suites::{run_suite, Suite, SuiteOptions};
