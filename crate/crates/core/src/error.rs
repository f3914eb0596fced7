use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// An argument lies outside the domain of the operation (NaN included).
    #[error("{what}: argument {value} outside domain")]
    Domain {
        /// Which argument was rejected.
        what: &'static str,
        /// The offending value.
        value: f64,
    },

    /// Two operands have different lengths.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Length required by the left operand or the matrix.
        expected: usize,
        /// Length supplied.
        found: usize,
    },

    /// A bound was requested outside the scale regime where it is proven.
    #[error("regime violation: {0}")]
    Regime(&'static str),

    /// Planner parameters violate `0 < ε ≤ ¼`, `ε ≥ N^{-c}`, `c ≥ 3` or `N ≥ 2`.
    #[error("infeasible parameters: {0}")]
    Infeasible(&'static str),

    /// The planned dimension does not fit in a `u64`.
    #[error("planned dimension overflows u64 (k ≈ {0:e})")]
    DimensionOverflow(f64),

    /// A matrix would exceed the configured entry budget.
    #[error("size overflow: {requested} entries exceeds budget of {budget}")]
    SizeOverflow {
        /// `k · d` as requested.
        requested: u128,
        /// Allowed number of entries.
        budget: u64,
    },

    /// Input rows do not share a common length.
    #[error("ragged input: row {row} has {found} values, expected {expected}")]
    Ragged {
        /// Zero-based row index.
        row: usize,
        /// Length of the first row.
        expected: usize,
        /// Length of the offending row.
        found: usize,
    },

    /// The dataset does not agree with the sketch configuration.
    #[error("config mismatch: {0}")]
    ConfigMismatch(&'static str),

    /// An adaptive routine exhausted its budget before meeting its tolerance.
    #[error("no convergence: {0}")]
    NonConvergence(&'static str),

    /// `empirical_k_search` reached its largest admissible `k`.
    #[error("search budget exhausted at k = {0}")]
    SearchBudget(u64),
}

/// Shorthand for `core::result::Result<T, Error>`.
pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
