//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by table construction, series evaluation, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A size or resource limit was exceeded (sieve capacity, term budgets).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An argument lies outside the supported domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A kernel definition failed one of its construction invariants.
    #[error("invalid kernel: {0}")]
    Kernel(String),

    /// Evaluation requested too close to a pole or a zero of a denominator.
    #[error("pole proximity: {0}")]
    PoleProximity(String),

    /// The zeta log-derivative was requested too close to a zero.
    #[error("zero proximity at s = {s_re}+{s_im}i (nearest ordinate {nearest_gamma:?})")]
    ZeroProximity {
        s_re: f64,
        s_im: f64,
        nearest_gamma: Option<f64>,
    },

    /// A zeros file failed to parse.
    #[error("zeros file {path}, line {line}: {message}")]
    ZeroTableParse {
        path: String,
        line: usize,
        message: String,
    },

    /// A zeros file violated a structural requirement (ordering, anchors).
    #[error("zeros file {path}: {message}")]
    ZeroTableInvalid { path: String, message: String },

    /// Conflicting or incomplete run configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// One or more verification checks failed.
    #[error("verification failed: {0}")]
    Verification(String),

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI maps this error to.
    ///
    /// 2 is reserved for usage and input errors, 3 for capacity; numerical
    /// verification failures are reported separately with exit code 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity(_) => 3,
            Error::Config(_)
            | Error::Domain(_)
            | Error::Kernel(_)
            | Error::PoleProximity(_)
            | Error::ZeroProximity { .. }
            | Error::ZeroTableParse { .. }
            | Error::ZeroTableInvalid { .. } => 2,
            _ => 1,
        }
    }
}
