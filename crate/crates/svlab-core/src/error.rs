use thiserror::Error;

/// Errors surfaced by the numeric kernels.
///
/// Everything here is a caller-input or numerical-validity problem; internal
/// optimizer stalls are reported through `converged` flags, not errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside its mathematical domain.
    #[error("invalid {name}: {reason}")]
    Domain { name: &'static str, reason: String },

    /// A vector or matrix has the wrong shape for the operation.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A matrix inversion/solve hit the condition-number guard.
    #[error("matrix numerically singular: condition number {cond:.3e} exceeds {limit:.1e}")]
    IllConditioned { cond: f64, limit: f64 },

    /// A bisection bracket does not straddle the sought crossing.
    #[error("{context}: bracket [{lo}, {hi}] contains no crossing")]
    Bracket {
        context: &'static str,
        lo: f64,
        hi: f64,
    },

    /// A Fock truncation discards more probability than allowed.
    #[error("cutoff {cutoff} leaves tail mass {deficit:.3e} above tolerance {tolerance:.1e}")]
    TailTolerance {
        cutoff: usize,
        deficit: f64,
        tolerance: f64,
    },

    /// A nominally real expectation value came out with a complex part.
    #[error("imaginary residue {residue:.3e} exceeds {limit:.1e} on a real expectation value")]
    ImaginaryResidue { residue: f64, limit: f64 },

    /// An intermediate magnitude left the range where f64 results are trustworthy.
    #[error("precision loss: {0}")]
    Precision(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            name,
            reason: reason.into(),
        }
    }
}
