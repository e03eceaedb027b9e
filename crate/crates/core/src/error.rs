use alloc::string::String;
use core::fmt;

/// Errors raised by the measures and solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum PidError {
    /// Invalid arguments: bad indices, overlapping variable sets, wrong arity.
    Argument(String),
    /// A mathematical precondition failed (e.g. absolute continuity).
    Domain(String),
    /// The request is outside the supported range (e.g. lattices with n > 3).
    Unsupported(String),
    /// A numerical solver failed.
    Solver(String),
    /// An iterative method ran out of iterations.
    IterationLimit { iterations: usize, residual: f64 },
    /// A quantity that must be non-negative came out clearly negative.
    Internal(String),
}

pub type Result<T> = core::result::Result<T, PidError>;

impl PidError {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        PidError::Argument(msg.into())
    }

    /// True for errors coming from a numerical solver rather than bad input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            PidError::Solver(_) | PidError::IterationLimit { .. } | PidError::Internal(_)
        )
    }
}

impl fmt::Display for PidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PidError::Argument(m) => write!(f, "invalid argument: {m}"),
            PidError::Domain(m) => write!(f, "domain error: {m}"),
            PidError::Unsupported(m) => write!(f, "unsupported: {m}"),
            PidError::Solver(m) => write!(f, "solver error: {m}"),
            PidError::IterationLimit {
                iterations,
                residual,
            } => write!(
                f,
                "iteration limit of {iterations} reached (residual {residual:e})"
            ),
            PidError::Internal(m) => write!(f, "internal consistency error: {m}"),
        }
    }
}

impl core::error::Error for PidError {}
