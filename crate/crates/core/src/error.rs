//! Error and resource-budget types shared across the crate.

use thiserror::Error;

/// Errors produced by constructors and operator algebra.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A construction would exceed the configured size budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    /// Two operands have incompatible dimensions.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Size guardrail for operator constructions.
///
/// The budget bounds the total number of stored nonzero entries of any
/// single constructed operator, which is the quantity that actually
/// determines memory and multiply cost for the sparse representations
/// used here.  The default (2^20 entries) is a desk-scale limit: it
/// admits every construction exercised by the verification suites while
/// refusing accidental exponential blowups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of stored nonzero entries per operator.
    pub max_nnz: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nnz: 1 << 20 }
    }
}

impl Budget {
    pub fn new(max_nnz: usize) -> Self {
        Budget { max_nnz }
    }

    /// Checks that an operator with `nnz` stored entries fits, naming the
    /// construction in the error message otherwise.
    pub fn admit(&self, nnz: usize, what: &str) -> Result<()> {
        if nnz > self.max_nnz {
            Err(Error::BudgetExceeded(format!(
                "{what} needs {nnz} stored entries, budget allows {}",
                self.max_nnz
            )))
        } else {
            Ok(())
        }
    }
}
