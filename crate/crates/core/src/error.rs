use thiserror::Error;

use crate::arith::{Int, Rational};
use crate::branch::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid cover index k={k} for projection degree n={n} (need 1 <= k <= {max})", max = .n.saturating_sub(1))]
    InvalidK { k: u64, n: u64 },

    #[error("{quantity} = {value} is not an integer")]
    IntegralityViolation { quantity: &'static str, value: Rational },

    #[error(
        "{quantity} = {value} is not a non-negative integer; intrinsics are not realizable by a generic projection"
    )]
    NonIntegralSolution { quantity: &'static str, value: Rational },

    #[error("derived branch curve degree m = {m} is not positive")]
    DegenerateSurface { m: Int },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("branch data failed validation: {0}")]
    Validation(ValidationReport),
}

impl Error {
    /// Process exit code for the CLI contract: 2 for usage/domain-of-argument
    /// errors, 1 for everything that is a property of the data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidK { .. } | Error::InvalidParameter(_) => 2,
            _ => 1,
        }
    }
}
