//! Error type shared by every module in the crate.
//!
//! The variants map onto the four failure classes the CLI distinguishes:
//! bad arguments ([`Error::Domain`]), size guards ([`Error::SizeGuard`]),
//! exact integer arithmetic overflow ([`Error::Overflow`]), and numerical
//! non-convergence or tolerance violations ([`Error::Numerical`]).

use thiserror::Error;

/// Crate-wide error enum.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A size guard was exceeded (e.g. a degree cap protecting runtime).
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    /// Exact integer arithmetic overflowed an `i64`.
    #[error("integer overflow in exact arithmetic: {0}")]
    Overflow(String),

    /// An iterative or floating-point procedure failed to meet its target.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
