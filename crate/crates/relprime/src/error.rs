//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A Möbius sieve must cover at least `d = 1`.
    #[error("sieve limit must be at least 1")]
    EmptySieve,

    /// The sieve backing an [`crate::FCache`] is too small for the request.
    #[error("sieve covers d <= {limit} but f({needed}) was requested; build the cache with a larger sieve limit")]
    SieveTooSmall { needed: u64, limit: u64 },

    /// A scan or interval was empty or inverted.
    #[error("invalid range: {0}")]
    InvalidRange(String),

    /// An argument fell outside the domain of the operation.
    #[error("{0}")]
    Domain(String),

    /// Exhaustive enumeration was asked for more elements than the guard
    /// allows. Raise the guard explicitly to proceed.
    #[error("enumerating subsets of {n} elements exceeds the resource guard ({guard}); raise the guard to proceed")]
    ResourceGuard { n: u64, guard: u64 },

    /// A cache file did not match the `relprime-fcache v1` format.
    #[error("cache file {path}: {message}")]
    CacheFormat { path: String, message: String },

    /// A cache entry disagreed with on-the-fly recomputation.
    #[error("cache entry f({n}) = {stored} disagrees with recomputed value {recomputed}")]
    CacheMismatch {
        n: u64,
        stored: String,
        recomputed: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
