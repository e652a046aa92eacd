//! Exact arithmetic for counting relatively prime subsets.
//!
//! A finite set `A` of positive integers is *relatively prime* when
//! `gcd(A) = 1`. This crate computes, with arbitrary-precision integers
//! throughout:
//!
//! * `f(n)` — the number of relatively prime subsets of `{1, …, n}`
//!   (OEIS [A085945]), via the Möbius-inversion formula
//!   `f(n) = Σ_{d ≤ n} μ(d)·(2^⌊n/d⌋ − 1)`;
//! * `g(n)` — the number of nonempty `A ⊆ {1, …, n}` with `gcd(A) > 1`
//!   and `gcd(gcd(A), n+1) = 1`, via the divisor sum
//!   `g(n) = Σ_{2 ≤ d ≤ n, gcd(d, n+1)=1} f(⌊n/d⌋)`;
//! * brute-force subset oracles that recount both functions straight from
//!   the definitions, sharing nothing with the formula paths except `gcd`;
//! * the sandwich bounds `2^n − 2^⌊n/2⌋ − n·2^⌊n/3⌋ ≤ f(n) ≤ 2^n − 2^⌊n/2⌋`
//!   and everything built on them: the gap discriminants
//!   `f(n)² − f(n−k)·f(n+k)`, their closed-form lower bound, and the exact
//!   power-of-two threshold catalog;
//! * the mod-6 ratio chain for `g` with its leading-term decompositions.
//!
//! No floating point participates in any verdict: comparisons of ratios are
//! done by cross-multiplying exact integers.
//!
//! ```
//! use relprime::FCache;
//!
//! let cache = FCache::new(32).unwrap();
//! assert_eq!(cache.f(10).unwrap().to_string(), "983");
//! assert_eq!(relprime::g_blocked(10, &cache).unwrap().to_string(), "40");
//! ```
//!
//! The `book/` directory of the repository walks through the concepts
//! chapter by chapter; every code snippet there compiles and runs as a
//! doctest of this crate (see [`guide`]).

pub mod error;
pub mod functions;
pub mod guide;
pub mod inequalities;
pub mod numtheory;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
pub use functions::{
    chi5, f_lower, f_upper, g_blocked, g_decompose, g_naive, DecompositionReport, FCache, GClass,
    LeadingTerm,
};
pub use inequalities::{
    chain_check, delta, delta_lower_bound, reduced_check, scan_chain, scan_delta, scan_reduced,
    scan_threshold_case, squared_compare, threshold_catalog, threshold_check, ChainReport,
    ChainScan, ClaimCheck, DeltaReport, DeltaScan, DeltaSummary, ReducedCheck, ReducedInequality,
    ReducedScan, Sign, SquaredClass, SquaredCompare, ThresholdCase, ThresholdRow, ThresholdScan,
};
pub use numtheory::{coprime_count, gcd_pair, pow2, pow2_minus1, MobiusTable};
pub use oracle::{
    f_brute, f_brute_with_guard, f_of_set, f_of_set_with_guard, g_brute, g_brute_with_guard,
    DEFAULT_GUARD,
};
pub use report::Format;
