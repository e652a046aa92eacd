//! Independent ground truth by exhaustive enumeration.
//!
//! These counters recount `f` and `g` straight from the definitions —
//! walk every nonempty subset, maintain the running gcd, test the defining
//! condition at the leaves. They share nothing with the Möbius-formula
//! paths except [`gcd_pair`], which keeps the cross-checks meaningful.
//!
//! Enumeration is exponential, so a resource guard rejects ground sets
//! beyond [`DEFAULT_GUARD`] elements unless a caller raises it explicitly;
//! counts are returned as `u64`, which caps any guard at 63.

use crate::error::{Error, Result};
use crate::numtheory::gcd_pair;

/// Default cap on the number of elements enumerated (2^24 subsets).
pub const DEFAULT_GUARD: u64 = 24;

/// Counts never overflow u64 for ground sets of at most 63 elements.
const HARD_CAP: u64 = 63;

fn check_guard(len: u64, guard: u64) -> Result<()> {
    let guard = guard.min(HARD_CAP);
    if len > guard {
        return Err(Error::ResourceGuard { n: len, guard });
    }
    Ok(())
}

/// Subsets of `elems[idx..]` (joined to a prefix with gcd `g`) whose total
/// gcd is 1. `g = 0` encodes the empty prefix. Once the prefix gcd hits 1
/// every completion qualifies, so the whole subtree collapses to a shift.
fn count_relprime(elems: &[u64], idx: usize, g: u64) -> u64 {
    if g == 1 {
        return 1u64 << (elems.len() - idx);
    }
    if idx == elems.len() {
        return 0;
    }
    count_relprime(elems, idx + 1, g) + count_relprime(elems, idx + 1, gcd_pair(g, elems[idx]))
}

/// Subsets with gcd > 1 that is itself coprime to `m`. A prefix gcd of 1
/// can never recover (adding elements only shrinks the gcd), so that
/// subtree is pruned.
fn count_g_mode(elems: &[u64], idx: usize, g: u64, m: u64) -> u64 {
    if g == 1 {
        return 0;
    }
    if idx == elems.len() {
        return u64::from(g > 1 && gcd_pair(g, m) == 1);
    }
    count_g_mode(elems, idx + 1, g, m) + count_g_mode(elems, idx + 1, gcd_pair(g, elems[idx]), m)
}

/// `f(n)` by enumeration over all nonempty subsets of `{1, …, n}`.
pub fn f_brute(n: u64) -> Result<u64> {
    f_brute_with_guard(n, DEFAULT_GUARD)
}

/// [`f_brute`] with an explicit resource guard.
pub fn f_brute_with_guard(n: u64, guard: u64) -> Result<u64> {
    check_guard(n, guard)?;
    let elems: Vec<u64> = (1..=n).collect();
    Ok(count_relprime(&elems, 0, 0))
}

/// `g(n)` by enumeration: nonempty `A ⊆ {1, …, n}` with `gcd(A) > 1` and
/// `gcd(gcd(A), n+1) = 1`.
pub fn g_brute(n: u64) -> Result<u64> {
    g_brute_with_guard(n, DEFAULT_GUARD)
}

/// [`g_brute`] with an explicit resource guard.
pub fn g_brute_with_guard(n: u64, guard: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("g({n}): argument must be >= 2")));
    }
    check_guard(n, guard)?;
    let elems: Vec<u64> = (1..=n).collect();
    Ok(count_g_mode(&elems, 0, 0, n + 1))
}

/// Number of relatively prime subsets of an arbitrary finite set of
/// positive integers. Duplicates are collapsed (set semantics); element
/// order never affects the count.
pub fn f_of_set(xs: &[u64]) -> Result<u64> {
    f_of_set_with_guard(xs, DEFAULT_GUARD)
}

/// [`f_of_set`] with an explicit resource guard.
pub fn f_of_set_with_guard(xs: &[u64], guard: u64) -> Result<u64> {
    if xs.iter().any(|&x| x == 0) {
        return Err(Error::Domain(
            "f_of_set: elements must be positive integers".into(),
        ));
    }
    let mut elems = xs.to_vec();
    elems.sort_unstable();
    elems.dedup();
    check_guard(elems.len() as u64, guard)?;
    Ok(count_relprime(&elems, 0, 0))
}
