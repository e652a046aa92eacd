//! Elementary number-theoretic primitives: gcd, a linear Möbius sieve,
//! coprime counting over intervals, and exact powers of two.
//!
//! Everything here is a pure function of its inputs; [`MobiusTable`] is
//! immutable after construction and safe to share across threads.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Greatest common divisor of two nonnegative integers, `gcd(a, 0) = a`.
pub fn gcd_pair(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Values of the Möbius function μ(d) for `1 ≤ d ≤ limit`.
///
/// μ(1) = 1, μ(p) = −1 for primes, μ(m) = 0 exactly when a square of a
/// prime divides m, and μ is multiplicative on coprime arguments.
#[derive(Debug, Clone)]
pub struct MobiusTable {
    /// Indexed by d; slot 0 is unused.
    values: Vec<i8>,
}

impl MobiusTable {
    /// Sieve μ up to `limit` with a linear (smallest-prime-factor) sieve:
    /// O(limit) time and space.
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::EmptySieve);
        }
        let n = usize::try_from(limit).expect("sieve limit exceeds address space");
        let mut values = vec![0i8; n + 1];
        values[1] = 1;
        let mut primes: Vec<usize> = Vec::new();
        let mut composite = vec![false; n + 1];
        for i in 2..=n {
            if !composite[i] {
                primes.push(i);
                values[i] = -1;
            }
            for &p in &primes {
                let Some(ip) = i.checked_mul(p) else { break };
                if ip > n {
                    break;
                }
                composite[ip] = true;
                if i % p == 0 {
                    values[ip] = 0;
                    break;
                }
                values[ip] = -values[i];
            }
        }
        Ok(Self { values })
    }

    /// Largest argument covered by the sieve.
    pub fn limit(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// μ(d). Panics when `d` is 0 or beyond the sieve limit; callers size
    /// the sieve (see module non-goals).
    pub fn mu(&self, d: u64) -> i8 {
        assert!(
            d >= 1 && d <= self.limit(),
            "mu({d}) outside sieve range 1..={}",
            self.limit()
        );
        self.values[d as usize]
    }
}

/// Distinct prime divisors of `m ≥ 1` by trial division, ascending.
pub fn distinct_prime_factors(mut m: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push(m);
    }
    primes
}

/// Count of integers in `[lo, hi]` coprime to the number whose distinct
/// prime divisors are `primes`, by inclusion–exclusion over the squarefree
/// divisors: `Σ_{e | rad(m)} μ(e)·(⌊hi/e⌋ − ⌊(lo−1)/e⌋)`.
pub(crate) fn count_coprime_by_primes(lo: u64, hi: u64, primes: &[u64]) -> u64 {
    debug_assert!(lo >= 1 && lo <= hi);
    // (squarefree divisor, μ of it)
    let mut divisors: Vec<(u64, i64)> = vec![(1, 1)];
    for &p in primes {
        for i in 0..divisors.len() {
            let (d, s) = divisors[i];
            divisors.push((d * p, -s));
        }
    }
    let mut acc: i64 = 0;
    for (d, s) in divisors {
        acc += s * ((hi / d) as i64 - ((lo - 1) / d) as i64);
    }
    debug_assert!(acc >= 0);
    acc as u64
}

/// `#{d ∈ [lo, hi] : gcd(d, m) = 1}` without visiting the interval.
///
/// `m` is factored once by trial division; the inclusion–exclusion then
/// touches `2^ω(m)` squarefree divisors.
pub fn coprime_count(lo: u64, hi: u64, m: u64) -> Result<u64> {
    if lo == 0 {
        return Err(Error::Domain("coprime_count: lo must be positive".into()));
    }
    if m == 0 {
        return Err(Error::Domain("coprime_count: m must be positive".into()));
    }
    if lo > hi {
        return Err(Error::InvalidRange(format!(
            "coprime_count: lo = {lo} exceeds hi = {hi}"
        )));
    }
    Ok(count_coprime_by_primes(lo, hi, &distinct_prime_factors(m)))
}

/// `2^e` as an exact integer.
pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << usize::try_from(e).expect("exponent exceeds address space")
}

/// `2^e − 1` as an exact integer; `pow2_minus1(0) = 0`.
pub fn pow2_minus1(e: u64) -> BigInt {
    pow2(e) - 1
}
