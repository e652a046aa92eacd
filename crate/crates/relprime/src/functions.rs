//! Exact computation of `f(n)` and `g(n)`, the sandwich bounds on `f`, a
//! blocked fast path for `g`, and the leading-term decompositions of `g`
//! on the residue classes 6n−4, 6n−2, 6n.
//!
//! `f(n)` counts the relatively prime subsets of `{1, …, n}` and satisfies
//! `f(n) = Σ_{d ≤ n} μ(d)·(2^⌊n/d⌋ − 1)`. `g(n)` counts nonempty subsets
//! with `gcd(A) > 1` and `gcd(gcd(A), n+1) = 1` and satisfies
//! `g(n) = Σ_{2 ≤ d ≤ n, gcd(d, n+1)=1} f(⌊n/d⌋)`. Both identities are
//! cross-checked against the definition-level oracle in [`crate::oracle`].

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numtheory::{
    count_coprime_by_primes, distinct_prime_factors, gcd_pair, pow2, pow2_minus1, MobiusTable,
};

/// Header line of the cache persistence format.
pub const CACHE_HEADER: &str = "relprime-fcache v1";

/// Memoized values of `f`, backed by a Möbius sieve.
///
/// Entries are insert-only and value-deterministic, so racing inserts of
/// the same key are benign; readers share the map under an `RwLock`.
#[derive(Debug)]
pub struct FCache {
    mobius: MobiusTable,
    entries: RwLock<BTreeMap<u64, BigInt>>,
}

/// Raw evaluation of `f(n) = Σ_{d ≤ n} μ(d)·(2^⌊n/d⌋ − 1)`.
///
/// Kept separate from the cache so that cache verification can recompute
/// entries without consulting the map it is checking.
fn eval_f(mobius: &MobiusTable, n: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for d in 1..=n {
        match mobius.mu(d) {
            0 => {}
            1 => acc += pow2_minus1(n / d),
            -1 => acc -= pow2_minus1(n / d),
            other => unreachable!("mu out of range: {other}"),
        }
    }
    acc
}

impl FCache {
    /// Empty cache over a fresh Möbius sieve covering `1..=sieve_limit`.
    pub fn new(sieve_limit: u64) -> Result<Self> {
        Ok(Self::with_table(MobiusTable::new(sieve_limit)?))
    }

    /// Empty cache over an existing sieve.
    pub fn with_table(mobius: MobiusTable) -> Self {
        Self {
            mobius,
            entries: RwLock::new(BTreeMap::new()),
        }
    }

    /// Largest `n` for which μ support is available, hence the largest
    /// argument `f` accepts.
    pub fn sieve_limit(&self) -> u64 {
        self.mobius.limit()
    }

    pub fn mobius(&self) -> &MobiusTable {
        &self.mobius
    }

    /// Number of memoized entries.
    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `f(n)`, memoized. `f(0) = 0` by convention (the empty ground set
    /// has no nonempty subsets).
    pub fn f(&self, n: u64) -> Result<BigInt> {
        if n == 0 {
            return Ok(BigInt::zero());
        }
        if n > self.sieve_limit() {
            return Err(Error::SieveTooSmall {
                needed: n,
                limit: self.sieve_limit(),
            });
        }
        if let Some(v) = self.entries.read().expect("cache lock poisoned").get(&n) {
            return Ok(v.clone());
        }
        let value = eval_f(&self.mobius, n);
        self.entries
            .write()
            .expect("cache lock poisoned")
            .insert(n, value.clone());
        Ok(value)
    }

    /// Memoized entries in increasing order of `n`.
    pub fn entries_sorted(&self) -> Vec<(u64, BigInt)> {
        self.entries
            .read()
            .expect("cache lock poisoned")
            .iter()
            .map(|(&n, v)| (n, v.clone()))
            .collect()
    }

    /// Compute and memoize `f(1..=n)` in one pass.
    pub fn warm_to(&self, n: u64) -> Result<()> {
        for m in 1..=n {
            self.f(m)?;
        }
        Ok(())
    }

    /// Persist the memoized entries as line-oriented text: a header line,
    /// then `n<TAB>f(n)` in decimal with strictly increasing `n`.
    pub fn save<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = BufWriter::new(file);
        writeln!(w, "{CACHE_HEADER}")?;
        for (n, v) in self.entries_sorted() {
            writeln!(w, "{n}\t{v}")?;
        }
        w.flush()?;
        Ok(())
    }

    /// Load a persisted cache.
    ///
    /// The sieve is sized to `max(sieve_limit, largest stored n)` so every
    /// loaded entry stays reachable and verifiable. With `verify` set,
    /// each line is recomputed from scratch and a mismatch is an error.
    pub fn load<P: AsRef<Path>>(path: P, sieve_limit: u64, verify: bool) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let format_err = |message: String| Error::CacheFormat {
            path: path.display().to_string(),
            message,
        };
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h == CACHE_HEADER => {}
            other => {
                return Err(format_err(format!(
                    "expected header {CACHE_HEADER:?}, found {other:?}"
                )))
            }
        }
        let mut entries = BTreeMap::new();
        let mut prev_n = 0u64;
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            if line.is_empty() {
                continue;
            }
            let (n_str, v_str) = line
                .split_once('\t')
                .ok_or_else(|| format_err(format!("line {lineno}: expected n<TAB>value")))?;
            let n: u64 = n_str
                .parse()
                .map_err(|e| format_err(format!("line {lineno}: bad index: {e}")))?;
            if n == 0 {
                return Err(format_err(format!("line {lineno}: index must be positive")));
            }
            if n <= prev_n {
                return Err(format_err(format!(
                    "line {lineno}: indices must be strictly increasing ({n} after {prev_n})"
                )));
            }
            prev_n = n;
            let value = BigInt::from_str(v_str)
                .map_err(|e| format_err(format!("line {lineno}: bad value: {e}")))?;
            entries.insert(n, value);
        }
        let max_n = entries.keys().next_back().copied().unwrap_or(0);
        let limit = sieve_limit.max(max_n).max(1);
        let mobius = MobiusTable::new(limit)?;
        if verify {
            for (&n, stored) in &entries {
                let recomputed = eval_f(&mobius, n);
                if *stored != recomputed {
                    return Err(Error::CacheMismatch {
                        n,
                        stored: stored.to_string(),
                        recomputed: recomputed.to_string(),
                    });
                }
            }
        }
        Ok(Self {
            mobius,
            entries: RwLock::new(entries),
        })
    }
}

/// Lower sandwich bound `2^n − 2^⌊n/2⌋ − n·2^⌊n/3⌋`; may be ≤ 0 only for
/// tiny n (it is in fact ≥ 0 from n = 1, which the tests verify rather
/// than assume).
pub fn f_lower(n: u64) -> BigInt {
    pow2(n) - pow2(n / 2) - BigInt::from(n) * pow2(n / 3)
}

/// Upper sandwich bound `2^n − 2^⌊n/2⌋`.
pub fn f_upper(n: u64) -> BigInt {
    pow2(n) - pow2(n / 2)
}

/// χ₅(m): 1 when 5 does not divide m, else 0. This is exactly the
/// condition under which the divisor d = 5 survives the coprimality
/// filter in the divisor sum for `g`.
pub fn chi5(m: u64) -> u8 {
    u8::from(m % 5 != 0)
}

fn check_g_domain(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("g({n}): argument must be >= 2")));
    }
    Ok(())
}

/// `g(n) = Σ_{2 ≤ d ≤ n, gcd(d, n+1)=1} f(⌊n/d⌋)`, term by term.
pub fn g_naive(n: u64, cache: &FCache) -> Result<BigInt> {
    check_g_domain(n)?;
    let m = n + 1;
    let mut acc = BigInt::zero();
    for d in 2..=n {
        if gcd_pair(d, m) == 1 {
            acc += cache.f(n / d)?;
        }
    }
    Ok(acc)
}

/// Same sum as [`g_naive`], but grouping divisors into the O(√n) maximal
/// blocks on which `⌊n/d⌋` is constant and weighting `f(⌊n/d⌋)` by the
/// count of block members coprime to `n+1`.
pub fn g_blocked(n: u64, cache: &FCache) -> Result<BigInt> {
    check_g_domain(n)?;
    let m = n + 1;
    let primes = distinct_prime_factors(m);
    let mut acc = BigInt::zero();
    let mut d = 2u64;
    while d <= n {
        let q = n / d;
        let block_end = (n / q).min(n);
        let weight = count_coprime_by_primes(d, block_end, &primes);
        if weight > 0 {
            acc += cache.f(q)? * weight;
        }
        d = block_end + 1;
    }
    Ok(acc)
}

/// The residue class of the `g` argument in a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GClass {
    /// g(6n−4); modulus 6n−3, always divisible by 3, so d = 3 and d = 6
    /// never contribute.
    SixNMinus4,
    /// g(6n−2); modulus 6n−1, coprime to 2 and 3.
    SixNMinus2,
    /// g(6n); modulus 6n+1, coprime to 2 and 3; d = 6 contributes f(n).
    SixN,
}

impl GClass {
    pub const ALL: [GClass; 3] = [GClass::SixNMinus4, GClass::SixNMinus2, GClass::SixN];

    /// The `g` argument for class parameter `n`.
    pub fn argument(self, n: u64) -> u64 {
        match self {
            GClass::SixNMinus4 => 6 * n - 4,
            GClass::SixNMinus2 => 6 * n - 2,
            GClass::SixN => 6 * n,
        }
    }

    /// The coprimality modulus, i.e. argument + 1.
    pub fn modulus(self, n: u64) -> u64 {
        self.argument(n) + 1
    }
}

impl fmt::Display for GClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GClass::SixNMinus4 => "6n-4",
            GClass::SixNMinus2 => "6n-2",
            GClass::SixN => "6n",
        })
    }
}

impl FromStr for GClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "6n-4" => Ok(GClass::SixNMinus4),
            "6n-2" => Ok(GClass::SixNMinus2),
            "6n" => Ok(GClass::SixN),
            other => Err(Error::Domain(format!(
                "unknown class {other:?}; expected 6n-4, 6n-2 or 6n"
            ))),
        }
    }
}

/// One leading term of a decomposition: the divisor it comes from, whether
/// the χ₅ indicator gates it, and its exact value (0 when gated off).
#[derive(Debug, Clone)]
pub struct LeadingTerm {
    pub divisor: u64,
    pub indicator_applied: bool,
    pub value: BigInt,
}

/// `g(class argument)` split into its small-divisor leading terms and the
/// exact tail over the remaining divisors, together with the closed-form
/// bound `6(n−1)·2^{n−1}` on that tail.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub n: u64,
    pub class: GClass,
    pub leading_terms: Vec<LeadingTerm>,
    pub chi5: u8,
    /// Exact tail sum over divisors ≥ 6 (≥ 7 for the 6n class).
    pub remainder: BigInt,
    /// `6(n−1)·2^{n−1}`.
    pub remainder_bound: BigInt,
    /// Σ leading + remainder; equals `g` of the class argument.
    pub total: BigInt,
}

impl DecompositionReport {
    pub fn argument(&self) -> u64 {
        self.class.argument(self.n)
    }
}

/// Decompose `g` of the class argument into leading terms and exact tail.
///
/// The leading terms use the closed floor forms (for example the d = 3
/// term of g(6n−2) is f(2n−1), and the d = 4 term of g(6n−4) is
/// f(⌊3n/2⌋−1)); the identity `total = g(argument)` verified in the tests
/// confirms those floor simplifications along the way.
pub fn g_decompose(n: u64, class: GClass, cache: &FCache) -> Result<DecompositionReport> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "decomposition of class {class} requires n >= 2, got {n}"
        )));
    }
    let arg = class.argument(n);
    let modulus = class.modulus(n);
    let chi = chi5(modulus);

    let mut leading = Vec::new();
    let mut push = |divisor: u64, f_arg: u64, gated: bool| -> Result<()> {
        let value = if gated && chi == 0 {
            BigInt::zero()
        } else {
            cache.f(f_arg)?
        };
        leading.push(LeadingTerm {
            divisor,
            indicator_applied: gated,
            value,
        });
        Ok(())
    };
    let tail_start = match class {
        GClass::SixNMinus2 => {
            push(2, 3 * n - 1, false)?;
            push(3, 2 * n - 1, false)?;
            push(4, (3 * n - 1) / 2, false)?;
            push(5, (6 * n - 2) / 5, true)?;
            6
        }
        GClass::SixNMinus4 => {
            // 3 divides the modulus 6n−3, so d = 3 (and d = 6) never pass
            // the coprimality filter.
            debug_assert_eq!(gcd_pair(3, modulus), 3);
            push(2, 3 * n - 2, false)?;
            push(4, (3 * n) / 2 - 1, false)?;
            push(5, (6 * n - 4) / 5, true)?;
            6
        }
        GClass::SixN => {
            push(2, 3 * n, false)?;
            push(3, 2 * n, false)?;
            push(4, (3 * n) / 2, false)?;
            push(5, (6 * n) / 5, true)?;
            push(6, n, false)?;
            7
        }
    };

    let mut remainder = BigInt::zero();
    for d in tail_start..=arg {
        if gcd_pair(d, modulus) == 1 {
            remainder += cache.f(arg / d)?;
        }
    }

    let total = leading
        .iter()
        .fold(remainder.clone(), |acc, t| acc + &t.value);
    let remainder_bound = BigInt::from(6 * (n - 1)) * pow2(n - 1);

    Ok(DecompositionReport {
        n,
        class,
        leading_terms: leading,
        chi5: chi,
        remainder,
        remainder_bound,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn cache(limit: u64) -> FCache {
        FCache::new(limit).unwrap()
    }

    #[test]
    fn f_small_values() {
        let c = cache(32);
        // First entries of A085945.
        let expected = [1u64, 2, 5, 11, 26, 53, 116, 236, 488, 983];
        for (i, &v) in expected.iter().enumerate() {
            assert_eq!(c.f(i as u64 + 1).unwrap(), BigInt::from(v), "f({})", i + 1);
        }
        assert!(c.f(0).unwrap().is_zero());
    }

    #[test]
    fn f_rejects_argument_beyond_sieve() {
        let c = cache(10);
        assert!(matches!(
            c.f(11),
            Err(Error::SieveTooSmall {
                needed: 11,
                limit: 10
            })
        ));
    }

    #[test]
    fn f_bound_values() {
        assert_eq!(f_lower(1), BigInt::from(0));
        assert_eq!(f_lower(4), BigInt::from(4));
        assert_eq!(f_lower(6), BigInt::from(32));
        assert_eq!(f_upper(1), BigInt::from(1));
        assert_eq!(f_upper(2), BigInt::from(2));
        assert_eq!(f_upper(10), BigInt::from(992));
    }

    #[test]
    fn sandwich_holds_on_prefix() {
        let c = cache(200);
        for n in 1..=200 {
            let f = c.f(n).unwrap();
            assert!(f_lower(n) <= f, "lower bound fails at {n}");
            assert!(f <= f_upper(n), "upper bound fails at {n}");
        }
    }

    #[test]
    fn f_strictly_increasing_prefix() {
        let c = cache(300);
        let mut prev = c.f(1).unwrap();
        for n in 2..=300 {
            let cur = c.f(n).unwrap();
            assert!(cur > prev, "monotonicity fails at {n}");
            prev = cur;
        }
    }

    #[test]
    fn g_small_values() {
        let c = cache(16);
        assert_eq!(g_naive(2, &c).unwrap(), BigInt::from(1));
        assert_eq!(g_naive(4, &c).unwrap(), BigInt::from(4));
        assert_eq!(g_naive(6, &c).unwrap(), BigInt::from(10));
        assert_eq!(g_naive(8, &c).unwrap(), BigInt::from(16));
        assert_eq!(g_naive(10, &c).unwrap(), BigInt::from(40));
        assert_eq!(g_naive(12, &c).unwrap(), BigInt::from(79));
    }

    #[test]
    fn g_rejects_small_arguments() {
        let c = cache(4);
        assert!(matches!(g_naive(1, &c), Err(Error::Domain(_))));
        assert!(matches!(g_blocked(0, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn g_paths_agree_on_named_points() {
        let c = cache(300);
        for n in [2u64, 100, 484] {
            assert_eq!(
                g_blocked(n, &c).unwrap(),
                g_naive(n, &c).unwrap(),
                "paths disagree at {n}"
            );
        }
    }

    #[test]
    fn decompose_g10() {
        let c = cache(8);
        let report = g_decompose(2, GClass::SixNMinus2, &c).unwrap();
        assert_eq!(report.argument(), 10);
        let values: Vec<String> = report
            .leading_terms
            .iter()
            .map(|t| t.value.to_string())
            .collect();
        assert_eq!(values, ["26", "5", "2", "2"]);
        assert_eq!(report.chi5, 1);
        assert_eq!(report.remainder, BigInt::from(5));
        assert_eq!(report.remainder_bound, BigInt::from(12));
        assert_eq!(report.total, BigInt::from(40));
        assert_eq!(report.total, g_naive(10, &c).unwrap());
    }

    #[test]
    fn decompose_g8_skips_d3() {
        let c = cache(8);
        let report = g_decompose(2, GClass::SixNMinus4, &c).unwrap();
        assert_eq!(report.argument(), 8);
        let divisors: Vec<u64> = report.leading_terms.iter().map(|t| t.divisor).collect();
        assert_eq!(divisors, [2, 4, 5]);
        let values: Vec<String> = report
            .leading_terms
            .iter()
            .map(|t| t.value.to_string())
            .collect();
        assert_eq!(values, ["11", "2", "1"]);
        assert_eq!(report.remainder, BigInt::from(2));
        assert_eq!(report.total, BigInt::from(16));
    }

    #[test]
    fn decompose_g12() {
        let c = cache(8);
        let report = g_decompose(2, GClass::SixN, &c).unwrap();
        assert_eq!(report.argument(), 12);
        let g12 = g_naive(12, &c).unwrap();
        assert_eq!(report.total, g12);
        let leading_sum: BigInt = report.leading_terms.iter().map(|t| &t.value).sum();
        assert_eq!(&leading_sum + &report.remainder, g12);
        assert_eq!(report.remainder, BigInt::from(6));
    }

    #[test]
    fn decompose_rejects_n1() {
        let c = cache(8);
        assert!(matches!(
            g_decompose(1, GClass::SixNMinus4, &c),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn decompose_modulus_of_6n_minus_4_is_divisible_by_3() {
        for n in 2..=100 {
            assert_eq!(gcd_pair(3, GClass::SixNMinus4.modulus(n)), 3);
        }
    }

    #[test]
    fn floor_identities_behind_leading_terms() {
        // d = 3 term of g(6n−2) and d = 4 term of g(6n−4), as closed forms.
        for n in 1..=500u64 {
            assert_eq!((6 * n - 2) / 3, 2 * n - 1);
            assert_eq!((6 * n - 4) / 4, (3 * n) / 2 - 1);
            assert_eq!((6 * n - 2) / 4, (3 * n - 1) / 2);
        }
    }

    #[test]
    fn chi5_matches_divisibility() {
        assert_eq!(chi5(11), 1);
        assert_eq!(chi5(9), 1);
        assert_eq!(chi5(13), 1);
        assert_eq!(chi5(10), 0);
        assert_eq!(chi5(5), 0);
    }

    #[test]
    fn cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fcache.txt");
        let c = cache(40);
        c.warm_to(40).unwrap();
        c.save(&path).unwrap();

        let loaded = FCache::load(&path, 40, true).unwrap();
        assert_eq!(loaded.len(), 40);
        assert_eq!(loaded.f(40).unwrap(), c.f(40).unwrap());

        // The sieve grows to cover the largest stored entry.
        let small = FCache::load(&path, 5, false).unwrap();
        assert_eq!(small.sieve_limit(), 40);
        assert_eq!(small.f(40).unwrap(), c.f(40).unwrap());
    }

    #[test]
    fn cache_verify_catches_tampering() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fcache.txt");
        let c = cache(10);
        c.warm_to(10).unwrap();
        c.save(&path).unwrap();

        let text = std::fs::read_to_string(&path).unwrap();
        let tampered = text.replace("10\t983", "10\t984");
        assert_ne!(text, tampered);
        std::fs::write(&path, tampered).unwrap();

        assert!(FCache::load(&path, 10, false).is_ok());
        assert!(matches!(
            FCache::load(&path, 10, true),
            Err(Error::CacheMismatch { n: 10, .. })
        ));
    }

    #[test]
    fn cache_load_rejects_malformed_files() {
        let dir = tempfile::tempdir().unwrap();
        let bad_header = dir.path().join("bad_header.txt");
        std::fs::write(&bad_header, "some other file\n1\t1\n").unwrap();
        assert!(matches!(
            FCache::load(&bad_header, 10, false),
            Err(Error::CacheFormat { .. })
        ));

        let out_of_order = dir.path().join("order.txt");
        std::fs::write(&out_of_order, format!("{CACHE_HEADER}\n2\t2\n1\t1\n")).unwrap();
        assert!(matches!(
            FCache::load(&out_of_order, 10, false),
            Err(Error::CacheFormat { .. })
        ));

        let bad_value = dir.path().join("value.txt");
        std::fs::write(&bad_value, format!("{CACHE_HEADER}\n1\tx\n")).unwrap();
        assert!(matches!(
            FCache::load(&bad_value, 10, false),
            Err(Error::CacheFormat { .. })
        ));
    }

    #[test]
    fn concurrent_fill_matches_serial() {
        let shared = cache(200);
        std::thread::scope(|scope| {
            for t in 0..8 {
                let shared = &shared;
                scope.spawn(move || {
                    for n in (1..=200u64).rev() {
                        if n % 8 == t {
                            shared.f(n).unwrap();
                        }
                        shared.f(n / 2).unwrap();
                    }
                });
            }
        });
        let fresh = cache(200);
        for n in 1..=200 {
            assert_eq!(shared.f(n).unwrap(), fresh.f(n).unwrap());
        }
    }
}
