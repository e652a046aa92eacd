//! Sign scans and exact inequality checks over `f` and `g`.
//!
//! The central quantity is the gap discriminant
//! `delta(n, k) = f(n)² − f(n−k)·f(n+k)`: positive everywhere means the
//! sequence is strongly log-concave at gap `k`. Squaring the sandwich
//! bounds on `f` yields a closed-form integer lower bound on the
//! discriminant, and each gap has an exact power-of-two threshold that
//! forces that bound positive. The same cross-multiplication machinery
//! drives the mod-6 ratio chain for `g` and its reduced dominant-term
//! comparisons.
//!
//! Every verdict is an exact integer comparison; ratios are compared by
//! cross-multiplying, never by dividing, and no floating point appears.
//! Scans split their index range across worker threads; reports are
//! assembled in index order, so output never depends on scheduling.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functions::{g_blocked, FCache};
use crate::numtheory::pow2;

/// Sign of a discriminant. A tie gets its own value instead of being
/// folded into either side; no tie is expected, but the report format must
/// not hide one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(v: &BigInt) -> Sign {
        match v.cmp(&BigInt::zero()) {
            Ordering::Less => Sign::Neg,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Pos,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Neg => "NEG",
            Sign::Zero => "ZERO",
            Sign::Pos => "POS",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `f(n)² − f(n−k)·f(n+k)` with its sign and closed-form lower bound.
#[derive(Debug, Clone)]
pub struct DeltaReport {
    pub n: u64,
    pub k: u64,
    pub delta: BigInt,
    pub sign: Sign,
    /// Value of [`delta_lower_bound`] at (n, k).
    pub lower_bound: BigInt,
    /// The bound needs n > k; construction enforces that, so this is
    /// always true on a constructed report.
    pub bound_applicable: bool,
}

fn check_gap_domain(n: u64, k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("gap k must be >= 1".into()));
    }
    if n <= k {
        return Err(Error::Domain(format!(
            "delta(n={n}, k={k}) requires n > k"
        )));
    }
    Ok(())
}

/// Exact discriminant `f(n)² − f(n−k)·f(n+k)` for `n > k ≥ 1`.
pub fn delta(n: u64, k: u64, cache: &FCache) -> Result<DeltaReport> {
    check_gap_domain(n, k)?;
    let f_n = cache.f(n)?;
    let f_lo = cache.f(n - k)?;
    let f_hi = cache.f(n + k)?;
    let delta = &f_n * &f_n - f_lo * f_hi;
    let sign = Sign::of(&delta);
    let lower_bound = delta_lower_bound(n, k)?;
    Ok(DeltaReport {
        n,
        k,
        delta,
        sign,
        lower_bound,
        bound_applicable: true,
    })
}

/// Closed-form lower bound on the discriminant, obtained by squaring the
/// lower sandwich bound of `f(n)` and multiplying the upper bounds of
/// `f(n−k)` and `f(n+k)`:
///
/// `2^{n+⌊(n+k)/2⌋} − 2^{n+⌊n/2⌋+1} + 2^{n−k+⌊(n+k)/2⌋} − n·2^{n+⌊n/3⌋+1}`
/// `+ 2^{2⌊n/2⌋} − 2^{⌊(n+k)/2⌋+⌊(n−k)/2⌋} + n·2^{⌊n/2⌋+⌊n/3⌋+1} + n²·2^{2⌊n/3⌋}`.
pub fn delta_lower_bound(n: u64, k: u64) -> Result<BigInt> {
    check_gap_domain(n, k)?;
    let half = n / 2;
    let third = n / 3;
    let half_plus = (n + k) / 2;
    let half_minus = (n - k) / 2;
    let n_big = BigInt::from(n);

    let mut acc = pow2(n + half_plus);
    acc -= pow2(n + half + 1);
    acc += pow2(n - k + half_plus);
    acc -= &n_big * pow2(n + third + 1);
    acc += pow2(2 * half);
    acc -= pow2(half_plus + half_minus);
    acc += &n_big * pow2(half + third + 1);
    acc += &n_big * &n_big * pow2(2 * third);
    Ok(acc)
}

/// Claim of positivity from a starting index, with the indices in the
/// scanned range that violate it.
#[derive(Debug, Clone)]
pub struct ClaimCheck {
    pub positive_from: u64,
    pub violations: Vec<u64>,
}

/// Tallies of a delta scan plus the positivity-claim check for the gaps
/// where one is on record (k = 2, 3, 4, claimed from n = k+1; the k = 2
/// claim is contradicted at n = 3, where the discriminant is −1).
#[derive(Debug, Clone)]
pub struct DeltaSummary {
    pub k: u64,
    pub n_min: u64,
    pub n_max: u64,
    pub pos: usize,
    pub zero: usize,
    pub neg: usize,
    pub nonpositive_n: Vec<u64>,
    pub claim: Option<ClaimCheck>,
}

#[derive(Debug, Clone)]
pub struct DeltaScan {
    pub reports: Vec<DeltaReport>,
    pub summary: DeltaSummary,
}

/// Discriminant reports for every `n` in `[n_min, n_max]` at gap `k`.
pub fn scan_delta(k: u64, n_min: u64, n_max: u64, cache: &FCache) -> Result<DeltaScan> {
    if n_min > n_max {
        return Err(Error::InvalidRange(format!(
            "scan_delta: n_min = {n_min} exceeds n_max = {n_max}"
        )));
    }
    check_gap_domain(n_min, k)?;
    let reports = (n_min..=n_max)
        .into_par_iter()
        .map(|n| delta(n, k, cache))
        .collect::<Result<Vec<_>>>()?;

    let mut pos = 0;
    let mut zero = 0;
    let mut neg = 0;
    let mut nonpositive_n = Vec::new();
    for r in &reports {
        match r.sign {
            Sign::Pos => pos += 1,
            Sign::Zero => {
                zero += 1;
                nonpositive_n.push(r.n);
            }
            Sign::Neg => {
                neg += 1;
                nonpositive_n.push(r.n);
            }
        }
    }
    let claim = if (2..=4).contains(&k) {
        let positive_from = k + 1;
        let violations = reports
            .iter()
            .filter(|r| r.n >= positive_from && r.sign != Sign::Pos)
            .map(|r| r.n)
            .collect();
        Some(ClaimCheck {
            positive_from,
            violations,
        })
    } else {
        None
    };
    let summary = DeltaSummary {
        k,
        n_min,
        n_max,
        pos,
        zero,
        neg,
        nonpositive_n,
        claim,
    };
    Ok(DeltaScan { reports, summary })
}

/// The exact power-of-two sufficient conditions, one per gap. Each check
/// uses only integer multiplication, shifts and comparison; the original
/// log₂ arguments are recast so no logarithm is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdCase {
    /// k = 2, claimed from n = 51: `n·2^{⌊n/3⌋+2} ≤ 2^{⌊n/2⌋}`.
    T2,
    /// k = 3 and k = 4, claimed from n = 51: `n·2^{⌊n/3⌋+3} ≤ 2^{⌊(n+1)/2⌋}`.
    T3,
    /// k = 5, claimed from n = 36: `n·2^{⌊n/3⌋} ≤ 2^{⌊(n+1)/2⌋}`.
    T5,
    /// k = 6, claimed from n = 36: `n·2^{⌊n/3⌋} ≤ 2^{⌊n/2⌋+1}`.
    T6,
    /// k = 7, claimed from n = 36: `n·2^{⌊n/3⌋} ≤ 2^{⌊(n+1)/2⌋+1}`.
    T7,
    /// k = 8, claimed from n = 36: `n·2^{⌊n/3⌋} ≤ 2^{⌊n/2⌋+2}`.
    T8,
    /// k ≥ 9, claimed from n = k+1: `n·2^{⌊n/3⌋+2} ≤ 2^{⌊(n+k)/2⌋}`.
    T9,
}

impl ThresholdCase {
    pub const ALL: [ThresholdCase; 7] = [
        ThresholdCase::T2,
        ThresholdCase::T3,
        ThresholdCase::T5,
        ThresholdCase::T6,
        ThresholdCase::T7,
        ThresholdCase::T8,
        ThresholdCase::T9,
    ];

    /// The index from which the condition is claimed to hold. T9 depends
    /// on the gap.
    pub fn claimed_from(self, k: Option<u64>) -> Result<u64> {
        Ok(match self {
            ThresholdCase::T2 | ThresholdCase::T3 => 51,
            ThresholdCase::T5 | ThresholdCase::T6 | ThresholdCase::T7 | ThresholdCase::T8 => 36,
            ThresholdCase::T9 => self.require_gap(k)? + 1,
        })
    }

    /// The case covering a given gap; none exists for k = 1 (that gap
    /// alternates in sign instead).
    pub fn for_gap(k: u64) -> Option<ThresholdCase> {
        match k {
            2 => Some(ThresholdCase::T2),
            3 | 4 => Some(ThresholdCase::T3),
            5 => Some(ThresholdCase::T5),
            6 => Some(ThresholdCase::T6),
            7 => Some(ThresholdCase::T7),
            8 => Some(ThresholdCase::T8),
            k if k >= 9 => Some(ThresholdCase::T9),
            _ => None,
        }
    }

    fn require_gap(self, k: Option<u64>) -> Result<u64> {
        let k = k.ok_or_else(|| Error::Domain("case T9 requires the gap k".into()))?;
        if k < 9 {
            return Err(Error::Domain(format!("case T9 requires k >= 9, got {k}")));
        }
        Ok(k)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ThresholdCase::T2 => "T2",
            ThresholdCase::T3 => "T3",
            ThresholdCase::T5 => "T5",
            ThresholdCase::T6 => "T6",
            ThresholdCase::T7 => "T7",
            ThresholdCase::T8 => "T8",
            ThresholdCase::T9 => "T9",
        }
    }
}

impl fmt::Display for ThresholdCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ThresholdCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T2" => Ok(ThresholdCase::T2),
            "T3" => Ok(ThresholdCase::T3),
            "T5" => Ok(ThresholdCase::T5),
            "T6" => Ok(ThresholdCase::T6),
            "T7" => Ok(ThresholdCase::T7),
            "T8" => Ok(ThresholdCase::T8),
            "T9" => Ok(ThresholdCase::T9),
            other => Err(Error::Domain(format!(
                "unknown threshold case {other:?}; expected one of T2, T3, T5..T9"
            ))),
        }
    }
}

/// Evaluate a threshold case at `n` (with the gap for T9). Exact: both
/// sides are integers built from shifts.
pub fn threshold_check(case: ThresholdCase, n: u64, k: Option<u64>) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("threshold check requires n >= 1".into()));
    }
    let (factor_exp, rhs_exp) = match case {
        ThresholdCase::T2 => (n / 3 + 2, n / 2),
        ThresholdCase::T3 => (n / 3 + 3, (n + 1) / 2),
        ThresholdCase::T5 => (n / 3, (n + 1) / 2),
        ThresholdCase::T6 => (n / 3, n / 2 + 1),
        ThresholdCase::T7 => (n / 3, (n + 1) / 2 + 1),
        ThresholdCase::T8 => (n / 3, n / 2 + 2),
        ThresholdCase::T9 => {
            let k = case.require_gap(k)?;
            if n < k + 1 {
                return Err(Error::Domain(format!(
                    "case T9 with k = {k} requires n >= {}",
                    k + 1
                )));
            }
            (n / 3 + 2, (n + k) / 2)
        }
    };
    Ok(BigInt::from(n) * pow2(factor_exp) <= pow2(rhs_exp))
}

/// One evaluated threshold inequality.
#[derive(Debug, Clone)]
pub struct ThresholdRow {
    pub case: ThresholdCase,
    pub k: Option<u64>,
    pub n: u64,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct ThresholdScan {
    pub rows: Vec<ThresholdRow>,
    pub all_hold: bool,
    pub violations: Vec<ThresholdRow>,
}

impl ThresholdScan {
    pub fn from_rows(rows: Vec<ThresholdRow>) -> Self {
        let violations: Vec<ThresholdRow> = rows.iter().filter(|r| !r.holds).cloned().collect();
        let all_hold = violations.is_empty();
        Self {
            rows,
            all_hold,
            violations,
        }
    }
}

/// Evaluate one case over `[n_min, n_max]`.
pub fn scan_threshold_case(
    case: ThresholdCase,
    k: Option<u64>,
    n_min: u64,
    n_max: u64,
) -> Result<Vec<ThresholdRow>> {
    if n_min == 0 {
        return Err(Error::Domain("threshold scan requires n_min >= 1".into()));
    }
    if n_min > n_max {
        return Err(Error::InvalidRange(format!(
            "threshold scan: n_min = {n_min} exceeds n_max = {n_max}"
        )));
    }
    let k = match case {
        ThresholdCase::T9 => Some(case.require_gap(k)?),
        _ => None,
    };
    (n_min..=n_max)
        .map(|n| {
            Ok(ThresholdRow {
                case,
                k,
                n,
                holds: threshold_check(case, n, k)?,
            })
        })
        .collect()
}

/// The whole catalog: T2 and T3 from 51, T5–T8 from 36, and T9 for gaps
/// 9..=20 from k+1, each up to `n_max`. Cases whose start exceeds the
/// horizon contribute no rows.
pub fn threshold_catalog(n_max: u64) -> Result<ThresholdScan> {
    let mut rows = Vec::new();
    for case in [
        ThresholdCase::T2,
        ThresholdCase::T3,
        ThresholdCase::T5,
        ThresholdCase::T6,
        ThresholdCase::T7,
        ThresholdCase::T8,
    ] {
        let from = case.claimed_from(None)?;
        if from <= n_max {
            rows.extend(scan_threshold_case(case, None, from, n_max)?);
        }
    }
    for k in 9..=20u64 {
        if k + 1 <= n_max {
            rows.extend(scan_threshold_case(ThresholdCase::T9, Some(k), k + 1, n_max)?);
        }
    }
    Ok(ThresholdScan::from_rows(rows))
}

/// Which squared comparison of the mod-6 chain to evaluate, named by the
/// centre of `g(centre)² vs g(centre−2)·g(centre+2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquaredClass {
    Center6nMinus2,
    Center6n,
    Center6nPlus2,
}

/// Result of one squared comparison, with both exact sides. `holds` is
/// the strict `lhs > rhs` reading for every class; the chain's third link
/// consumes the same sides with the opposite strict reading.
#[derive(Debug, Clone)]
pub struct SquaredCompare {
    pub holds: bool,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// `g(centre)²` vs `g(centre−2)·g(centre+2)` at class parameter `n ≥ 2`.
pub fn squared_compare(class: SquaredClass, n: u64, cache: &FCache) -> Result<SquaredCompare> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "squared comparison requires n >= 2, got {n}"
        )));
    }
    let center = match class {
        SquaredClass::Center6nMinus2 => 6 * n - 2,
        SquaredClass::Center6n => 6 * n,
        SquaredClass::Center6nPlus2 => 6 * n + 2,
    };
    let mid = g_blocked(center, cache)?;
    let left = g_blocked(center - 2, cache)?;
    let right = g_blocked(center + 2, cache)?;
    let lhs = &mid * &mid;
    let rhs = left * right;
    Ok(SquaredCompare {
        holds: lhs > rhs,
        lhs,
        rhs,
    })
}

/// The five consecutive `g` values around `6n` and the three
/// cross-multiplied ratio comparisons:
///
/// * `cmp1` ⇔ g(6n−2)/g(6n−4) > g(6n)/g(6n−2) ⇔ g(6n−2)² > g(6n)·g(6n−4)
/// * `cmp2` ⇔ g(6n)/g(6n−2) > g(6n+2)/g(6n) ⇔ g(6n)² > g(6n−2)·g(6n+2)
/// * `cmp3` ⇔ g(6n+2)/g(6n) < g(6n+4)/g(6n+2) ⇔ g(6n+2)² < g(6n)·g(6n+4)
///
/// Cross-multiplication is equivalent to the ratio comparisons because
/// every `g` value here is ≥ 1, which is asserted.
#[derive(Debug, Clone)]
pub struct ChainReport {
    pub n: u64,
    /// g(6n−4), g(6n−2), g(6n), g(6n+2), g(6n+4) in that order.
    pub g_values: [BigInt; 5],
    pub cmp1: bool,
    pub cmp2: bool,
    pub cmp3: bool,
    pub chain_holds: bool,
}

/// Evaluate the chain at `n ≥ 1`.
pub fn chain_check(n: u64, cache: &FCache) -> Result<ChainReport> {
    if n == 0 {
        return Err(Error::Domain("chain check requires n >= 1".into()));
    }
    let args = [6 * n - 4, 6 * n - 2, 6 * n, 6 * n + 2, 6 * n + 4];
    let mut g_values: [BigInt; 5] = Default::default();
    for (slot, &arg) in g_values.iter_mut().zip(args.iter()) {
        *slot = g_blocked(arg, cache)?;
    }
    let one = BigInt::one();
    for (v, &arg) in g_values.iter().zip(args.iter()) {
        assert!(*v >= one, "g({arg}) must be >= 1");
    }
    let square_vs_product = |mid: &BigInt, left: &BigInt, right: &BigInt| -> Ordering {
        (mid * mid).cmp(&(left * right))
    };
    let cmp1 = square_vs_product(&g_values[1], &g_values[0], &g_values[2]) == Ordering::Greater;
    let cmp2 = square_vs_product(&g_values[2], &g_values[1], &g_values[3]) == Ordering::Greater;
    let cmp3 = square_vs_product(&g_values[3], &g_values[2], &g_values[4]) == Ordering::Less;
    Ok(ChainReport {
        n,
        g_values,
        cmp1,
        cmp2,
        cmp3,
        chain_holds: cmp1 && cmp2 && cmp3,
    })
}

#[derive(Debug, Clone)]
pub struct ChainScan {
    /// The scan horizon (largest class parameter checked).
    pub n_max: u64,
    pub reports: Vec<ChainReport>,
    /// Least n from which the chain holds all the way to the horizon;
    /// `None` when it fails at the horizon itself. Horizon-relative, not
    /// a proof about larger n.
    pub empirical_n0: Option<u64>,
}

/// Chain reports for `n = 1..=n_max` plus the horizon-relative onset.
pub fn scan_chain(n_max: u64, cache: &FCache) -> Result<ChainScan> {
    if n_max == 0 {
        return Err(Error::InvalidRange(
            "chain scan requires a horizon of at least 1".into(),
        ));
    }
    let reports = (1..=n_max)
        .into_par_iter()
        .map(|n| chain_check(n, cache))
        .collect::<Result<Vec<_>>>()?;
    let empirical_n0 = trailing_onset(reports.iter().map(|r| (r.n, r.chain_holds)));
    Ok(ChainScan {
        n_max,
        reports,
        empirical_n0,
    })
}

/// Least index from which every flag through the end is true.
fn trailing_onset(rows: impl DoubleEndedIterator<Item = (u64, bool)>) -> Option<u64> {
    let mut onset = None;
    for (n, holds) in rows.rev() {
        if holds {
            onset = Some(n);
        } else {
            break;
        }
    }
    onset
}

/// The three dominant-term comparisons left after cancelling the shared
/// leading products in the squared chain inequalities. R1 and R2 hold for
/// `lhs > rhs`; R3 is stated with the opposite direction `lhs < rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducedInequality {
    /// `f(3n−1)² + 2·f(3n−1)·f(2n−1)  >  f(3n)·f(3n−2) + f(3n−2)·f(2n)`
    R1,
    /// `f(3n)² + 2·f(3n)·f(2n)  >  f(3n−1)·f(3n+1) + f(2n−1)·f(3n+1)`
    R2,
    /// `f(3n+1)²  <  f(3n)·f(2n+1) + f(2n)·f(3n+2)`
    R3,
}

impl ReducedInequality {
    pub const ALL: [ReducedInequality; 3] = [
        ReducedInequality::R1,
        ReducedInequality::R2,
        ReducedInequality::R3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReducedInequality::R1 => "R1",
            ReducedInequality::R2 => "R2",
            ReducedInequality::R3 => "R3",
        }
    }
}

impl fmt::Display for ReducedInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReducedInequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "R1" => Ok(ReducedInequality::R1),
            "R2" => Ok(ReducedInequality::R2),
            "R3" => Ok(ReducedInequality::R3),
            other => Err(Error::Domain(format!(
                "unknown reduced inequality {other:?}; expected R1, R2 or R3"
            ))),
        }
    }
}

/// Both exact sides of a reduced inequality and whether it holds in its
/// stated direction.
#[derive(Debug, Clone)]
pub struct ReducedCheck {
    pub holds: bool,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Evaluate a reduced inequality at `n ≥ 1`.
pub fn reduced_check(which: ReducedInequality, n: u64, cache: &FCache) -> Result<ReducedCheck> {
    if n == 0 {
        return Err(Error::Domain("reduced check requires n >= 1".into()));
    }
    let f = |m: u64| cache.f(m);
    let (lhs, rhs, greater) = match which {
        ReducedInequality::R1 => {
            let a = f(3 * n - 1)?;
            let lhs = &a * &a + BigInt::from(2) * &a * f(2 * n - 1)?;
            let rhs = f(3 * n)? * f(3 * n - 2)? + f(3 * n - 2)? * f(2 * n)?;
            (lhs, rhs, true)
        }
        ReducedInequality::R2 => {
            let a = f(3 * n)?;
            let lhs = &a * &a + BigInt::from(2) * &a * f(2 * n)?;
            let rhs = f(3 * n - 1)? * f(3 * n + 1)? + f(2 * n - 1)? * f(3 * n + 1)?;
            (lhs, rhs, true)
        }
        ReducedInequality::R3 => {
            let a = f(3 * n + 1)?;
            let lhs = &a * &a;
            let rhs = f(3 * n)? * f(2 * n + 1)? + f(2 * n)? * f(3 * n + 2)?;
            (lhs, rhs, false)
        }
    };
    let holds = if greater { lhs > rhs } else { lhs < rhs };
    Ok(ReducedCheck { holds, lhs, rhs })
}

#[derive(Debug, Clone)]
pub struct ReducedScan {
    pub which: ReducedInequality,
    pub n_min: u64,
    pub n_max: u64,
    pub reports: Vec<(u64, ReducedCheck)>,
    /// Least n from which the inequality holds through the horizon;
    /// horizon-relative, not a proof.
    pub onset: Option<u64>,
    pub violations: Vec<u64>,
}

/// Evaluate a reduced inequality over `[n_min, n_max]`.
pub fn scan_reduced(
    which: ReducedInequality,
    n_min: u64,
    n_max: u64,
    cache: &FCache,
) -> Result<ReducedScan> {
    if n_min == 0 {
        return Err(Error::Domain("reduced scan requires n_min >= 1".into()));
    }
    if n_min > n_max {
        return Err(Error::InvalidRange(format!(
            "reduced scan: n_min = {n_min} exceeds n_max = {n_max}"
        )));
    }
    let reports = (n_min..=n_max)
        .into_par_iter()
        .map(|n| Ok((n, reduced_check(which, n, cache)?)))
        .collect::<Result<Vec<_>>>()?;
    let onset = trailing_onset(reports.iter().map(|(n, c)| (*n, c.holds)));
    let violations = reports
        .iter()
        .filter(|(_, c)| !c.holds)
        .map(|(n, _)| *n)
        .collect();
    Ok(ReducedScan {
        which,
        n_min,
        n_max,
        reports,
        onset,
        violations,
    })
}
