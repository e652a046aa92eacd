//! Machine-readable rendering of scan results.
//!
//! Three formats share one column set per scan type: newline-delimited
//! JSON objects, CSV with the same columns (big integers quoted so they
//! survive spreadsheet import), and a plain text form for reading at the
//! terminal. Big integers are always emitted as decimal strings; rows are
//! assembled in index order, so rendering the same scan twice yields
//! byte-identical output.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::functions::DecompositionReport;
use crate::inequalities::{ChainScan, DeltaScan, ReducedScan, ThresholdRow, ThresholdScan};

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Plain,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(Format::Plain),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(crate::Error::Domain(format!(
                "unknown format {other:?}; expected plain, json or csv"
            ))),
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report serialization cannot fail")
}

#[derive(Serialize)]
struct DeltaLine<'a> {
    n: u64,
    k: u64,
    sign: &'a str,
    delta_decimal: String,
}

#[derive(Serialize)]
struct DeltaSummaryLine<'a> {
    summary: &'a str,
    k: u64,
    from: u64,
    to: u64,
    pos: usize,
    zero: usize,
    neg: usize,
    nonpositive_n: &'a [u64],
    #[serde(skip_serializing_if = "Option::is_none")]
    claim_positive_from: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    claim_violations: Option<&'a [u64]>,
}

#[derive(Serialize)]
struct ChainLine {
    n: u64,
    g_values_decimal: [String; 5],
    cmp1: bool,
    cmp2: bool,
    cmp3: bool,
    holds: bool,
}

#[derive(Serialize)]
struct ChainSummaryLine<'a> {
    summary: &'a str,
    to: u64,
    all_hold: bool,
    violations: Vec<u64>,
    empirical_n0: Option<u64>,
    note: &'a str,
}

#[derive(Serialize)]
struct ReducedLine {
    n: u64,
    holds: bool,
}

#[derive(Serialize)]
struct ReducedSummaryLine<'a> {
    summary: &'a str,
    which: &'a str,
    from: u64,
    to: u64,
    onset: Option<u64>,
    violations: &'a [u64],
    note: &'a str,
}

#[derive(Serialize)]
struct ThresholdLine<'a> {
    n: u64,
    case: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u64>,
    holds: bool,
}

#[derive(Serialize)]
struct ThresholdSummaryLine<'a> {
    summary: &'a str,
    rows: usize,
    all_hold: bool,
    violations: Vec<ThresholdLine<'a>>,
}

const HORIZON_NOTE: &str = "onset is relative to the scan horizon, not a proof";

fn u64_list(values: &[u64]) -> String {
    let items: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", items.join(","))
}

fn push_line(out: &mut String, line: &str) {
    out.push_str(line);
    out.push('\n');
}

/// Render a delta scan. With `summary_only`, only the summary is emitted.
pub fn render_delta_scan(scan: &DeltaScan, format: Format, summary_only: bool) -> String {
    let mut out = String::new();
    if !summary_only {
        for r in &scan.reports {
            match format {
                Format::Json => push_line(
                    &mut out,
                    &json_line(&DeltaLine {
                        n: r.n,
                        k: r.k,
                        sign: r.sign.as_str(),
                        delta_decimal: r.delta.to_string(),
                    }),
                ),
                Format::Csv => push_line(
                    &mut out,
                    &format!("{},{},{},\"{}\"", r.n, r.k, r.sign.as_str(), r.delta),
                ),
                Format::Plain => push_line(
                    &mut out,
                    &format!("n={} k={} sign={} delta={}", r.n, r.k, r.sign, r.delta),
                ),
            }
        }
    }
    let s = &scan.summary;
    match format {
        Format::Json => push_line(
            &mut out,
            &json_line(&DeltaSummaryLine {
                summary: "delta",
                k: s.k,
                from: s.n_min,
                to: s.n_max,
                pos: s.pos,
                zero: s.zero,
                neg: s.neg,
                nonpositive_n: &s.nonpositive_n,
                claim_positive_from: s.claim.as_ref().map(|c| c.positive_from),
                claim_violations: s.claim.as_ref().map(|c| c.violations.as_slice()),
            }),
        ),
        Format::Csv | Format::Plain => {
            let prefix = if format == Format::Csv { "# " } else { "" };
            push_line(
                &mut out,
                &format!(
                    "{prefix}summary: delta k={} n={}..{} pos={} zero={} neg={} nonpositive={}",
                    s.k,
                    s.n_min,
                    s.n_max,
                    s.pos,
                    s.zero,
                    s.neg,
                    u64_list(&s.nonpositive_n)
                ),
            );
            if let Some(claim) = &s.claim {
                let verdict = if claim.violations.is_empty() {
                    "confirmed over the scanned range".to_string()
                } else {
                    format!(
                        "CONFLICT: violated at n={}",
                        u64_list(&claim.violations)
                    )
                };
                push_line(
                    &mut out,
                    &format!(
                        "{prefix}claim: delta(n,{}) > 0 stated for all n >= {}: {}",
                        s.k, claim.positive_from, verdict
                    ),
                );
            }
        }
    }
    out
}

/// Render a chain scan.
pub fn render_chain_scan(scan: &ChainScan, format: Format, summary_only: bool) -> String {
    let mut out = String::new();
    if !summary_only {
        for r in &scan.reports {
            match format {
                Format::Json => {
                    let g_values_decimal: [String; 5] =
                        std::array::from_fn(|i| r.g_values[i].to_string());
                    push_line(
                        &mut out,
                        &json_line(&ChainLine {
                            n: r.n,
                            g_values_decimal,
                            cmp1: r.cmp1,
                            cmp2: r.cmp2,
                            cmp3: r.cmp3,
                            holds: r.chain_holds,
                        }),
                    );
                }
                Format::Csv => {
                    let mut line = format!("{}", r.n);
                    for v in &r.g_values {
                        let _ = write!(line, ",\"{v}\"");
                    }
                    let _ = write!(
                        line,
                        ",{},{},{},{}",
                        r.cmp1, r.cmp2, r.cmp3, r.chain_holds
                    );
                    push_line(&mut out, &line);
                }
                Format::Plain => {
                    let values: Vec<String> =
                        r.g_values.iter().map(|v| v.to_string()).collect();
                    push_line(
                        &mut out,
                        &format!(
                            "n={} g=({}) cmp1={} cmp2={} cmp3={} holds={}",
                            r.n,
                            values.join(","),
                            r.cmp1,
                            r.cmp2,
                            r.cmp3,
                            r.chain_holds
                        ),
                    );
                }
            }
        }
    }
    let violations: Vec<u64> = scan
        .reports
        .iter()
        .filter(|r| !r.chain_holds)
        .map(|r| r.n)
        .collect();
    match format {
        Format::Json => push_line(
            &mut out,
            &json_line(&ChainSummaryLine {
                summary: "chain",
                to: scan.n_max,
                all_hold: violations.is_empty(),
                violations,
                empirical_n0: scan.empirical_n0,
                note: HORIZON_NOTE,
            }),
        ),
        Format::Csv | Format::Plain => {
            let prefix = if format == Format::Csv { "# " } else { "" };
            let n0 = match scan.empirical_n0 {
                Some(n0) => n0.to_string(),
                None => "none (chain fails at the horizon)".to_string(),
            };
            push_line(
                &mut out,
                &format!(
                    "{prefix}summary: chain n=1..{} all_hold={} violations={} empirical_n0={} ({})",
                    scan.n_max,
                    violations.is_empty(),
                    u64_list(&violations),
                    n0,
                    HORIZON_NOTE
                ),
            );
        }
    }
    out
}

/// Render a reduced-inequality scan.
pub fn render_reduced_scan(scan: &ReducedScan, format: Format, summary_only: bool) -> String {
    let mut out = String::new();
    if !summary_only {
        for (n, check) in &scan.reports {
            match format {
                Format::Json => push_line(
                    &mut out,
                    &json_line(&ReducedLine {
                        n: *n,
                        holds: check.holds,
                    }),
                ),
                Format::Csv => push_line(&mut out, &format!("{},{}", n, check.holds)),
                Format::Plain => push_line(
                    &mut out,
                    &format!(
                        "n={} holds={} lhs={} rhs={}",
                        n, check.holds, check.lhs, check.rhs
                    ),
                ),
            }
        }
    }
    match format {
        Format::Json => push_line(
            &mut out,
            &json_line(&ReducedSummaryLine {
                summary: "reduced",
                which: scan.which.as_str(),
                from: scan.n_min,
                to: scan.n_max,
                onset: scan.onset,
                violations: &scan.violations,
                note: HORIZON_NOTE,
            }),
        ),
        Format::Csv | Format::Plain => {
            let prefix = if format == Format::Csv { "# " } else { "" };
            let onset = match scan.onset {
                Some(n) => n.to_string(),
                None => "none (fails at the horizon)".to_string(),
            };
            push_line(
                &mut out,
                &format!(
                    "{prefix}summary: reduced {} n={}..{} onset={} violations={} ({})",
                    scan.which,
                    scan.n_min,
                    scan.n_max,
                    onset,
                    u64_list(&scan.violations),
                    HORIZON_NOTE
                ),
            );
        }
    }
    out
}

fn threshold_line(row: &ThresholdRow) -> ThresholdLine<'_> {
    ThresholdLine {
        n: row.n,
        case: row.case.as_str(),
        k: row.k,
        holds: row.holds,
    }
}

/// Render a threshold scan.
pub fn render_threshold_scan(scan: &ThresholdScan, format: Format, summary_only: bool) -> String {
    let mut out = String::new();
    if !summary_only {
        for row in &scan.rows {
            match format {
                Format::Json => push_line(&mut out, &json_line(&threshold_line(row))),
                Format::Csv => {
                    let k = row.k.map(|k| k.to_string()).unwrap_or_default();
                    push_line(
                        &mut out,
                        &format!("{},{},{},{}", row.n, row.case.as_str(), k, row.holds),
                    );
                }
                Format::Plain => {
                    let k = row
                        .k
                        .map(|k| format!(" k={k}"))
                        .unwrap_or_default();
                    push_line(
                        &mut out,
                        &format!("n={} case={}{} holds={}", row.n, row.case, k, row.holds),
                    );
                }
            }
        }
    }
    match format {
        Format::Json => push_line(
            &mut out,
            &json_line(&ThresholdSummaryLine {
                summary: "thresholds",
                rows: scan.rows.len(),
                all_hold: scan.all_hold,
                violations: scan.violations.iter().map(threshold_line).collect(),
            }),
        ),
        Format::Csv | Format::Plain => {
            let prefix = if format == Format::Csv { "# " } else { "" };
            let violations: Vec<String> = scan
                .violations
                .iter()
                .map(|r| match r.k {
                    Some(k) => format!("{}(k={k})@{}", r.case, r.n),
                    None => format!("{}@{}", r.case, r.n),
                })
                .collect();
            push_line(
                &mut out,
                &format!(
                    "{prefix}summary: thresholds rows={} all_hold={} violations=[{}]",
                    scan.rows.len(),
                    scan.all_hold,
                    violations.join(",")
                ),
            );
        }
    }
    out
}

#[derive(Serialize)]
struct ValueLine<'a> {
    op: &'a str,
    n: u64,
    value_decimal: String,
}

/// Render a single computed value (`compute f`, `compute g`, `oracle f`,
/// `oracle g`). Plain format prints just the decimal value.
pub fn render_value(op: &str, n: u64, value: &BigInt, format: Format) -> String {
    match format {
        Format::Plain => format!("{value}\n"),
        Format::Json => format!(
            "{}\n",
            json_line(&ValueLine {
                op,
                n,
                value_decimal: value.to_string(),
            })
        ),
        Format::Csv => format!("{op},{n},\"{value}\"\n"),
    }
}

#[derive(Serialize)]
struct BoundsLine {
    n: u64,
    f_lower_decimal: String,
    f_decimal: String,
    f_upper_decimal: String,
    sandwich_holds: bool,
}

/// Render the sandwich `f_lower(n) ≤ f(n) ≤ f_upper(n)`.
pub fn render_bounds(n: u64, lower: &BigInt, f: &BigInt, upper: &BigInt, format: Format) -> String {
    let holds = lower <= f && f <= upper;
    match format {
        Format::Plain => {
            format!("n={n} f_lower={lower} f={f} f_upper={upper} sandwich={holds}\n")
        }
        Format::Json => format!(
            "{}\n",
            json_line(&BoundsLine {
                n,
                f_lower_decimal: lower.to_string(),
                f_decimal: f.to_string(),
                f_upper_decimal: upper.to_string(),
                sandwich_holds: holds,
            })
        ),
        Format::Csv => format!("{n},\"{lower}\",\"{f}\",\"{upper}\",{holds}\n"),
    }
}

#[derive(Serialize)]
struct LeadingTermLine {
    d: u64,
    indicator: bool,
    value_decimal: String,
}

#[derive(Serialize)]
struct DecompositionLine {
    class: String,
    n: u64,
    argument: u64,
    leading: Vec<LeadingTermLine>,
    chi5: u8,
    remainder_decimal: String,
    remainder_bound_decimal: String,
    total_decimal: String,
}

/// Render a decomposition report.
pub fn render_decomposition(report: &DecompositionReport, format: Format) -> String {
    match format {
        Format::Json => {
            let leading = report
                .leading_terms
                .iter()
                .map(|t| LeadingTermLine {
                    d: t.divisor,
                    indicator: t.indicator_applied,
                    value_decimal: t.value.to_string(),
                })
                .collect();
            format!(
                "{}\n",
                json_line(&DecompositionLine {
                    class: report.class.to_string(),
                    n: report.n,
                    argument: report.argument(),
                    leading,
                    chi5: report.chi5,
                    remainder_decimal: report.remainder.to_string(),
                    remainder_bound_decimal: report.remainder_bound.to_string(),
                    total_decimal: report.total.to_string(),
                })
            )
        }
        Format::Csv => format!(
            "{},{},{},{},\"{}\",\"{}\",\"{}\"\n",
            report.class,
            report.n,
            report.argument(),
            report.chi5,
            report.remainder,
            report.remainder_bound,
            report.total
        ),
        Format::Plain => {
            let mut out = format!(
                "class {} n={}: g({}) = {}\n",
                report.class,
                report.n,
                report.argument(),
                report.total
            );
            for t in &report.leading_terms {
                if t.indicator_applied {
                    let _ = writeln!(
                        out,
                        "  d={} (chi5={}): {}",
                        t.divisor, report.chi5, t.value
                    );
                } else {
                    let _ = writeln!(out, "  d={}: {}", t.divisor, t.value);
                }
            }
            let _ = writeln!(
                out,
                "  remainder = {} (bound {})",
                report.remainder, report.remainder_bound
            );
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{g_decompose, FCache, GClass};
    use crate::inequalities::{scan_chain, scan_delta, scan_reduced, ReducedInequality};

    #[test]
    fn delta_rows_in_each_format() {
        let c = FCache::new(16).unwrap();
        let scan = scan_delta(2, 3, 5, &c).unwrap();
        let json = render_delta_scan(&scan, Format::Json, false);
        assert!(json
            .lines()
            .next()
            .unwrap()
            .starts_with(r#"{"n":3,"k":2,"sign":"NEG","delta_decimal":"-1"}"#));
        assert!(json.contains(r#""claim_positive_from":3"#));
        assert!(json.contains(r#""claim_violations":[3]"#));

        let csv = render_delta_scan(&scan, Format::Csv, false);
        assert_eq!(csv.lines().next().unwrap(), "3,2,NEG,\"-1\"");

        let plain = render_delta_scan(&scan, Format::Plain, false);
        assert!(plain.contains("CONFLICT"));
    }

    #[test]
    fn summary_only_drops_rows() {
        let c = FCache::new(64).unwrap();
        let scan = scan_delta(2, 6, 50, &c).unwrap();
        let full = render_delta_scan(&scan, Format::Csv, false);
        assert_eq!(full.lines().count(), 45 + 2); // 45 rows + summary + claim
        let condensed = render_delta_scan(&scan, Format::Csv, true);
        assert_eq!(condensed.lines().count(), 2);
        assert!(condensed.starts_with('#'));
    }

    #[test]
    fn chain_rows_match_field_list() {
        let c = FCache::new(16).unwrap();
        let scan = scan_chain(1, &c).unwrap();
        let json = render_chain_scan(&scan, Format::Json, false);
        let first = json.lines().next().unwrap();
        assert_eq!(
            first,
            r#"{"n":1,"g_values_decimal":["1","4","10","16","40"],"cmp1":true,"cmp2":true,"cmp3":true,"holds":true}"#
        );
        assert!(json.contains(r#""empirical_n0":1"#));

        let csv = render_chain_scan(&scan, Format::Csv, false);
        assert_eq!(
            csv.lines().next().unwrap(),
            "1,\"1\",\"4\",\"10\",\"16\",\"40\",true,true,true,true"
        );
    }

    #[test]
    fn reduced_rows_and_summary() {
        let c = FCache::new(16).unwrap();
        let scan = scan_reduced(ReducedInequality::R1, 2, 3, &c).unwrap();
        let json = render_reduced_scan(&scan, Format::Json, false);
        assert_eq!(json.lines().next().unwrap(), r#"{"n":2,"holds":true}"#);
        assert!(json.contains(r#""which":"R1""#));
    }

    #[test]
    fn value_and_bounds_render() {
        let v = BigInt::from(983);
        assert_eq!(render_value("f", 10, &v, Format::Plain), "983\n");
        assert_eq!(
            render_value("f", 10, &v, Format::Json),
            "{\"op\":\"f\",\"n\":10,\"value_decimal\":\"983\"}\n"
        );
        assert_eq!(render_value("f", 10, &v, Format::Csv), "f,10,\"983\"\n");

        let out = render_bounds(
            10,
            &BigInt::from(912),
            &BigInt::from(983),
            &BigInt::from(992),
            Format::Plain,
        );
        assert_eq!(out, "n=10 f_lower=912 f=983 f_upper=992 sandwich=true\n");
    }

    #[test]
    fn decomposition_renders() {
        let c = FCache::new(8).unwrap();
        let report = g_decompose(2, GClass::SixNMinus2, &c).unwrap();
        let json = render_decomposition(&report, Format::Json);
        assert!(json.contains(r#""class":"6n-2""#));
        assert!(json.contains(r#""total_decimal":"40""#));
        let plain = render_decomposition(&report, Format::Plain);
        assert!(plain.starts_with("class 6n-2 n=2: g(10) = 40"));
    }
}
