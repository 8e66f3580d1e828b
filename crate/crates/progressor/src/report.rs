//! Run reports and benchmark rows shared by the command-line surface: a
//! schema-versioned JSON record of what a run decided and measured, the
//! benchmark CSV row, and the least-squares fits used to sanity-check
//! measured growth curves.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bat::Bat;
use crate::classify::{lifted_init, ActionClass, Verdict};
use crate::formula::Formula;
use crate::oracle::Outcome;
use crate::progress::{FragmentOut, ProgressionResult, SizeStats};

/// Bumped whenever a report field is added, removed, or renamed.
pub const SCHEMA_VERSION: u32 = 1;

/// Short uppercase tag for the best class a verdict grants: `"LE"`, `"NR"`,
/// `"AC"`, or `"None"` when no pipeline applies.
pub fn class_tag(verdict: &Verdict) -> &'static str {
    match verdict.cheapest() {
        Some(ActionClass::LocalEffect) => "LE",
        Some(ActionClass::Normal) => "NR",
        Some(ActionClass::Acyclic) => "AC",
        None => "None",
    }
}

/// Lowercase family tag used in benchmark rows and on the command line.
pub fn class_short(class: ActionClass) -> &'static str {
    match class {
        ActionClass::LocalEffect => "le",
        ActionClass::Normal => "nr",
        ActionClass::Acyclic => "ac",
    }
}

/// Fragment-membership tag of a finished run.
pub fn fragment_tag(out: FragmentOut) -> &'static str {
    match out {
        FragmentOut::Fo2 => "FO2",
        FragmentOut::Utc => "UTC",
        FragmentOut::Both => "Both",
        FragmentOut::Neither => "Neither",
    }
}

/// Fragment membership of the instantiated input, with the offending
/// sentence when a check fails.
#[derive(Debug, Clone, Serialize)]
pub struct FragmentFlags {
    pub fo2: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fo2_witness: Option<String>,
    pub utc: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub utc_witness: Option<String>,
}

impl FragmentFlags {
    pub fn new(fo2: Result<(), String>, utc: Result<(), String>) -> FragmentFlags {
        FragmentFlags {
            fo2: fo2.is_ok(),
            fo2_witness: fo2.err(),
            utc: utc.is_ok(),
            utc_witness: utc.err(),
        }
    }
}

/// What the finite-model check concluded.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub n_max: usize,
    pub una: bool,
    /// `"pass"`, `"probabilistic-pass"` (sampled, not exhaustive), or
    /// `"fail"`.
    pub verdict: &'static str,
    pub structures: u128,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Random queries whose verdict matched across the progression.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub query_checks: Option<usize>,
}

impl OracleReport {
    pub fn new(n_max: usize, una: bool, outcome: &Outcome) -> OracleReport {
        match outcome {
            Outcome::Holds {
                structures,
                exhaustive,
            } => OracleReport {
                n_max,
                una,
                verdict: if *exhaustive {
                    "pass"
                } else {
                    "probabilistic-pass"
                },
                structures: *structures,
                exhaustive: *exhaustive,
                witness: None,
                query_checks: None,
            },
            Outcome::Fails(w) => OracleReport {
                n_max,
                una,
                verdict: "fail",
                structures: 0,
                exhaustive: false,
                witness: Some(format!("n={}: {} — {}", w.n, w.reason, w.structure)),
                query_checks: None,
            },
        }
    }
}

/// One command's JSON report. Field order is declaration order, so emitted
/// documents are stable across runs; optional sections are omitted rather
/// than set to null.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub file: String,
    pub action: String,
    pub bat_class: &'static str,
    pub classification: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fragment_in: Option<FragmentFlags>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<SizeStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fragment_out: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dot: Option<String>,
    /// The progressed theory text, embedded when no output file was asked
    /// for in JSON mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theory: Option<String>,
    pub timings_ms: BTreeMap<&'static str, u64>,
}

impl Report {
    pub fn new(command: &'static str, file: &str, action: &str, verdict: &Verdict) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            file: file.to_owned(),
            action: action.to_owned(),
            bat_class: class_tag(verdict),
            classification: verdict.clone(),
            fragment_in: None,
            method: None,
            stats: None,
            fragment_out: None,
            bound_holds: None,
            output_file: None,
            oracle: None,
            dot: None,
            theory: None,
            timings_ms: BTreeMap::new(),
        }
    }

    /// Folds a finished progression into the report: pipeline, sizes,
    /// fragment closure, and the measured-vs-ceiling verdict.
    pub fn with_progression(mut self, result: &ProgressionResult) -> Report {
        self.method = Some(result.method.to_string());
        self.bound_holds = Some(bounds_hold(&result.stats));
        self.fragment_out = Some(fragment_tag(result.fragment_out));
        self.stats = Some(result.stats.clone());
        self
    }

    pub fn timing(&mut self, label: &'static str, ms: u64) {
        self.timings_ms.insert(label, ms);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Both asserted ceilings, re-checked from the measurements: the local
/// stage's `2^c` bound and (for acyclic runs) the aggregate `2^{d+1}` bound.
pub fn bounds_hold(stats: &SizeStats) -> bool {
    stats.output_size_raw <= stats.local_bound && stats.ac_sum <= stats.ac_bound
}

// ---------------------------------------------------------------------
// Benchmark rows
// ---------------------------------------------------------------------

pub const CSV_HEADER: &str = "family,seed,c,d,n,m,k,w,measured,bound";

/// One benchmark measurement, in the symbols of the size bounds: `c` ground
/// atoms forgotten, `d` dependency depth, `n` initial-KB size, `m` largest
/// instantiated SSA, `k` its non-local restriction, `w` the widest
/// consolidated condition. Local-effect and normal rows measure the raw
/// local-stage output against the `2^c` ceiling; acyclic rows measure the
/// aggregate condition growth against the `2^{d+1}` ceiling.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub family: &'static str,
    pub seed: u64,
    pub c: usize,
    pub d: usize,
    pub n: u64,
    pub m: u64,
    pub k: u64,
    pub w: u64,
    pub measured: u64,
    pub bound: u64,
}

impl BenchRow {
    pub fn new(family: ActionClass, seed: u64, bat: &Bat, result: &ProgressionResult) -> BenchRow {
        let stats = &result.stats;
        let (measured, bound) = match family {
            ActionClass::Acyclic => (stats.ac_sum, stats.ac_bound),
            _ => (stats.output_size_raw, stats.local_bound),
        };
        BenchRow {
            family: class_short(family),
            seed,
            c: stats.omega,
            d: stats.depth,
            n: Formula::theory_size(&lifted_init(bat)),
            m: stats.max_instance.max(stats.max_nle_instance),
            k: stats.max_nle_instance,
            w: stats.ac_w,
            measured,
            bound,
        }
    }

    pub fn holds(&self) -> bool {
        self.measured <= self.bound
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.family,
            self.seed,
            self.c,
            self.d,
            self.n,
            self.m,
            self.k,
            self.w,
            self.measured,
            self.bound
        )
    }
}

/// Header plus one line per row, trailing newline included.
pub fn csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------
// Growth fits
// ---------------------------------------------------------------------

/// Least-squares slope of `ln y` on `ln x`: the exponent `p` in `y ≈ C·xᵖ`.
/// Points with a nonpositive coordinate are skipped; `NaN` when fewer than
/// two distinct `x` survive.
pub fn fit_power(points: &[(f64, f64)]) -> f64 {
    slope(
        points
            .iter()
            .filter(|(x, y)| *x > 0.0 && *y > 0.0)
            .map(|(x, y)| (x.ln(), y.ln())),
    )
}

/// Least-squares slope of `log₂ y` on `x`: the doubling rate per unit step.
/// Points with nonpositive `y` are skipped; `NaN` when fewer than two
/// distinct `x` survive.
pub fn fit_log2_slope(points: &[(f64, f64)]) -> f64 {
    slope(
        points
            .iter()
            .filter(|(_, y)| *y > 0.0)
            .map(|(x, y)| (*x, y.log2())),
    )
}

fn slope(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let pts: Vec<(f64, f64)> = points.collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_fit_recovers_a_square_law() {
        let pts: Vec<(f64, f64)> = (1..=8).map(|i| (i as f64, (3 * i * i) as f64)).collect();
        assert!((fit_power(&pts) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn log2_fit_recovers_a_doubling_curve() {
        let pts: Vec<(f64, f64)> = (0..=6).map(|d| (d as f64, (5 << d) as f64)).collect();
        assert!((fit_log2_slope(&pts) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_fits_are_nan_not_panics() {
        assert!(fit_power(&[]).is_nan());
        assert!(fit_power(&[(2.0, 4.0)]).is_nan());
        assert!(fit_log2_slope(&[(1.0, 2.0), (1.0, 4.0)]).is_nan());
    }

    #[test]
    fn csv_lines_match_the_header_arity() {
        let row = BenchRow {
            family: "le",
            seed: 7,
            c: 2,
            d: 0,
            n: 10,
            m: 4,
            k: 0,
            w: 0,
            measured: 40,
            bound: 200,
        };
        assert_eq!(
            row.csv_line().split(',').count(),
            CSV_HEADER.split(',').count()
        );
        assert!(row.holds());
        let text = csv(&[row]);
        assert!(text.starts_with("family,seed,"));
        assert!(text.ends_with("40,200\n"));
    }
}
