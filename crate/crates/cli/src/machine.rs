//! Machine-readable output: JSON documents with a format version. Every
//! exact value travels as a `numerator/denominator` string in lowest terms,
//! so re-parsing reproduces the internal rationals bit for bit. Standard
//! errors are the only floating-point fields.

use serde::{Deserialize, Serialize};

use patrace_core::Rational;

pub const FORMAT_VERSION: u32 = 1;

/// Renders a rational as `numerator/denominator`, always with the
/// denominator, so the form is uniform.
pub fn exact(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses either `n/d` or a bare integer back into a rational.
pub fn parse_exact(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>()
        .map_err(|e| format!("bad rational '{s}': {e}"))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LetterProbability {
    pub letter: String,
    pub probability: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AnalyzeDoc {
    pub format_version: u32,
    pub command: String,
    pub alphabet: Vec<String>,
    pub probabilities: Vec<LetterProbability>,
    pub patterns: Vec<String>,
    pub win_probabilities: Vec<String>,
    pub expected_wait: String,
    pub conditional_waits: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SeriesRow {
    pub k: usize,
    pub p: Vec<String>,
    pub q: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub format_version: u32,
    pub command: String,
    pub patterns: Vec<String>,
    pub n: usize,
    pub rows: Vec<SeriesRow>,
    /// Cumulative occurrence probability per pattern over the expanded rows.
    pub cumulative: Vec<String>,
    /// Survival probability after the last expanded row.
    pub residual: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyCheck {
    pub name: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub format_version: u32,
    pub command: String,
    pub n: usize,
    pub checks: Vec<VerifyCheck>,
    pub all_passed: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SimulateDoc {
    pub format_version: u32,
    pub command: String,
    pub trials: u64,
    pub seed: u64,
    pub max_steps: u64,
    pub truncated: u64,
    pub patterns: Vec<String>,
    pub exact_wins: Vec<String>,
    /// Win-count ratios over completed trials, exact.
    pub empirical_wins: Vec<String>,
    pub win_std_errors: Vec<f64>,
    pub exact_expected_wait: String,
    /// Summed waits over completed trials, exact.
    pub empirical_mean_wait: String,
    pub mean_wait_std_error: f64,
    pub exact_conditional_waits: Vec<String>,
    /// Per-pattern mean waits; absent for patterns that never won.
    pub empirical_conditional_waits: Vec<Option<String>>,
    pub conditional_wait_std_errors: Vec<Option<f64>>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}
