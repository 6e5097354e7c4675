//! Subcommand dispatch and rendering. Tables are plain aligned text;
//! machine output is the JSON layer from [`crate::machine`]. All decimal
//! columns are display-only renderings of exact values.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;

use patrace_core::exactmath::Rational;
use patrace_core::oracle::{dp_distribution, simulate, SimConfig, SimReport};
use patrace_core::solver;
use patrace_core::{li, PatternSystem};

use crate::decimal::{decimal, decimal_f64};
use crate::machine::{self, FORMAT_VERSION};
use crate::problem::ProblemFile;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "patrace",
    version,
    about = "Exact win probabilities and waiting times for pattern races"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Win probabilities with expected and conditional waiting times
    Analyze {
        /// Problem file: alphabet, letter probabilities, patterns
        file: PathBuf,
        /// Output style
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        /// Significant digits in decimal columns
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=50))]
        precision: u8,
    },
    /// Exact per-step occurrence probabilities and survival function
    Series {
        file: PathBuf,
        /// Largest step to expand
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u16).range(1..))]
        n: u16,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Cross-check the identities the solver relies on
    Verify {
        file: PathBuf,
        /// Horizon for the series vs dynamic-program comparison
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u16).range(1..))]
        n: u16,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Seeded Monte Carlo run compared against the exact answers
    Simulate {
        file: PathBuf,
        /// Number of independent trials
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Seed of the deterministic generator
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=50))]
        precision: u8,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Machine,
}

/// What a successful command produced: text for stdout plus the number of
/// failed verification checks, which drives the exit code.
pub struct RunOutcome {
    pub stdout: String,
    pub failed_checks: usize,
}

impl RunOutcome {
    fn text(stdout: String) -> RunOutcome {
        RunOutcome {
            stdout,
            failed_checks: 0,
        }
    }
}

pub fn run(cli: &Cli) -> Result<RunOutcome, CliError> {
    match &cli.command {
        Command::Analyze {
            file,
            format,
            precision,
        } => {
            let sys = ProblemFile::load(file)?.build()?;
            cmd_analyze(&sys, *format, usize::from(*precision))
        }
        Command::Series { file, n, format } => {
            let sys = ProblemFile::load(file)?.build()?;
            cmd_series(&sys, usize::from(*n), *format)
        }
        Command::Verify { file, n, format } => {
            let sys = ProblemFile::load(file)?.build()?;
            cmd_verify(&sys, usize::from(*n), *format)
        }
        Command::Simulate {
            file,
            trials,
            seed,
            format,
            precision,
        } => {
            let sys = ProblemFile::load(file)?.build()?;
            cmd_simulate(&sys, *trials, *seed, *format, usize::from(*precision))
        }
    }
}

fn labels(sys: &PatternSystem) -> Vec<String> {
    sys.patterns().iter().map(|p| p.label().to_string()).collect()
}

/// Pads every column to its widest cell; the first row is the header.
fn render_table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn cmd_analyze(
    sys: &PatternSystem,
    format: OutputFormat,
    precision: usize,
) -> Result<RunOutcome, CliError> {
    let report = patrace_core::analyze(sys)?;
    let names = labels(sys);
    match format {
        OutputFormat::Machine => {
            let dist = sys.distribution();
            let doc = machine::AnalyzeDoc {
                format_version: FORMAT_VERSION,
                command: "analyze".into(),
                alphabet: dist.alphabet().letters().to_vec(),
                probabilities: dist
                    .alphabet()
                    .letters()
                    .iter()
                    .enumerate()
                    .map(|(i, letter)| machine::LetterProbability {
                        letter: letter.clone(),
                        probability: machine::exact(dist.prob(i)),
                    })
                    .collect(),
                patterns: names,
                win_probabilities: report.win_probs().iter().map(machine::exact).collect(),
                expected_wait: machine::exact(report.expected_wait()),
                conditional_waits: report
                    .conditional_waits()
                    .iter()
                    .map(machine::exact)
                    .collect(),
            };
            Ok(RunOutcome::text(machine::to_json(&doc)))
        }
        OutputFormat::Table => {
            let mut rows = vec![vec![
                "pattern".to_string(),
                "win".to_string(),
                "~win".to_string(),
                "wait if it wins".to_string(),
                "~wait".to_string(),
            ]];
            for (i, name) in names.iter().enumerate() {
                let win = &report.win_probs()[i];
                let wait = &report.conditional_waits()[i];
                rows.push(vec![
                    name.clone(),
                    win.to_string(),
                    decimal(win, precision),
                    wait.to_string(),
                    decimal(wait, precision),
                ]);
            }
            let mut out = render_table(&rows);
            out.push_str(&format!(
                "\nexpected wait: {} ~ {}\n",
                report.expected_wait(),
                decimal(report.expected_wait(), precision)
            ));
            Ok(RunOutcome::text(out))
        }
    }
}

/// Series of every occurrence distribution plus the survival function,
/// rows `k = 1..=n`, with a final cumulative row.
pub fn cmd_series(
    sys: &PatternSystem,
    n: usize,
    format: OutputFormat,
) -> Result<RunOutcome, CliError> {
    let bundle = solver::generating_functions(sys);
    let p_series: Vec<Vec<Rational>> = bundle
        .gfs()
        .iter()
        .map(|gf| {
            gf.series(n + 1)
                .expect("validated systems have a unit constant denominator term")
        })
        .collect();
    let q_series = bundle
        .tail_gf()
        .series(n + 1)
        .expect("validated systems have a unit constant denominator term");
    let cumulative: Vec<Rational> = p_series
        .iter()
        .map(|s| s.iter().skip(1).sum::<Rational>())
        .collect();
    let names = labels(sys);

    match format {
        OutputFormat::Machine => {
            let doc = machine::SeriesDoc {
                format_version: FORMAT_VERSION,
                command: "series".into(),
                patterns: names,
                n,
                rows: (1..=n)
                    .map(|k| machine::SeriesRow {
                        k,
                        p: p_series.iter().map(|s| machine::exact(&s[k])).collect(),
                        q: machine::exact(&q_series[k]),
                    })
                    .collect(),
                cumulative: cumulative.iter().map(machine::exact).collect(),
                residual: machine::exact(&q_series[n]),
            };
            Ok(RunOutcome::text(machine::to_json(&doc)))
        }
        OutputFormat::Table => {
            let mut header = vec!["k".to_string()];
            header.extend(names.iter().map(|l| format!("p[{l}]")));
            header.push("q".to_string());
            let mut rows = vec![header];
            for k in 1..=n {
                let mut row = vec![k.to_string()];
                row.extend(p_series.iter().map(|s| s[k].to_string()));
                row.push(q_series[k].to_string());
                rows.push(row);
            }
            let mut sum_row = vec!["sum".to_string()];
            sum_row.extend(cumulative.iter().map(Rational::to_string));
            sum_row.push(q_series[n].to_string());
            rows.push(sum_row);
            let mut out = render_table(&rows);
            out.push_str("\nthe sum row holds cumulative occurrence probabilities; its q is the residual\n");
            Ok(RunOutcome::text(out))
        }
    }
}

struct Check {
    name: &'static str,
    status: &'static str,
    detail: String,
}

impl Check {
    fn pass(name: &'static str) -> Check {
        Check {
            name,
            status: "PASS",
            detail: String::new(),
        }
    }

    fn fail(name: &'static str, detail: String) -> Check {
        Check {
            name,
            status: "FAIL",
            detail,
        }
    }

    fn skip(name: &'static str, detail: String) -> Check {
        Check {
            name,
            status: "SKIP",
            detail,
        }
    }

    fn graded(name: &'static str, ok: bool, detail: &str) -> Check {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, detail.to_string())
        }
    }
}

/// Runs every cross-check: cleared-denominator residuals of the linear
/// system, the star-number identity and route agreement, series against the
/// exact dynamic program, the law of total expectation, and the
/// identity-matrix shortcut where it applies.
pub fn cmd_verify(
    sys: &PatternSystem,
    n: usize,
    format: OutputFormat,
) -> Result<RunOutcome, CliError> {
    let report = patrace_core::analyze(sys)?;
    let mut checks = Vec::new();

    let (tail_residual, row_residuals) = solver::system_residuals(sys);
    checks.push(Check::graded(
        "denominator assembly",
        tail_residual.is_zero(),
        "stored denominator differs from its defining sum",
    ));
    match row_residuals.iter().position(|r| !r.is_zero()) {
        None => checks.push(Check::pass("race equations")),
        Some(i) => checks.push(Check::fail(
            "race equations",
            format!("residual of equation {i} is nonzero"),
        )),
    }

    let star_residuals = li::verify_li_identity(sys);
    match star_residuals.iter().position(|r| !r.is_zero()) {
        None => checks.push(Check::pass("star-number identity")),
        Some(i) => checks.push(Check::fail(
            "star-number identity",
            format!("row {i} residual is nonzero"),
        )),
    }

    let (star_wins, star_wait) = li::star_analysis(sys)?;
    checks.push(Check::graded(
        "star route agreement",
        star_wins == report.win_probs() && &star_wait == report.expected_wait(),
        "star-number route disagrees with the determinant route",
    ));

    let table = dp_distribution(sys, n);
    let mut series_ok = true;
    'outer: for (i, gf) in report.bundle().gfs().iter().enumerate() {
        let series = gf
            .series(n + 1)
            .expect("validated systems have a unit constant denominator term");
        for (k, coeff) in series.iter().enumerate() {
            if coeff != table.p(k, i) {
                series_ok = false;
                break 'outer;
            }
        }
    }
    if series_ok {
        let q_series = report
            .bundle()
            .tail_gf()
            .series(n + 1)
            .expect("validated systems have a unit constant denominator term");
        series_ok = q_series
            .iter()
            .enumerate()
            .all(|(k, coeff)| coeff == table.q(k));
    }
    checks.push(Check::graded(
        "series matches dynamic program",
        series_ok,
        "a series coefficient differs from the dynamic program",
    ));

    let total: Rational = report
        .win_probs()
        .iter()
        .zip(report.conditional_waits())
        .map(|(w, c)| w * c)
        .sum();
    checks.push(Check::graded(
        "law of total expectation",
        &total == report.expected_wait(),
        "win-weighted conditional waits do not sum to the expected wait",
    ));

    match li::identity_b_shortcut(sys) {
        None => checks.push(Check::skip(
            "identity-matrix shortcut",
            "correlation matrix is not the identity".to_string(),
        )),
        Some(shortcut) => checks.push(Check::graded(
            "identity-matrix shortcut",
            shortcut == report.conditional_waits(),
            "shortcut conditional waits disagree with the general route",
        )),
    }

    let failed = checks.iter().filter(|c| c.status == "FAIL").count();
    let passed = checks.iter().filter(|c| c.status == "PASS").count();
    let skipped = checks.iter().filter(|c| c.status == "SKIP").count();

    let stdout = match format {
        OutputFormat::Machine => {
            let doc = machine::VerifyDoc {
                format_version: FORMAT_VERSION,
                command: "verify".into(),
                n,
                checks: checks
                    .iter()
                    .map(|c| machine::VerifyCheck {
                        name: c.name.to_string(),
                        status: c.status.to_string(),
                        detail: c.detail.clone(),
                    })
                    .collect(),
                all_passed: failed == 0,
            };
            machine::to_json(&doc)
        }
        OutputFormat::Table => {
            let mut out = format!("verify: {} patterns, horizon n = {n}\n\n", sys.len());
            for c in &checks {
                if c.detail.is_empty() {
                    out.push_str(&format!("{}  {}\n", c.status, c.name));
                } else {
                    out.push_str(&format!("{}  {}: {}\n", c.status, c.name, c.detail));
                }
            }
            out.push_str(&format!(
                "\n{} checks: {passed} passed, {failed} failed, {skipped} skipped\n",
                checks.len()
            ));
            out
        }
    };
    Ok(RunOutcome {
        stdout,
        failed_checks: failed,
    })
}

fn count_ratio(numer: u64, denom: u64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

fn win_std_error(report: &SimReport, i: usize) -> f64 {
    let p = report.win_fraction(i);
    (p * (1.0 - p) / report.completed() as f64).sqrt()
}

fn conditional_wait_std_error(report: &SimReport, i: usize) -> Option<f64> {
    let c = report.win_counts()[i];
    if c < 2 {
        return None;
    }
    let n = c as f64;
    let sum = report.wait_sums()[i] as f64;
    let sq_sum = report.wait_sq_sums()[i] as f64;
    let variance = (sq_sum - sum * sum / n) / (n - 1.0);
    Some((variance.max(0.0) / n).sqrt())
}

/// Runs the seeded simulation with a step budget of a hundred times the
/// exact expected wait, then lays empirical and exact values side by side.
pub fn cmd_simulate(
    sys: &PatternSystem,
    trials: u64,
    seed: u64,
    format: OutputFormat,
    precision: usize,
) -> Result<RunOutcome, CliError> {
    let report = patrace_core::analyze(sys)?;
    let max_steps = SimConfig::max_steps_for(report.expected_wait());
    let cfg = SimConfig::new(trials, seed).with_max_steps(max_steps);
    let sim = simulate(sys, cfg)?;
    let names = labels(sys);

    let empirical_wins: Vec<Rational> = (0..sys.len())
        .map(|i| count_ratio(sim.win_counts()[i], sim.completed()))
        .collect();
    let mean_wait = count_ratio_u128(sim.wait_sums().iter().sum(), sim.completed());
    let empirical_conds: Vec<Option<Rational>> = (0..sys.len())
        .map(|i| {
            let c = sim.win_counts()[i];
            (c > 0).then(|| count_ratio_u128(sim.wait_sums()[i], c))
        })
        .collect();

    match format {
        OutputFormat::Machine => {
            let doc = machine::SimulateDoc {
                format_version: FORMAT_VERSION,
                command: "simulate".into(),
                trials,
                seed,
                max_steps,
                truncated: sim.truncated(),
                patterns: names,
                exact_wins: report.win_probs().iter().map(machine::exact).collect(),
                empirical_wins: empirical_wins.iter().map(machine::exact).collect(),
                win_std_errors: (0..sys.len()).map(|i| win_std_error(&sim, i)).collect(),
                exact_expected_wait: machine::exact(report.expected_wait()),
                empirical_mean_wait: machine::exact(&mean_wait),
                mean_wait_std_error: sim.mean_wait_std_error(),
                exact_conditional_waits: report
                    .conditional_waits()
                    .iter()
                    .map(machine::exact)
                    .collect(),
                empirical_conditional_waits: empirical_conds
                    .iter()
                    .map(|c| c.as_ref().map(machine::exact))
                    .collect(),
                conditional_wait_std_errors: (0..sys.len())
                    .map(|i| conditional_wait_std_error(&sim, i))
                    .collect(),
            };
            Ok(RunOutcome::text(machine::to_json(&doc)))
        }
        OutputFormat::Table => {
            let mut out = format!(
                "trials {trials}, seed {seed}, step budget {max_steps}, truncated {}\n\n",
                sim.truncated()
            );
            let mut rows = vec![vec![
                "pattern".to_string(),
                "win".to_string(),
                "win (mc)".to_string(),
                "se".to_string(),
                "wait if it wins".to_string(),
                "wait (mc)".to_string(),
                "se".to_string(),
            ]];
            for (i, name) in names.iter().enumerate() {
                rows.push(vec![
                    name.clone(),
                    report.win_probs()[i].to_string(),
                    decimal(&empirical_wins[i], precision),
                    decimal_f64(win_std_error(&sim, i), precision),
                    report.conditional_waits()[i].to_string(),
                    empirical_conds[i]
                        .as_ref()
                        .map_or_else(|| "-".to_string(), |c| decimal(c, precision)),
                    conditional_wait_std_error(&sim, i)
                        .map_or_else(|| "-".to_string(), |se| decimal_f64(se, precision)),
                ]);
            }
            out.push_str(&render_table(&rows));
            out.push_str(&format!(
                "\nexpected wait: exact {} ~ {}, mc {}, se {}\n",
                report.expected_wait(),
                decimal(report.expected_wait(), precision),
                decimal(&mean_wait, precision),
                decimal_f64(sim.mean_wait_std_error(), precision)
            ));
            Ok(RunOutcome::text(out))
        }
    }
}

fn count_ratio_u128(numer: u128, denom: u64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}
