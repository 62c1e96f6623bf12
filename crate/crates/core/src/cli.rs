//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 usage or validation
//! error, 3 verification mismatch, 4 enumeration cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::eco::{
    eco_matrix, shift_diagonal, statistic_table, BuiltinRule, EcoError, SuccessionRule,
};
use crate::exact::Exact;
use crate::formulas::{
    closed_form_row, closed_form_statistic, closed_form_total, column_gf, FormulaError,
};
use crate::oeis::{OeisClient, OeisConfig, OeisError};
use crate::oracle::{Oracle, OracleError, Statistic, DEFAULT_CAP};
use crate::pattern::{PatternError, PatternSet};
use crate::report::{
    render_count, render_distribution, render_matrix, render_series, CountReport,
    DistributionReport, Format, MatrixReport, SeriesReport,
};
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "vinculum",
    version,
    about = "Refined enumeration of permutations avoiding dashed patterns"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Largest length the brute-force enumeration accepts.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Worker threads for the enumeration (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

impl OracleArgs {
    fn oracle(&self) -> Oracle {
        Oracle::new().with_cap(self.cap).with_jobs(self.jobs)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count the avoiders of a given length.
    Count {
        /// Comma-separated patterns, e.g. `1-23,21-3`.
        #[arg(long)]
        patterns: PatternSet,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "text")]
        format: Format,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Avoiders refined by first or last entry, rows 1..=n-max.
    Distribution {
        #[arg(long)]
        patterns: PatternSet,
        #[arg(long)]
        stat: Statistic,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "text")]
        format: Format,
        /// Also compare against the closed forms and the generating tree.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// ECO matrix of a built-in succession rule.
    Matrix {
        #[arg(long)]
        rule: BuiltinRule,
        #[arg(long)]
        depth: usize,
        /// Move the diagonal into the first column (OMEGA_BELL only).
        #[arg(long)]
        shifted: bool,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Coefficients of the column generating function C_k of the Motzkin pair.
    Gf {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Run the cross-validation suites.
    Verify {
        /// One of wilf, refined, eco, pairs, gf; all when omitted.
        #[arg(long)]
        suite: Option<Suite>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Look a term list up in the OEIS.
    Oeis {
        /// Comma-separated terms.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        terms: Vec<BigUint>,
        /// Answer from the cache and built-in table only.
        #[arg(long)]
        offline: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Eco(#[from] EcoError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Oeis(#[from] OeisError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Oracle(OracleError::ResourceCap { .. }) => EXIT_CAP,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Pattern(_)
            | CliError::Eco(_)
            | CliError::Formula(_)
            | CliError::Usage(_)
            | CliError::Oeis(OeisError::TooFewTerms(_)) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Count {
            patterns,
            n,
            format,
            oracle,
        } => {
            let count = oracle.oracle().count_avoiders(n, &patterns)?;
            let closed = closed_form_total(&patterns, n);
            let report = CountReport {
                patterns: patterns.to_string(),
                n,
                oracle: Exact(count.clone()),
                closed_form: closed.clone().map(Exact),
            };
            out.write_all(render_count(&report, format).as_bytes())?;
            if let Some(c) = closed.filter(|c| *c != count) {
                return Err(CliError::Mismatch(format!(
                    "oracle count {count} differs from closed form {c}"
                )));
            }
        }
        Command::Distribution {
            patterns,
            stat,
            n_max,
            format,
            check,
            oracle,
        } => {
            let d = oracle
                .oracle()
                .refined_distribution(n_max, &patterns, stat)?;
            if check {
                check_distribution(&patterns, stat, &d, err)?;
            }
            let report = DistributionReport {
                patterns: patterns.to_string(),
                distribution: d,
            };
            out.write_all(render_distribution(&report, format).as_bytes())?;
        }
        Command::Matrix {
            rule,
            depth,
            shifted,
            format,
        } => {
            if shifted && rule != BuiltinRule::OmegaBell {
                return Err(CliError::Usage(format!(
                    "--shifted applies to OMEGA_BELL only, not {rule}"
                )));
            }
            let mut m = eco_matrix(&SuccessionRule::builtin(rule), depth);
            if shifted {
                m = shift_diagonal(&m)?;
            }
            let report = MatrixReport {
                rule: rule.to_string(),
                shifted,
                matrix: m,
            };
            out.write_all(render_matrix(&report, format).as_bytes())?;
        }
        Command::Gf { k, order, format } => {
            let series = column_gf(k, order)?;
            let report = SeriesReport { k, order, series };
            out.write_all(render_series(&report, format).as_bytes())?;
        }
        Command::Verify { suite, oracle } => {
            let oracle = oracle.oracle();
            let suites = suite.map_or_else(|| Suite::ALL.to_vec(), |s| vec![s]);
            let mut failed = Vec::new();
            for s in suites {
                let report = verify::run(s, &oracle)?;
                writeln!(out, "{report}")?;
                for f in &report.failures {
                    writeln!(out, "  {f}")?;
                }
                if !report.passed() {
                    failed.push(s.to_string());
                }
            }
            if !failed.is_empty() {
                return Err(CliError::Mismatch(format!(
                    "failed suites: {}",
                    failed.join(", ")
                )));
            }
        }
        Command::Oeis {
            terms,
            offline,
            cache_dir,
        } => {
            let mut config = OeisConfig::from_env();
            config.offline |= offline;
            if cache_dir.is_some() {
                config.cache_dir = cache_dir;
            }
            let lookup = OeisClient::new(config).lookup(&terms)?;
            if lookup.degraded {
                writeln!(
                    err,
                    "warning: network unavailable, answered from the built-in table"
                )?;
            }
            for hit in &lookup.hits {
                writeln!(out, "{}\t{}", hit.id, hit.name)?;
            }
        }
    }
    Ok(())
}

fn check_distribution(
    patterns: &PatternSet,
    stat: Statistic,
    d: &crate::oracle::RefinedDistribution,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let Some(expected_stat) = closed_form_statistic(patterns) else {
        return Err(CliError::Usage(format!(
            "--check: no closed form is known for {patterns}"
        )));
    };
    if expected_stat != stat {
        return Err(CliError::Usage(format!(
            "--check: closed forms for {patterns} refine by the {expected_stat} entry"
        )));
    }
    let rule = crate::catalog::classify(patterns)
        .expect("closed form implies a case")
        .family
        .rule();
    let engine = statistic_table(rule, d.n_max(), patterns)?;
    let mut bad = Vec::new();
    for (n, row) in d.rows() {
        let formula = closed_form_row(patterns, n)?;
        if row != formula.as_slice() {
            bad.push(format!("n={n}: closed form disagrees"));
        }
        if Some(row) != engine.row(n) {
            bad.push(format!("n={n}: generating tree disagrees"));
        }
    }
    if bad.is_empty() {
        writeln!(err, "check: oracle, closed form and generating tree agree")?;
        Ok(())
    } else {
        Err(CliError::Mismatch(bad.join("; ")))
    }
}
