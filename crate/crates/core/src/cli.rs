//! `banach` command line front end.
//!
//! Data records go to stdout (or `--out`) as JSON lines or CSV. Timing and
//! status lines go to stderr so that stdout is identical across runs.
//!
//! Exit codes: 0 when every check in the command passed, 1 when a check
//! failed, 2 for invalid arguments.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::congruence::{self, require_prime, Method};
use crate::error::Error;
use crate::exactmath::Rational;
use crate::matchbox;
use crate::modarith::{ModContext, MODULUS_CAP};
use crate::proofreplay;
use crate::simulate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Parsed invocation.
#[derive(Debug, Parser)]
#[command(
    name = "banach",
    version,
    about = "Banach matchbox distribution and the prime congruence it implies"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format for data records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write data records to this file (created or truncated) instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact distribution u_n(r), r = 0..n.
    Dist {
        #[arg(long)]
        n: u64,
    },
    /// Check sum_r C(2n-r, n) 2^(r-n) = 2^n for n = 0..max-n.
    Identity {
        #[arg(long = "max-n")]
        max_n: u64,
    },
    /// Verify the congruence for one prime, for every k or a single k.
    Congruence {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Verify the congruence for every prime in [min, max].
    Sweep {
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Residues of the congruence sum for odd composites up to max.
    Composites {
        #[arg(long)]
        max: u64,
    },
    /// Replay the derivative/Leibniz derivation for one prime.
    Replay {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Monte Carlo of the two-box process against the exact distribution.
    Simulate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(config) => config,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };

    match &config.out {
        Some(path) => match File::create(path) {
            Ok(file) => {
                let mut file = BufWriter::new(file);
                let code = dispatch(&config, &mut file, stderr);
                if let Err(e) = file.flush() {
                    let _ = writeln!(stderr, "error: writing {}: {e}", path.display());
                    return EXIT_CHECK_FAILED;
                }
                code
            }
            Err(e) => usage_error(stderr, format!("cannot create {}: {e}", path.display())),
        },
        None => dispatch(&config, stdout, stderr),
    }
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn usage_error(stderr: &mut dyn Write, message: String) -> i32 {
    let rendered = RunConfig::command()
        .error(ErrorKind::ValueValidation, message)
        .render()
        .to_string();
    let _ = stderr.write_all(rendered.as_bytes());
    EXIT_USAGE
}

/// Runs a parsed command, writing data records to `out`.
pub fn dispatch(config: &RunConfig, out: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match execute(config, out, stderr) {
        Ok(0) => EXIT_OK,
        Ok(failures) => {
            let _ = writeln!(stderr, "{{\"status\":\"failed\",\"failures\":{failures}}}");
            EXIT_CHECK_FAILED
        }
        Err(Failure::Usage(message)) => usage_error(stderr, message),
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_CHECK_FAILED
        }
    }
}

#[derive(Serialize)]
struct SimulationRow {
    r: u64,
    count: u64,
}

#[derive(Serialize)]
struct SweepSummaryLine<'a> {
    summary: &'a congruence::SweepSummary,
}

/// Returns the number of failed checks.
fn execute(
    config: &RunConfig,
    out: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u64, Failure> {
    let format = config.format;
    match config.command {
        Command::Dist { n } => {
            let dist = matchbox::distribution(n);
            match format {
                Format::Json => json_line(out, &dist)?,
                Format::Csv => write_csv(out, &["r", "num", "den"], dist.rows())?,
            }
            Ok(u64::from(dist.total() != Rational::one()))
        }
        Command::Identity { max_n } => {
            let checks: Vec<_> = (0..=max_n).map(matchbox::check_identity).collect();
            emit(out, format, &["n", "lhs", "rhs", "holds"], &checks)?;
            Ok(checks.iter().filter(|c| !c.holds).count() as u64)
        }
        Command::Congruence { p, k } => {
            let ctx = prime_context(p)?;
            let reports = match k {
                Some(k) => vec![congruence::report(&ctx, k, Method::IncrementalKernel)?],
                None => congruence::verify_context(&ctx)?,
            };
            emit(out, format, REPORT_HEADER, &reports)?;
            Ok(reports.iter().filter(|r| !r.passed).count() as u64)
        }
        Command::Sweep { min, max, workers } => {
            let workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            if workers == 0 {
                return Err(Failure::Usage("--workers must be at least 1".into()));
            }
            let report = congruence::sweep(min, max, workers)?;
            let summary = report.summary();
            match format {
                Format::Json => {
                    for failure in &report.failures {
                        json_line(out, failure)?;
                    }
                    json_line(out, &SweepSummaryLine { summary: &summary })?;
                }
                Format::Csv => {
                    write_csv(out, REPORT_HEADER, report.failures.iter())?;
                    writeln!(
                        stderr,
                        "{}",
                        json_string(&SweepSummaryLine { summary: &summary })
                    )?;
                }
            }
            writeln!(
                stderr,
                "{{\"elapsed_s\":{:.3},\"workers\":{}}}",
                report.elapsed, report.worker_count
            )?;
            Ok(summary.failures)
        }
        Command::Composites { max } => {
            let reports = congruence::composite_scan(max)?;
            emit(out, format, REPORT_HEADER, &reports)?;
            Ok(0)
        }
        Command::Replay { p, k } => {
            let ctx = prime_context(p)?;
            let ks: Vec<u64> = match k {
                Some(k) => vec![k],
                None => (1..=(p - 1) / 2).collect(),
            };
            let reports = ks
                .into_iter()
                .map(|k| proofreplay::chain_check_with(&ctx, k))
                .collect::<Result<Vec<_>, _>>()?;
            emit(
                out,
                format,
                &[
                    "p",
                    "k",
                    "direct",
                    "leibniz",
                    "scaled_sum",
                    "I1",
                    "I2",
                    "I3",
                    "I4",
                ],
                &reports,
            )?;
            Ok(reports.iter().filter(|r| !r.passed()).count() as u64)
        }
        Command::Simulate { n, trials, seed } => {
            let start = Instant::now();
            let result = simulate::run(n, trials, seed)?;
            match format {
                Format::Json => json_line(out, &result)?,
                Format::Csv => write_csv(
                    out,
                    &["r", "count"],
                    result
                        .counts
                        .iter()
                        .enumerate()
                        .map(|(r, &count)| SimulationRow { r: r as u64, count }),
                )?,
            }
            writeln!(
                stderr,
                "{{\"elapsed_s\":{:.3}}}",
                start.elapsed().as_secs_f64()
            )?;
            Ok(0)
        }
    }
}

const REPORT_HEADER: &[&str] = &["p", "k", "terms", "residue", "method", "passed"];

fn prime_context(p: u64) -> Result<ModContext, Failure> {
    require_prime(p)?;
    if p >= MODULUS_CAP {
        return Err(Error::ModulusTooLarge { p }.into());
    }
    Ok(ModContext::new(p)?)
}

fn json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize infallibly")
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    writeln!(out, "{}", json_string(value))
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    format: Format,
    header: &[&str],
    records: &[T],
) -> Result<(), Failure> {
    match format {
        Format::Json => {
            for record in records {
                json_line(out, record)?;
            }
            Ok(())
        }
        Format::Csv => write_csv(out, header, records.iter()),
    }
}

fn write_csv<T: Serialize>(
    out: &mut dyn Write,
    header: &[&str],
    rows: impl IntoIterator<Item = T>,
) -> Result<(), Failure> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    writer.write_record(header)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
