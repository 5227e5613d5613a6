//! Subcommand dispatch.
//!
//! Exit codes: `0` on success with every applicable verdict passing, `1`
//! when an applicable verdict fails, `2` on any input error, reported as a
//! single line on stderr.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cipoints_core::bounds::{self, estimate_suite, EstimateInputs};
use cipoints_core::sections::ScanMode;
use cipoints_core::VarietyDescriptor;

use crate::error::{CliError, Result};
use crate::format::load_variety;
use crate::parallel::Workers;
use crate::report;

#[derive(Debug, Parser)]
#[command(
    name = "cipoints",
    version,
    about = "Exact point counts and bounds for complete intersections over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Affine,
    Projective,
}

impl From<Mode> for ScanMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Affine => ScanMode::Affine,
            Mode::Projective => ScanMode::Projective,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of projective points over F_{q^e}.
    Count {
        variety: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        ext: u32,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Right-hand side of every estimate, as CSV.
    Bounds {
        variety: PathBuf,
        /// Overrides the singular locus dimension of the file.
        #[arg(long, allow_hyphen_values = true)]
        s: Option<i64>,
        /// Primitive Betti number b'_{r-s-1}; required unless r - s - 1 = 1.
        #[arg(long)]
        betti: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sum of (N - q^{s+1} N(γ))^2 over all tuples next to its closed form.
    SecondMoment {
        variety: PathBuf,
        /// Defaults to max(singdim, 0).
        #[arg(long)]
        s: Option<i64>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// How many tuples satisfy |N - q^{s+1} N(γ)|^2 <= 2N(q^{s+1} - 1).
    HooleyCensus {
        variety: PathBuf,
        /// Defaults to max(singdim, 0).
        #[arg(long)]
        s: Option<i64>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Classifies every linear section of codimension s + 1, as CSV.
    BertiniScan {
        variety: PathBuf,
        /// Extension depth E of the rational rank check.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        ext: u32,
        #[arg(long, value_enum, default_value_t = Mode::Affine)]
        mode: Mode,
        /// Defaults to the singular locus dimension of the file.
        #[arg(long)]
        s: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Checks |N - p_r| against every estimate, as CSV.
    Verify {
        variety: PathBuf,
        #[arg(long)]
        betti: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Evaluates the multihomogeneous zero bound η_m(d, n) over F_q.
    Eta {
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
}

/// Outcome of a subcommand that did not hit an input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn workers(requested: Option<usize>) -> Result<Workers> {
    let n = match requested {
        Some(0) => {
            return Err(CliError::Core(cipoints_core::Error::InvalidInput(
                "--workers must be at least 1".into(),
            )))
        }
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    Workers::new(n)
}

fn moment_s(v: &VarietyDescriptor, s: Option<i64>) -> i64 {
    s.unwrap_or(v.sing_dim().max(0))
}

/// Runs `emit` against the `--out` file, or stdout when absent.
fn emit(
    out: Option<&Path>,
    stdout: &mut dyn Write,
    emit: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let mut w = BufWriter::new(file);
            emit(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => emit(stdout),
    }
}

/// Executes one command, writing results to `stdout` and notes to `stderr`.
pub fn run(command: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Outcome> {
    match command {
        Command::Count {
            variety,
            ext,
            workers: w,
        } => {
            let v = load_variety(variety)?;
            let n = workers(*w)?.count_points(&v, *ext)?;
            if !v.count_is_plausible(*ext, n) {
                writeln!(
                    stderr,
                    "warning: {n} points is far from p_r; the asserted dimension is probably wrong"
                )?;
            }
            writeln!(stdout, "{n}")?;
            Ok(Outcome::Pass)
        }
        Command::Bounds {
            variety,
            s,
            betti,
            out,
        } => {
            let v = load_variety(variety)?;
            let mut inputs = EstimateInputs::from_variety(&v);
            if let Some(s) = s {
                inputs = inputs.with_sing_dim(*s);
            }
            let report = estimate_suite(&inputs, *betti)?;
            emit(out.as_deref(), stdout, |w| report::write_bounds(w, &report))?;
            Ok(Outcome::Pass)
        }
        Command::SecondMoment {
            variety,
            s,
            workers: w,
        } => {
            let v = load_variety(variety)?;
            let m = workers(*w)?.second_moment(&v, moment_s(&v, *s))?;
            let verdict = if m.equal { "EQUAL" } else { "NOT_EQUAL" };
            writeln!(
                stdout,
                "computed={} lemma={} {verdict}",
                m.computed, m.lemma_value
            )?;
            Ok(Outcome::from_pass(m.equal))
        }
        Command::HooleyCensus {
            variety,
            s,
            workers: w,
        } => {
            let v = load_variety(variety)?;
            let c = workers(*w)?.hooley_census(&v, moment_s(&v, *s))?;
            let verdict = if c.half_mass {
                "HALF_MASS"
            } else {
                "BELOW_HALF"
            };
            writeln!(
                stdout,
                "satisfying={} total={} {verdict}",
                c.satisfying, c.total
            )?;
            Ok(Outcome::from_pass(c.half_mass))
        }
        Command::BertiniScan {
            variety,
            ext,
            mode,
            s,
            out,
            workers: w,
        } => {
            let v = load_variety(variety)?;
            let s = s.unwrap_or(v.sing_dim());
            let scan = workers(*w)?.bertini_scan(&v, s, *ext, (*mode).into())?;
            emit(out.as_deref(), stdout, |w| report::write_scan(w, &scan))?;
            Ok(Outcome::from_pass(report::scan_check(&scan)))
        }
        Command::Verify {
            variety,
            betti,
            out,
            workers: w,
        } => {
            let v = load_variety(variety)?;
            let suite = estimate_suite(&EstimateInputs::from_variety(&v), *betti)?;
            let n = workers(*w)?.count_points(&v, 1)?;
            let verification = suite.verify(n);
            emit(out.as_deref(), stdout, |w| {
                report::write_verification(w, &verification)
            })?;
            writeln!(
                stderr,
                "points={} p_r={} trivial_bound={} trivial={}",
                verification.points,
                verification.p_r,
                suite.trivial_projective,
                verification.trivial.label()
            )?;
            Ok(Outcome::from_pass(verification.all_pass()))
        }
        Command::Eta { q, d, n } => {
            writeln!(stdout, "{}", bounds::eta(*q, d, n)?)?;
            Ok(Outcome::Pass)
        }
    }
}

/// Parses the process arguments, runs the command and maps the outcome to
/// an exit code.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("{first}");
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let result = run(&cli.command, &mut out, &mut err);
    let _ = out.flush();
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
