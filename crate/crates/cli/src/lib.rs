//! Command-line front end for `parthom-core`: formula checks, homology,
//! shelling, cycle bases, exports and a self-test, with text or JSON reports
//! and CI-friendly exit codes (0 pass, 1 failed check, 2 usage or resource
//! error).

pub mod commands;
mod error;
pub mod json;
pub mod report;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

pub use error::{CliError, CliResult};
pub use report::{Format, Report};

use commands::{Check, ExportWhat, Method, TieBreakArg};

#[derive(Debug, Parser)]
#[command(name = "parthom", version, about = "Verify homology and shelling facts about the complex of partial partitions")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form count D(n,j,k), checked against enumeration for small n.
    Formula {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
    },
    /// Reduced Betti numbers of D_n from the formula, from Smith normal form, or both.
    Betti {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Check the default shelling order and its restriction classes.
    Shelling {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Check::Both)]
        check: Check,
        #[arg(long, value_enum, default_value_t = TieBreakArg::Lex)]
        tiebreak: TieBreakArg,
    },
    /// Build the cross-polytope cycles and check they form a basis.
    Basis {
        #[arg(long)]
        n: usize,
        /// Number of blocks; all of 1..=n when omitted.
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        verify_iso: bool,
        /// Random representative-choice pairs tested per level.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write D_n, a full report, or one boundary matrix as JSON.
    Export {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        what: ExportWhat,
        #[arg(long)]
        path: PathBuf,
        /// Degree of the boundary matrix for `--what boundary`.
        #[arg(long, allow_negative_numbers = true)]
        d: Option<isize>,
    },
    /// Run every check for all n up to --n-max.
    Selftest {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Boundary matrix JSON to substitute into the chain complex check.
        #[arg(long)]
        boundary_fixture: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn execute(command: &Command) -> CliResult<Report> {
    match command {
        Command::Formula { n, j, k } => commands::cmd_formula(*n, *j, *k),
        Command::Betti { n, method } => commands::cmd_betti(*n, *method),
        Command::Shelling { n, check, tiebreak } => commands::cmd_shelling(*n, *check, *tiebreak),
        Command::Basis { n, j, verify_iso, samples, seed } => {
            commands::cmd_basis(*n, *j, *verify_iso, *samples, *seed)
        }
        Command::Export { n, what, path, d } => commands::cmd_export(*n, *what, path, *d),
        Command::Selftest { n_max, boundary_fixture, samples, seed } => {
            selftest::cmd_selftest(&selftest::SelftestConfig {
                n_max: *n_max,
                samples: *samples,
                seed: *seed,
                boundary_fixture: boundary_fixture.as_deref(),
            })
        }
    }
}

/// Parses `args`, runs the command, emits the report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let mut report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    if cli.timing {
        report.wall_time = Some(start.elapsed());
    }
    let text = report.render(cli.format);
    let written = match &cli.output {
        Some(path) => commands::write_file(path, &text),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    };
    match written {
        Ok(()) => report.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
