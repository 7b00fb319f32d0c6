//! Command-line front end: JSON documents in, sorted-key JSON reports out.
//!
//! Exit codes: 0 when every check passes, 1 when a checked property fails
//! or a computation reports an error, 2 for unreadable input or bad usage.

mod commands;
pub mod document;
pub mod report;
pub mod supplement;

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use mrbl_core::algebra::DEFAULT_SEARCH_BUDGET;
use mrbl_core::cohomology::DEFAULT_CELL_BUDGET;

pub use document::{AlgebraDocument, InputError};
pub use report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "mrbl",
    version,
    about = "Exact computations for modified Rota-Baxter Leibniz algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Leibniz identity, the operator identity and the representation axioms
    Check {
        /// Base document; standard input when omitted or `-`
        input: Option<PathBuf>,
    },
    /// Dimensions of the Leibniz, operator and cone cohomology
    Cohomology {
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Largest differential to build, in matrix cells
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        budget: u128,
        /// Also list cocycles representing a basis of each cohomology space
        #[arg(long)]
        representatives: bool,
        input: Option<PathBuf>,
    },
    /// The derived algebra with the induced representation
    Derived { input: Option<PathBuf> },
    /// Exhaustive search for operators with entries from a grid
    Search {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Comma-separated rationals
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// JSON matrix of null (free) and rational strings (fixed)
        #[arg(long)]
        mask: Option<PathBuf>,
        /// Largest number of candidates to test
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u128,
        input: Option<PathBuf>,
    },
    /// Truncated formal deformations
    Deform {
        action: DeformAction,
        #[arg(long)]
        deformation: PathBuf,
        input: Option<PathBuf>,
    },
    /// Abelian extensions and their cocycles
    Extend {
        action: ExtendAction,
        /// Cocycle file (build)
        #[arg(long)]
        cocycle: Option<PathBuf>,
        /// Extension file (extract, compare)
        #[arg(long)]
        extension: Option<PathBuf>,
        /// Second extension file (compare)
        #[arg(long)]
        other: Option<PathBuf>,
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeformAction {
    /// Residuals of the deformation equations at every order
    Verify,
    /// The first-order term and its cohomology class
    Infinitesimal,
    /// Remove a first-order term that is a coboundary
    Gauge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExtendAction {
    /// Direct-sum extension from a cocycle
    Build,
    /// Representation and cocycle of an extension
    Extract,
    /// Decide whether two extensions are isomorphic
    Compare,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one command line. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match commands::execute(&cli.command, echo, stdin) {
        Ok(report) => Outcome {
            stdout: report.render(),
            stderr: String::new(),
            code: report.exit_code(),
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 2,
        },
    }
}
