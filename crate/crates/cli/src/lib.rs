//! The `lie2` command line.
//!
//! Exit codes: 0 the check passed, 1 it failed, 2 invalid input,
//! 3 a search budget was exceeded.

mod commands;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lie2", version, about = "Restricted Lie algebras in characteristic 2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Lie axioms, and with --restricted the 2-map axioms.
    Validate {
        /// Algebra file, or - for standard input.
        file: String,
        #[arg(long)]
        restricted: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Weight decomposition under a torus, with audits.
    Decompose {
        file: String,
        /// `auto`, or a JSON file listing toral basis vectors as bit arrays.
        #[arg(long, default_value = "auto")]
        torus: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Lower bound for the toral rank.
    ToralRank {
        file: String,
        /// Largest number of vectors enumerated when listing toral elements.
        #[arg(long)]
        budget: Option<u64>,
        /// Largest number of search nodes before falling back to greedy search.
        #[arg(long)]
        node_budget: Option<u64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Replay and audit the rank-3 case analysis.
    Paper {
        #[command(subcommand)]
        action: PaperAction,
    },
    /// Census of bracket tables.
    Census {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        field_degree: u32,
        /// Number of sampled tables; omit for the exhaustive sweep.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Write one algebra file per simple isomorphism class into this directory.
        #[arg(long)]
        dump_survivors: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Built-in algebras and data.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum PaperAction {
    /// Refute the root systems (`4`), the dimension patterns (`5`), or both.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        section: SectionArg,
        /// Total dimensions for patterns, `a..b` or a single value.
        #[arg(long, default_value = "10..16")]
        dims: String,
        #[arg(long, value_enum, default_value = "paper")]
        rule_mode: ModeArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compare the embedded reference pattern lists with the enumeration.
    CrossCheck {
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    /// Write a fixture as an algebra file, or `paper-lists` for the raw
    /// reference pattern lists.
    Emit {
        name: String,
        #[arg(long, default_value_t = 1)]
        field_degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OutArg {
    /// Write the JSON report here; `-` sends it to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SectionArg {
    #[value(name = "4", alias = "roots")]
    Four,
    #[value(name = "5", alias = "patterns")]
    Five,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Paper,
    Strict,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let mut io = commands::Io { stdin, stdout, stderr };
    match commands::dispatch(cli.command, &mut io) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {}", e.message);
            e.code
        }
    }
}
