//! `binlcl`: classify, solve, verify and transform binary labeling problems.
//!
//! Every command prints one JSON document `{"manifest": …, "result": …}` on
//! stdout. Exit codes: 0 success, 2 input error, 3 expectation failure,
//! 4 resource cap.

mod commands;
mod manifest;
mod named;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use binary_lcl::limits::Limits;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "binlcl", version, about = "Binary labeling problems on two-colored trees")]
pub struct Cli {
    /// Indent the output document.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Accepted for compatibility; all work runs on one thread and the output
    /// never depends on this value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one problem, or sweep every problem up to the given degrees.
    #[command(group(ArgGroup::new("input").required(true).args(["inline", "problem", "sweep"])))]
    Classify {
        #[arg(long)]
        inline: Option<String>,
        /// Problem file, inline string or example name.
        #[arg(long)]
        problem: Option<String>,
        #[arg(long, num_args = 2, value_names = ["D_MAX", "DELTA_MAX"])]
        sweep: Option<Vec<usize>>,
    },
    /// Solve a problem on a tree file.
    Solve {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long, value_enum, default_value_t = RunMode::Centralized)]
        mode: RunMode,
        /// Include the layer decomposition; with a path, write it there.
        #[arg(long, num_args = 0..=1, value_name = "FILE")]
        emit_layers: Option<Option<PathBuf>>,
        /// Labeling file; without it the labeling is part of the result.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a labeling; exits 3 when some node is violated.
    Verify {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
    },
    /// Exhaustive search on a small tree or on the witness balls.
    #[command(group(ArgGroup::new("target").required(true).args(["tree", "witness"])))]
    Oracle {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long, value_enum)]
        witness: Option<WitnessKind>,
        #[arg(long, value_enum, default_value_t = OracleMode::Count)]
        mode: OracleMode,
        /// Defaults to the `max_edges` cap.
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// One round-elimination half step.
    ReStep {
        /// General problem file, or a binary problem (file, inline or name).
        #[arg(long)]
        problem: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether black-then-white output returns an isomorphic problem.
    #[command(group(ArgGroup::new("input").required(true).args(["problem", "fdso"])))]
    FixedPoint {
        #[arg(long)]
        problem: Option<String>,
        /// Forbidden-degree sinkless orientation, e.g. `d=3,delta=3,s=1`.
        #[arg(long)]
        fdso: Option<String>,
        #[arg(long, default_value_t = 1)]
        pairs: usize,
    },
    /// Generate a tree file.
    GenTree {
        #[command(flatten)]
        generator: GenArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate, classify, solve and verify in one run.
    Pipeline {
        #[arg(long)]
        problem: String,
        #[command(flatten)]
        generator: GenArgs,
        #[arg(long, value_enum, default_value_t = RunMode::Local)]
        mode: RunMode,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 3 when the problem is unsolvable.
        #[arg(long)]
        expect_solvable: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: TreeKind,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long)]
    pub radius: Option<usize>,
    /// Node count for `random` (target) and `path`.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub path_len: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Color of the center (complete) or of the first node (path).
    #[arg(long, value_enum, default_value_t = ColorArg::White)]
    pub center: ColorArg,
    /// Permute node ids with this seed.
    #[arg(long)]
    pub id_seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    Centralized,
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    /// Both radius-2 balls, white-centered and black-centered.
    Auto,
    White,
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    First,
    Count,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    Black,
    White,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeKind {
    Complete,
    Random,
    Caterpillar,
    Path,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorArg {
    White,
    Black,
}

fn to_json(value: &serde_json::Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("json")
    } else {
        serde_json::to_string(value).expect("json")
    }
}

fn emit(outcome: Outcome, pretty: bool) -> Result<ExitCode, CliError> {
    let Outcome {
        mut manifest,
        result,
        files,
        failure,
    } = outcome;
    for (path, bytes) in &files {
        fs::write(path, bytes)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        manifest.output(&path.display().to_string(), bytes);
    }
    manifest.output("result", serde_json::to_string(&result).expect("json").as_bytes());
    let doc = json!({ "manifest": manifest, "result": result });
    // A closed stdout (e.g. piped into `head`) is not an error of the run.
    let _ = writeln!(io::stdout().lock(), "{}", to_json(&doc, pretty));
    Ok(match failure {
        Some(msg) => {
            eprintln!("{}", json!({ "error": "expectation", "message": msg }));
            ExitCode::from(3)
        }
        None => ExitCode::SUCCESS,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    match commands::execute(&cli.command, &limits).and_then(|o| emit(o, cli.pretty)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::from(e.exit_code())
        }
    }
}
