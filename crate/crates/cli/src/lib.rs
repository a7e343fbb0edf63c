//! Argument handling and pipelines behind the `dgdual` binary.
//!
//! [`run_command`] never touches stdout or stderr; it returns everything the
//! binary should print together with the exit code.
//!
//! Exit codes: 0 success, 1 a check failed or the oracle disagreed, 2 bad
//! input, 3 a normalization exceeded its subdivision bound.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use dgdual_core::{
    brute_force_hamilton, build_edge_graph_with, canonical_check, canonicalize, hamilton_cycles,
    quasicanonical_check, quasinormalize, reduce_to_forming, BinaryMatrix, HamiltonOptions, NormalForm,
    TerminalMode, BRUTE_FORCE_CAP,
};
use dgdual_core::{render, Error as CoreError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArtifactKind {
    Matrix,
    Trace,
    Dot,
    Report,
}

impl fmt::Display for ArtifactKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArtifactKind::Matrix => "matrix",
            ArtifactKind::Trace => "trace",
            ArtifactKind::Dot => "dot",
            ArtifactKind::Report => "report",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    /// Text for stdout, without a trailing newline.
    pub stdout_report: String,
    /// Text for stderr, without a trailing newline.
    pub diagnostics: String,
    pub artifacts: BTreeMap<PathBuf, ArtifactKind>,
}

#[derive(Parser, Debug)]
#[command(name = "dgdual", version, about = "Vertex-graph / edge-graph duality toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Mode {
    Quasi,
    Canonical,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test whether a matrix is quasicanonical or canonical.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "quasi")]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Subdivide relations until the matrix is in normal form.
    Normalize {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(short = 'o', value_name = "OUT")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "TRACE")]
        trace: Option<PathBuf>,
    },
    /// Build the edge graph of the (quasinormalized) matrix.
    EdgeGraph {
        file: PathBuf,
        #[arg(long, value_name = "OUT.dot")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "OUT")]
        fmatrix: Option<PathBuf>,
        #[arg(long)]
        split_terminals: bool,
    },
    /// Contract elementary elements down to the forming set.
    Reduce {
        file: PathBuf,
        #[arg(short = 'o', value_name = "OUT")]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_loops: bool,
    },
    /// Enumerate Hamilton cycles through Euler partial graphs.
    Hamilton {
        file: PathBuf,
        #[arg(long, value_name = "N")]
        limit: Option<usize>,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        canonical: bool,
        #[arg(long, value_name = "N", default_value_t = 1)]
        threads: usize,
    },
    /// Print the cyclomatic number, component count and number of ones.
    Invariants { file: PathBuf },
}

/// Failure of a pipeline, already classified by exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::BoundExceeded { .. } => EXIT_BOUND,
            _ => EXIT_INPUT,
        };
        Failure { code, message: format!("error: {e}") }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_INPUT, message: format!("error: {}: {e}", path.display()) }
}

#[derive(Default)]
struct Run {
    report: String,
    notes: Vec<String>,
    artifacts: BTreeMap<PathBuf, ArtifactKind>,
}

impl Run {
    fn write(&mut self, path: &Path, text: &str, kind: ArtifactKind) -> Result<(), Failure> {
        let mut body = text.to_string();
        body.push('\n');
        fs::write(path, body).map_err(|e| io_failure(path, e))?;
        self.artifacts.insert(path.to_path_buf(), kind);
        Ok(())
    }
}

fn read_matrix(path: &Path) -> Result<BinaryMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    BinaryMatrix::parse(&text)
        .map_err(|e| Failure { code: EXIT_INPUT, message: format!("error: {}: {e}", path.display()) })
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run_command<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string().trim_end().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandOutcome { stdout_report: text, ..Default::default() }
                }
                _ => CommandOutcome { exit_code: EXIT_INPUT, diagnostics: text, ..Default::default() },
            };
        }
    };
    let mut run = Run::default();
    let code = match execute(cli.command, &mut run) {
        Ok(code) => code,
        Err(f) => {
            run.notes.push(f.message);
            f.code
        }
    };
    CommandOutcome {
        exit_code: code,
        stdout_report: run.report,
        diagnostics: run.notes.join("\n"),
        artifacts: run.artifacts,
    }
}

fn execute(command: Command, run: &mut Run) -> Result<i32, Failure> {
    match command {
        Command::Check { file, mode, json } => {
            let m = read_matrix(&file)?;
            let report = match mode {
                Mode::Quasi => quasicanonical_check(&m),
                Mode::Canonical => canonical_check(&m),
            };
            run.report =
                if json { render::check_report_json(&report) } else { render::check_report(&report) };
            Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Normalize { file, mode, out, trace } => {
            let m = read_matrix(&file)?;
            let (norm, steps) = match mode {
                Mode::Quasi => quasinormalize(&m)?,
                Mode::Canonical => canonicalize(&m)?,
            };
            let summary =
                format!("order {} -> {} subdivisions={}", m.order(), norm.order(), steps.subdivisions());
            match out {
                Some(path) => {
                    run.write(&path, &norm.serialize(), ArtifactKind::Matrix)?;
                    run.report = summary;
                }
                None => {
                    run.report = norm.serialize();
                    run.notes.push(summary);
                }
            }
            if let Some(path) = trace {
                run.write(&path, &steps.to_string(), ArtifactKind::Trace)?;
            }
            Ok(EXIT_OK)
        }
        Command::EdgeGraph { file, dot, fmatrix, split_terminals } => {
            let m = read_matrix(&file)?;
            let (q, trace) = quasinormalize(&m)?;
            let mode = if split_terminals { TerminalMode::Split } else { TerminalMode::Shared };
            let model = build_edge_graph_with(&q, Some(&trace), mode)?;
            run.report = render::edge_graph_summary(&model);
            if let Some(path) = dot {
                run.write(&path, &render::dot(&model.h), ArtifactKind::Dot)?;
            }
            if let Some(path) = fmatrix {
                run.write(&path, &model.f.serialize(), ArtifactKind::Matrix)?;
            }
            Ok(EXIT_OK)
        }
        Command::Reduce { file, out, allow_loops } => {
            let m = read_matrix(&file)?;
            let result = reduce_to_forming(&m, allow_loops);
            run.report = render::forming(&result);
            if let Some(path) = out {
                run.write(&path, &result.matrix.serialize(), ArtifactKind::Matrix)?;
            }
            Ok(EXIT_OK)
        }
        Command::Hamilton { file, limit, oracle, canonical, threads } => {
            let m = read_matrix(&file)?;
            let form = if canonical { NormalForm::Canonical } else { NormalForm::Quasicanonical };
            let opts = HamiltonOptions { limit, form, threads: threads.max(1) };
            let found = hamilton_cycles(&m, opts)?;
            run.report = render::cycles(&found);
            if !oracle {
                return Ok(EXIT_OK);
            }
            let expected = brute_force_hamilton(&m, BRUTE_FORCE_CAP)?;
            let want = limit.map_or(expected.count(), |l| l.min(expected.count()));
            let agrees =
                found.count() == want && found.cycles.iter().all(|c| expected.cycles.contains(c));
            if agrees {
                run.report.push_str(&format!("\noracle: {} cycles, match", expected.count()));
                Ok(EXIT_OK)
            } else {
                run.report.push_str(&format!("\noracle: {} cycles, MISMATCH", expected.count()));
                Ok(EXIT_FAILED)
            }
        }
        Command::Invariants { file } => {
            let m = read_matrix(&file)?;
            run.report = render::invariants(&m);
            Ok(EXIT_OK)
        }
    }
}
