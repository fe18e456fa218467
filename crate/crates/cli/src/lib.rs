//! Command-line front end: structure-constant files in, deterministic
//! verification reports out.

pub mod format;
pub mod pipeline;
mod summary;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use radford_core::zoo::{self, Group};
use radford_core::{duality, HopfData};

pub use pipeline::Options;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed file: {0}")]
    Format(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] radford_core::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "radford", version, about = "Verify finite-dimensional Hopf algebras given by structure constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a built-in algebra to a file.
    Zoo(ZooArgs),
    /// Run the verification pipeline and print one line per check.
    Verify(VerifyArgs),
    /// Print the modular data of a verified algebra.
    Report(CommonArgs),
    /// Write the dual algebra.
    Dual {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ZooArgs {
    /// sweedler, taft, trivial, group, function, s3 or tensor.
    name: String,
    #[arg(long)]
    n: Option<u32>,
    /// Taft parameter, a primitive n-th root of unity in scalar syntax.
    #[arg(long)]
    q: Option<String>,
    /// Cayley table file for group or function.
    #[arg(long)]
    cayley: Option<PathBuf>,
    #[arg(long)]
    left: Option<PathBuf>,
    #[arg(long)]
    right: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Print only this check, or every check under this dotted prefix.
    #[arg(long)]
    only: Option<String>,
    /// Print detail lines under each check.
    #[arg(long)]
    details: bool,
}

fn options(tolerance: f64, seed: u64) -> Result<Options, CliError> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {tolerance}")));
    }
    Ok(Options { tolerance, membership_tolerance: 10.0 * tolerance, seed })
}

pub fn load(path: &Path) -> Result<HopfData, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| match e {
        CliError::Format(m) => CliError::Format(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
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
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Zoo(a) => cmd_zoo(&a, out),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Report(a) => cmd_report(&a, out, err),
        Command::Dual { common, output } => cmd_dual(&common, output.as_deref(), out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn cmd_zoo(a: &ZooArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let h = match a.name.as_str() {
        "tensor" => {
            let (Some(l), Some(r)) = (&a.left, &a.right) else {
                return Err(CliError::Usage("tensor needs --left and --right".into()));
            };
            zoo::tensor_product(&load(l)?, &load(r)?)
        }
        "sweedler" | "h4" | "taft" | "trivial" | "group" | "function" | "s3" => {
            let group = match &a.cayley {
                Some(p) => {
                    let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                    let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    Some(Group::parse_table(&stem, &text)?)
                }
                None => None,
            };
            zoo::by_name(&a.name, a.n, a.q.as_deref(), group.as_ref())?
        }
        other => return Err(CliError::Usage(format!("unknown algebra {other:?}"))),
    };
    emit(&format::write(&h)?, a.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn print_report(
    out: &mut dyn Write,
    err: &mut dyn Write,
    label: Option<&Path>,
    outcome: &pipeline::Outcome,
    only: Option<&str>,
    details: bool,
) -> std::io::Result<bool> {
    if let Some(p) = label {
        writeln!(out, "FILE {}", p.display())?;
    }
    let mut failed = false;
    for c in &outcome.report.checks {
        if only.is_some_and(|o| !pipeline::matches_only(&c.name, o)) {
            continue;
        }
        writeln!(out, "{c}")?;
        if let radford_core::Status::Fail(why) = &c.status {
            failed = true;
            writeln!(err, "{}: {why}", c.name)?;
        }
        if details {
            for line in &c.details {
                writeln!(out, "  {line}")?;
            }
        }
    }
    if only.is_none() {
        for note in &outcome.notes {
            writeln!(out, "NOTE {note}")?;
        }
    }
    Ok(failed)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let opts = options(a.tolerance, a.seed)?;
    if let Some(o) = &a.only {
        if !pipeline::CHECKS.iter().any(|(n, _)| pipeline::matches_only(n, o)) {
            return Err(CliError::Usage(format!("no check named {o:?}")));
        }
    }
    let algebras = a.files.iter().map(|p| load(p)).collect::<Result<Vec<_>, _>>()?;
    let outcomes: Vec<pipeline::Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = algebras.iter().map(|h| s.spawn(move || pipeline::run(h, &opts))).collect();
        handles.into_iter().map(|t| t.join().expect("pipeline thread panicked")).collect()
    });
    let multi = a.files.len() > 1;
    let mut failed = false;
    for (path, outcome) in a.files.iter().zip(&outcomes) {
        let label = multi.then_some(path.as_path());
        failed |= print_report(out, err, label, outcome, a.only.as_deref(), a.details)
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(if failed { EXIT_FAIL } else { EXIT_OK })
}

/// Runs the pipeline and reports failures; `None` means the caller should
/// stop with exit code 1.
fn verified(a: &CommonArgs, err: &mut dyn Write) -> Result<Option<(HopfData, pipeline::Outcome)>, CliError> {
    let h = load(&a.file)?;
    let outcome = pipeline::run(&h, &options(a.tolerance, a.seed)?);
    let failures: Vec<_> = outcome.report.checks.iter().filter(|c| c.failed()).collect();
    if failures.is_empty() {
        return Ok(Some((h, outcome)));
    }
    for c in failures {
        let _ = writeln!(err, "{c}");
    }
    Ok(None)
}

fn cmd_report(a: &CommonArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let Some((h, outcome)) = verified(a, err)? else {
        return Ok(EXIT_FAIL);
    };
    let text = summary::render(&h, &outcome)?;
    emit(&text, None, out)?;
    Ok(EXIT_OK)
}

fn cmd_dual(a: &CommonArgs, output: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let Some((h, _)) = verified(a, err)? else {
        return Ok(EXIT_FAIL);
    };
    emit(&format::write(&duality::dual_hopf(&h))?, output, out)?;
    Ok(EXIT_OK)
}
