//! Command-line front end. Exit codes: 0 ok, 1 verification failure, 2 usage,
//! 3 semantic input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::cohomology::{chen_ruan_diamond, contribution_breakdown};
use crate::error::Error;
use crate::exact_torus::CurveOrder;
use crate::moves::classify_with;
use crate::pi1::fundamental_group;
use crate::report::golden::GoldenData;
use crate::report::literal::GroupLiteral;
use crate::report::render::{
    class_rows, render_breakdown, render_classes, render_hodge, render_pi1, Format,
};
use crate::report::verify::verify_paper;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;

fn parse_n(s: &str) -> std::result::Result<CurveOrder, String> {
    let v: u8 = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    CurveOrder::try_from(v).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "torb",
    about = "Toroidal orbifolds E_n^3/G: classes, Hodge numbers, pi1"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Engine {
    /// Directory with paper_tables.csv and paper_breakdowns/ (default: built-in copy).
    #[arg(long)]
    data: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long, value_parser = parse_n)]
    n: CurveOrder,
    /// Generators `m1,m2,m3;a1,a2,a3` joined by `|`.
    #[arg(long)]
    gens: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One record per homeomorphism class.
    Classify {
        #[arg(long, value_parser = parse_n)]
        n: CurveOrder,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        engine: Engine,
    },
    /// Orbifold (h11,h12) of a group.
    Hodge {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Fundamental group of the quotient.
    Pi1 {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Per-element contributions.
    Breakdown {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute every stored table row and list.
    VerifyPaper {
        #[arg(long, value_parser = parse_n)]
        n: Option<CurveOrder>,
        /// Also fail when a disputed row cannot be compared against both figures.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        output: Output,
        #[command(flatten)]
        engine: Engine,
    },
}

enum Failure {
    Semantic(Error),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Golden(_) | Error::Io(_) | Error::Consistency(_) => Failure::Other(e),
            _ => Failure::Semantic(e),
        }
    }
}

fn golden_for(engine: &Engine) -> Result<GoldenData, Failure> {
    Ok(match &engine.data {
        Some(dir) => GoldenData::from_dir(dir)?,
        None => GoldenData::embedded()?,
    })
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Failure::Other(Error::Io(e.to_string())))?;
            Ok(pool.install(f))
        }
    }
}

fn emit(output: &Output, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Other(e.into())),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Other(e.into())),
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Classify { n, output, engine } => {
            let golden = golden_for(&engine)?;
            let c = with_pool(engine.jobs, || classify_with(n, &golden))??;
            let text = render_classes(&class_rows(&c, &golden), output.format)?;
            emit(&output, &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Hodge { group, output } => {
            let g = GroupLiteral::admissible_group(group.n, &group.gens)?;
            let d = chen_ruan_diamond(&g)?;
            emit(&output, &render_hodge(&g, &d, output.format)?, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Pi1 { group, output } => {
            let g = GroupLiteral::admissible_group(group.n, &group.gens)?;
            let p = fundamental_group(&g)?;
            emit(&output, &render_pi1(&g, &p, output.format)?, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Breakdown { group, output } => {
            let g = GroupLiteral::admissible_group(group.n, &group.gens)?;
            let b = contribution_breakdown(&g)?;
            emit(&output, &render_breakdown(&b, output.format)?, stdout)?;
            Ok(EXIT_OK)
        }
        Command::VerifyPaper {
            n,
            strict,
            output,
            engine,
        } => {
            let golden = golden_for(&engine)?;
            let report = with_pool(engine.jobs, || verify_paper(&golden, n, strict))??;
            let text = match output.format {
                Format::Json => serde_json::to_string_pretty(&report)
                    .map(|s| s + "\n")
                    .map_err(|e| Failure::Other(Error::Io(e.to_string())))?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["scope", "what", "expected", "computed", "outcome"])
                        .map_err(|e| Failure::Other(Error::Io(e.to_string())))?;
                    for c in &report.checks {
                        let outcome = format!("{:?}", c.outcome).to_lowercase();
                        w.write_record([&c.scope, &c.what, &c.expected, &c.computed, &outcome])
                            .map_err(|e| Failure::Other(Error::Io(e.to_string())))?;
                    }
                    let bytes = w
                        .into_inner()
                        .map_err(|e| Failure::Other(Error::Io(e.to_string())))?;
                    String::from_utf8_lossy(&bytes).into_owned()
                }
                Format::Md => report.render_text(),
            };
            emit(&output, &text, stdout)?;
            if report.passed() {
                Ok(EXIT_OK)
            } else {
                let _ = writeln!(
                    stderr,
                    "verification failed: {} checks",
                    report.failures().len()
                );
                Ok(EXIT_VERIFY)
            }
        }
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(Failure::Semantic(Error::Parse(msg))) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Semantic(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_SEMANTIC
        }
        Err(Failure::Other(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_VERIFY
        }
    }
}
