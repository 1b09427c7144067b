//! `krein-ext`: classify J-self-adjoint extensions, list empty-resolvent
//! families, compute non-real spectra and run the model-problem check bundles.
//!
//! Exit codes: 0 success, 1 failed example check, 2 invalid input,
//! 3 determinant vanishes identically, 4 numerical failure.

mod config;
mod examples;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use krein_ext::{Classifier, EmptyResolventFamily, Error, ResolventProbe, Verdict};
use serde_json::Value;

use config::{CommonArgs, RunConfig};
use examples::ExampleName;

pub const EXIT_EXAMPLE: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_EMPTY_RESOLVENT: u8 = 3;
pub const EXIT_NUMERICAL: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn validation(message: String) -> Self {
        Self { code: EXIT_VALIDATION, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Invalid(_) | Error::Domain(_) => EXIT_VALIDATION,
            Error::Accuracy { .. }
            | Error::Indeterminate(_)
            | Error::Pole(_)
            | Error::Numerical(_)
            | Error::Internal(_) => EXIT_NUMERICAL,
        };
        Self { code, message: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "krein-ext", version, about = "J-self-adjoint extensions with deficiency indices <2,2>")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one extension and report its stable C-symmetry.
    Classify(CommonArgs),
    /// List the extensions with empty resolvent set.
    Family(CommonArgs),
    /// Non-real eigenvalues of one extension inside a search box.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
        /// Also write the eigenvalues as CSV (re,im,residual).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run a model-problem check bundle.
    Examples {
        #[arg(value_enum)]
        name: ExampleName,
    },
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::validation(format!("cannot write {}: {e}", path.display())))
}

fn emit(cfg: &RunConfig, report: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    match &cfg.output {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn classify(args: CommonArgs) -> Result<u8, Failure> {
    let cfg = RunConfig::resolve(args, None)?;
    let u = cfg.extension()?;
    let classifier = Classifier::with_tol(&cfg.chardata()?, cfg.tol)?;
    let res = classifier.classify(&u);
    emit(&cfg, &report::classification(&cfg, &u, &res, &classifier.equivalence()))?;
    Ok(0)
}

fn family(args: CommonArgs) -> Result<u8, Failure> {
    let cfg = RunConfig::resolve(args, None)?;
    let eq = Classifier::with_tol(&cfg.chardata()?, cfg.tol)?.equivalence();
    let fam = EmptyResolventFamily::from_equivalence(eq);
    let mut v = report::header("family", &cfg);
    v["equivalence"] = report::equivalence(&eq);
    v["family"] = report::family(&fam);
    emit(&cfg, &v)?;
    Ok(0)
}

fn spectrum(args: CommonArgs, csv: Option<PathBuf>) -> Result<u8, Failure> {
    let cfg = RunConfig::resolve(args, csv)?;
    let u = cfg.extension()?;
    let probe = ResolventProbe::with_tol(&cfg.chardata()?, cfg.tol)?;
    let rep = probe.nonreal_eigenvalues(&u, &cfg.search_box)?;
    emit(&cfg, &report::spectrum(&cfg, &u, &rep))?;
    if let Some(path) = &cfg.csv {
        write_text(path, &report::eigen_csv(&rep))?;
    }
    Ok(if rep.verdict == Verdict::IdenticallyZeroDeterminant { EXIT_EMPTY_RESOLVENT } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Classify(args) => classify(args),
        Command::Family(args) => family(args),
        Command::Spectrum { common, csv } => spectrum(common, csv),
        Command::Examples { name } => Ok(if examples::run(name) { 0 } else { EXIT_EXAMPLE }),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
