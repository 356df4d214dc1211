use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use basecondary::io::ErrorOut;
use basecondary::Error;

mod run;
mod svg;

/// Exact basecondary, secondary, Morse and tropical computations.
#[derive(Parser, Debug)]
#[command(name = "bck", version)]
pub struct Args {
    #[arg(value_enum)]
    pub verb: Verb,
    /// JSON problem file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output path, stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Seed for randomized verbs (required by them).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Multiple of the secondary support added before reconstruction.
    #[arg(long)]
    pub convexifier: Option<String>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Best-effort SVG dump of the relevant 2D picture.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Eval,
    EvalTerms,
    Simplicial,
    Circuital,
    Subdivision,
    Secondary,
    BasePolytope,
    Lovasz,
    CheckSubmodular,
    CheckCircuitCondition,
    Convexify,
    Polytope,
    MorseSupport,
    MaxwellSupport,
    MorsePolytope,
    TropMorse,
    TropSample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Morse,
    Maxwell,
}

const EXIT_DOMAIN: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const EXIT_USAGE: u8 = 64;

fn emit(args: &Args, text: &str) -> std::io::Result<()> {
    match &args.output {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (text, code) = match run::dispatch(&args) {
        Ok(value) => (value.to_string(), 0),
        Err(e) => {
            let code = match e {
                Error::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_DOMAIN,
            };
            (serde_json::to_string(&ErrorOut::new(&e)).expect("error payload"), code)
        }
    };
    if let Err(e) = emit(&args, &text) {
        eprintln!("bck: cannot write output: {e}");
        return ExitCode::from(EXIT_DOMAIN);
    }
    ExitCode::from(code)
}
