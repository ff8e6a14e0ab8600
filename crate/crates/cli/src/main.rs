use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use moment_models::ComplexValue;
use moment_models_cli::commands::{self, parse_complex};
use moment_models_cli::{CliError, Document, Kind};
use serde_json::Value;

/// Exact conversions between moment sequences, measures, Jacobi matrices,
/// strings, Hamiltonians and rational Weyl functions.
#[derive(Parser)]
#[command(name = "moment-models", version)]
struct Cli {
    /// Input document (default: stdin).
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Positivity, double positivity and finite rank of the moments.
    Classify,
    /// Convert the document to another kind.
    Convert {
        #[arg(long)]
        to: Kind,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Evaluate the Weyl function at the given points.
    Mfun {
        #[arg(long = "z", required = true, allow_hyphen_values = true)]
        z: Vec<String>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Coefficients of the Weyl function's expansion at infinity.
    Expand {
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Moments of the document.
    Moments {
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Convert to another kind and back, reporting whether the data survive.
    Roundtrip {
        #[arg(long)]
        to: Kind,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Classification, Weyl routes, residuals and the size trajectory.
    Report {
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long = "z", allow_hyphen_values = true)]
        z: Vec<String>,
    },
}

fn read_input(path: Option<&PathBuf>) -> Result<Document, CliError> {
    let text = match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| CliError::malformed(format!("{}: {e}", p.display())))?,
        None => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::malformed(format!("stdin: {e}")))?;
            buf
        }
    };
    Document::parse(&text)
}

fn points(z: &[String]) -> Result<Vec<ComplexValue>, CliError> {
    if z.is_empty() {
        return Ok(vec![ComplexValue::new(0.0, 1.0)]);
    }
    z.iter().map(|s| parse_complex(s)).collect()
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    let doc = read_input(cli.input.as_ref())?;
    match &cli.command {
        Command::Classify => commands::classify_document(&doc),
        Command::Convert { to, depth } => Ok(commands::convert(&doc, *to, *depth)?.to_json()),
        Command::Mfun { z, depth } => commands::mfun(&doc, &points(z)?, *depth),
        Command::Expand { depth } => commands::expand(&doc, *depth),
        Command::Moments { depth } => Ok(commands::moments(&doc, *depth)?.to_json()),
        Command::Roundtrip { to, depth } => commands::roundtrip(&doc, *to, *depth),
        Command::Report { depth, z } => commands::report(&doc, *depth, &points(z)?),
    }
}

fn write_output(path: Option<&PathBuf>, value: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("json values print");
    text.push('\n');
    let result = match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    result.map_err(|e| CliError::malformed(format!("cannot write output: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli).and_then(|value| write_output(cli.output.as_ref(), &value)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
