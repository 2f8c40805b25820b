//! `quadnewton`: generate, evaluate and verify the symbolic Newton iterates
//! of `ax^2 + bx + c`.
//!
//! Exit codes: 0 pass, 1 verification failure or domain error, 2 usage
//! error, 3 iteration cap exceeded.

mod generate;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadnewton::newton::{self, QuadraticCoeffs, DEFAULT_CAP};
use quadnewton::{Error, Rational};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "quadnewton", version, about, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build (P_n, Q_n) and print it.
    Generate(generate::GenerateArgs),
    /// Evaluate P_n(x0)/Q_n(x0) and cross-check against n Newton steps.
    Eval(EvalArgs),
    /// Run one verification suite.
    Verify {
        #[command(subcommand)]
        suite: verify::Suite,
    },
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct EvalArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    a: Rational,
    #[arg(long)]
    b: Rational,
    #[arg(long)]
    c: Rational,
    #[arg(long)]
    x: Rational,
    #[arg(long, value_enum, default_value_t = EvalFormat::Text)]
    format: EvalFormat,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EvalFormat {
    Text,
    Json,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
    Resource(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failed(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => CliError::Resource(e.to_string()),
            Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::NonIntegral(_)
            | Error::NotQuadratic => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failed(format!("i/o error: {e}"))
    }
}

/// Writes `text` to `out` if given, else to stdout.
pub fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct EvalOutput {
    n: u32,
    x: String,
    pair: String,
    newton: String,
    agree: bool,
}

fn run_eval(args: &EvalArgs) -> Result<(), CliError> {
    let coeffs = QuadraticCoeffs::new(args.a.clone(), args.b.clone(), args.c.clone())?;
    let pair = newton::iterate_pair_capped(args.n, args.cap)?;
    let via_pair = newton::eval_pair(&pair, &coeffs, &args.x)?;
    let via_steps = newton::newton_iterate(&coeffs, &args.x, args.n)?;
    let agree = via_pair == via_steps;
    match args.format {
        EvalFormat::Text => emit(&format!("{via_pair}\n"), None)?,
        EvalFormat::Json => emit(
            &to_json_line(&EvalOutput {
                n: args.n,
                x: args.x.to_string(),
                pair: via_pair.to_string(),
                newton: via_steps.to_string(),
                agree,
            }),
            None,
        )?,
    }
    if !agree {
        return Err(CliError::Failed(format!(
            "P_n/Q_n gives {via_pair} but {} Newton steps give {via_steps}",
            args.n
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(args) => generate::run(args),
        Command::Eval(args) => run_eval(args),
        Command::Verify { suite } => verify::run(suite),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
