use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

mod commands;
mod input;

/// Satellite operator calculus. Reads a JSON object on stdin (or from
/// `--input`) and writes one JSON result to stdout.
#[derive(Parser, Debug)]
#[command(name = "satcalc", version)]
struct Cli {
    /// wind, apply, compose, twist, to-link, alex, sig, det, fox-milnor,
    /// strong, member, invert, apply-surgered, h1, obstruct, distinguish,
    /// catalog
    command: String,

    /// Move budget for group-theoretic searches.
    #[arg(long, default_value_t = satcalc::groups::tietze::DEFAULT_BUDGET)]
    budget: usize,

    /// Denominator of the signature sample grid.
    #[arg(long)]
    samples: Option<i64>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for randomized searches. All current searches are exhaustive and
    /// ignore it.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Read the input object from a file instead of stdin.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

pub struct Options {
    pub budget: usize,
    pub samples: i64,
    pub samples_given: bool,
}

#[derive(Debug)]
pub enum CliError {
    UnknownCommand(String),
    MalformedJson(String),
    Schema(String),
    Usage(String),
    Io(String),
    Core(satcalc::Error),
}

impl From<satcalc::Error> for CliError {
    fn from(e: satcalc::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        use satcalc::Error as E;
        match self {
            CliError::UnknownCommand(_) => "unknown_command",
            CliError::MalformedJson(_) => "malformed_json",
            CliError::Schema(_) => "schema_violation",
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Core(e) => match e {
                E::MalformedWord { .. } => "malformed_word",
                E::SliceSyntax(_) => "slice_syntax",
                E::InvalidPd(_) => "invalid_pd",
                E::InvalidBraid(_) => "invalid_braid",
                E::UnknownComponent(_) => "unknown_component",
                E::NotAKnot(_) => "not_a_knot",
                E::AbelianizationNotZ(_) => "abelianization_not_z",
                E::NotKnotPolynomial(_) => "not_knot_polynomial",
                E::NotHomologySphere(_) => "not_homology_sphere",
                E::UnknownCatalogName(_) => "unknown_catalog_name",
                E::InvalidParameter(_) => "invalid_parameter",
                E::Refused(_) => "refused",
                E::OnJump => "on_jump",
                E::Catalog(_) => "catalog",
                E::Internal(_) => "internal",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::UnknownCommand(c) => {
                format!(
                    "unknown command {c:?}; expected one of {}",
                    commands::COMMANDS.join(", ")
                )
            }
            CliError::MalformedJson(m) => format!("input is not valid JSON: {m}"),
            CliError::Schema(m) => format!("input does not match the command schema: {m}"),
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Error,
    Inconclusive,
}

#[derive(Serialize)]
struct CommandResult {
    status: Status,
    payload: Value,
    /// Milliseconds.
    timing: u64,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    let mut s = String::new();
    match path {
        Some(p) => {
            s = std::fs::read_to_string(p)
                .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(s)
}

fn execute(cli: &Cli) -> Result<commands::Outcome, CliError> {
    if !commands::COMMANDS.contains(&cli.command.as_str()) {
        return Err(CliError::UnknownCommand(cli.command.clone()));
    }
    let input = input::Input::parse(&read_input(cli.input.as_ref())?)?;
    let opts = Options {
        budget: cli.budget,
        samples: cli.samples.unwrap_or(12),
        samples_given: cli.samples.is_some(),
    };
    commands::run(&cli.command, &input, &opts)
}

fn emit(result: &CommandResult, format: Format) {
    let text = match format {
        Format::Json => serde_json::to_string(result),
        Format::Pretty => serde_json::to_string_pretty(result),
    };
    println!("{}", text.expect("result serializes"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.kind().to_string());
            eprint!("{e}");
            let payload = json!({ "code": err.code(), "message": err.message() });
            emit(
                &CommandResult {
                    status: Status::Error,
                    payload,
                    timing: 0,
                },
                Format::Json,
            );
            return ExitCode::from(1);
        }
    };
    let start = Instant::now();
    let outcome = execute(&cli);
    let timing = start.elapsed().as_millis() as u64;
    let (result, code) = match outcome {
        Ok(o) if o.conclusive => (
            CommandResult {
                status: Status::Ok,
                payload: o.payload,
                timing,
            },
            0,
        ),
        Ok(o) => (
            CommandResult {
                status: Status::Inconclusive,
                payload: o.payload,
                timing,
            },
            2,
        ),
        Err(e) => {
            let payload = json!({ "code": e.code(), "message": e.message() });
            (
                CommandResult {
                    status: Status::Error,
                    payload,
                    timing,
                },
                1,
            )
        }
    };
    emit(&result, cli.format);
    ExitCode::from(code)
}
