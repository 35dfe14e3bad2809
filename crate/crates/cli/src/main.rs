use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use equimap_cli::commands::EXIT_USAGE;
use equimap_cli::{parse_spec, run, CliError, Command, Flags};

/// Decide whether equivariant maps S(V) -> S(W) exist for tori and p-tori.
#[derive(Parser, Debug)]
#[command(name = "equimap", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Read the instance from a file.
    #[arg(long, conflicts_with = "stdin")]
    file: Option<PathBuf>,
    /// Read the instance from standard input.
    #[arg(long)]
    stdin: bool,
    /// Emit the JSON report instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random instances (and random subgroups) for `verify`.
    #[arg(long, default_value_t = 1000)]
    instances: usize,
    /// Report fixed-point dimensions over the reals.
    #[arg(long)]
    real_dims: bool,
    /// Also evaluate all four torus criteria.
    #[arg(long)]
    all_conditions: bool,
    /// Subgroup for `fixdim`, given by generators of its annihilator, e.g. "(3)" or "(2,0),(0,2)".
    #[arg(long = "subgroup")]
    subgroups: Vec<String>,
}

fn read_input(args: &Args) -> Result<Option<String>, CliError> {
    let io_error = |e: std::io::Error| CliError::Usage(format!("cannot read input: {e}"));
    if let Some(path) = &args.file {
        return std::fs::read_to_string(path).map(Some).map_err(io_error);
    }
    if args.stdin {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io_error)?;
        return Ok(Some(text));
    }
    Ok(None)
}

fn execute(args: &Args) -> Result<(String, i32), CliError> {
    let instance = read_input(args)?.map(|text| parse_spec(&text)).transpose()?;
    let flags = Flags {
        seed: args.seed,
        instances: args.instances,
        real_dims: args.real_dims,
        all_conditions: args.all_conditions,
        subgroups: args.subgroups.clone(),
    };
    let report = run(args.command, instance.as_ref(), &flags)?;
    let text = if args.json { report.to_json() + "\n" } else { report.to_text() };
    Ok((text, report.exit_code))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("equimap: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
