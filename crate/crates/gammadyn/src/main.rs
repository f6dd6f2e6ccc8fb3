use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use gammadyn::input::parse_rational;
use gammadyn::{run, AnalysisRequest, Command, OptionOverrides, RunError};
use gammadyn_core::BigRational;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CommandArg {
    /// Fixed points, expansiveness and ergodicity of a matrix action on a torus
    Toral,
    /// First cohomology of a group acting on a finite module
    H1,
    /// Certified l1 inverse of a lopsided group-ring element
    Invert,
    /// Finite-quotient model and homoclinic point of a principal action
    Shift,
    /// The built-in expansive but non-ergodic action on the 3-torus
    PaperExample,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Self {
        match c {
            CommandArg::Toral => Command::Toral,
            CommandArg::H1 => Command::H1,
            CommandArg::Invert => Command::Invert,
            CommandArg::Shift => Command::Shift,
            CommandArg::PaperExample => Command::PaperExample,
        }
    }
}

fn rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("{s:?} is not a rational such as 1/1000000 or 0.001"))
}

/// Exact analyses of algebraic group actions, reported as JSON.
///
/// Exit codes: 0 decided, 1 some verdict unknown within the bounds, 2 bad
/// input, 3 internal error. GAMMADYN_THREADS caps the worker threads.
#[derive(Parser, Debug)]
#[command(name = "gammadyn", version)]
struct Cli {
    #[arg(value_enum)]
    command: CommandArg,

    /// JSON payload; read from stdin when absent (paper-example needs none)
    #[arg(long)]
    input: Option<PathBuf>,

    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,

    /// Sup-norm bound of the finite-orbit character search [default: 20]
    #[arg(long)]
    norm_bound: Option<u64>,

    /// Largest orbit explored per character [default: 10000]
    #[arg(long)]
    orbit_cap: Option<usize>,

    /// Word length of the expansiveness search [default: 8]
    #[arg(long)]
    depth: Option<usize>,

    /// Accuracy of l1 inverses, e.g. 1/1000000 [default: 1/1000000]
    #[arg(long, value_parser = rational_arg)]
    epsilon: Option<BigRational>,
}

fn read_payload(cli: &Cli) -> Result<Option<serde_json::Value>, RunError> {
    let text = match (&cli.input, cli.command) {
        (Some(path), _) => {
            fs::read_to_string(path).map_err(|e| RunError::bad_input(format!("cannot read {}: {e}", path.display())))?
        }
        (None, CommandArg::PaperExample) => return Ok(None),
        (None, _) => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| RunError::bad_input(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    let value = serde_json::from_str(&text).map_err(|e| RunError::bad_input(format!("invalid JSON: {e}")))?;
    Ok(Some(value))
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = read_payload(&cli).and_then(|payload| {
        run(&AnalysisRequest {
            command: cli.command.into(),
            payload,
            options: OptionOverrides {
                norm_bound: cli.norm_bound,
                orbit_cap: cli.orbit_cap,
                search_depth: cli.depth,
                epsilon: cli.epsilon.clone(),
            },
        })
    });
    let (text, code) = match outcome {
        Ok(report) => (report.to_json(), report.exit_code()),
        Err(e) => {
            eprintln!("gammadyn: {e}");
            let mut s = serde_json::to_string_pretty(&e.to_json()).expect("error objects serialize");
            s.push('\n');
            (s, e.exit_code())
        }
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("gammadyn: cannot write the report: {e}");
        return ExitCode::from(3);
    }
    ExitCode::from(code as u8)
}
