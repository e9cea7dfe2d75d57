//! `ila`: analyses of linear multiports described in netlist files.

mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "ila", version, about = "Exact analysis of linear multiports")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Write the result to a file instead of standard output.
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BehaviourMethod {
    Eliminate,
    AdjointGyrator,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MaxpowerMethod {
    Stationarity,
    AdjointTransformer,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Reciprocal,
    Dirac,
    IdealTransformer,
    Passive,
    StrictlyPassive,
    Proper,
    Regular,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Subject {
    Behaviour,
    Device,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Rational,
    Gaussian,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Port behaviour of a multiport.
    Behaviour {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "eliminate")]
        method: BehaviourMethod,
    },
    /// Whether every source setting is solvable with a unique interior.
    Regular { file: PathBuf },
    /// The adjoint multiport as a netlist.
    Adjoint { file: PathBuf },
    /// Stationary point of the power delivered by the ports.
    Maxpower {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "stationarity")]
        method: MaxpowerMethod,
    },
    /// Parse a netlist and report its characteristic properties.
    Check {
        file: PathBuf,
        /// Exit 1 unless this property holds.
        #[arg(long, value_enum)]
        property: Option<Property>,
        /// Space the properties are evaluated on.
        #[arg(long = "of", value_enum, default_value = "behaviour")]
        subject: Subject,
    },
    /// Randomized checks of the algebraic identities.
    Verify {
        /// idt, iit, tellegen, ranks or thevenin.
        #[arg(long)]
        suite: ila_core::suites::Suite,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Size bound: |S|, |P|, |Q| for idt, iit and ranks; vertices for
        /// tellegen; internal edges for thevenin.
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, value_enum, default_value = "rational")]
        field: Field,
    },
}

fn colored() -> bool {
    std::env::var("ILA_COLOR").is_ok_and(|v| v == "1")
}

fn report_error(message: &str) {
    let tag = if colored() {
        "\x1b[1;31merror\x1b[0m"
    } else {
        "error"
    };
    eprintln!("ila: {tag}: {message}");
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Behaviour { file, method } => commands::behaviour(file, *method),
        Command::Regular { file } => commands::regular(file),
        Command::Adjoint { file } => commands::adjoint(file),
        Command::Maxpower { file, method } => commands::maxpower(file, *method),
        Command::Check {
            file,
            property,
            subject,
        } => commands::check(file, *property, *subject),
        Command::Verify {
            suite,
            trials,
            seed,
            max_size,
            field,
        } => Ok(commands::verify(
            *suite,
            *trials,
            *seed,
            max_size.unwrap_or(suite.default_size()),
            *field,
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(f) => {
            report_error(&f.message);
            return ExitCode::from(f.code);
        }
    };
    let body = if cli.json {
        let mut s = serde_json::to_string_pretty(&outcome.json).expect("json values serialize");
        s.push('\n');
        s
    } else {
        outcome.text
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &body).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        report_error(&e);
        return ExitCode::from(3);
    }
    ExitCode::from(if outcome.negative { 1 } else { 0 })
}
