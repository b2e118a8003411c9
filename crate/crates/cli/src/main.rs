use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Deserialize;

use cstar_entropy_cli::{
    cmd_entropy, cmd_gns, cmd_oracle, cmd_schrodinger, cmd_structure, cmd_zeno, read_problem, to_json, CliError,
    MatrixJson, Problem, Settings, Unit,
};

#[derive(Parser, Debug)]
#[command(name = "cstar-entropy", version, about = "Entropy of states over finite-dimensional C*-algebras")]
struct Cli {
    /// Numerical tolerance [default: 1e-9]
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomized steps [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Oracle sample count [default: 1000]
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Report entropies in bits instead of nats
    #[arg(long, global = true)]
    bits: bool,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discover the block structure of the algebra
    Structure {
        file: PathBuf,
        /// Print the change-of-basis unitary
        #[arg(long)]
        show_unitary: bool,
    },
    /// Entropy of the state
    Entropy { file: PathBuf },
    /// Search random decompositions for one below the closed form
    Oracle { file: PathBuf },
    /// Decomposition of the representative induced by a unitary
    Schrodinger {
        file: PathBuf,
        #[arg(long)]
        unitary: PathBuf,
    },
    /// Entropy through the GNS representation
    Gns { file: PathBuf },
    /// Success probability of a k-step Zeno sequence
    Zeno {
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum UnitaryFile {
    Bare(MatrixJson),
    Wrapped { unitary: MatrixJson },
}

fn load(cli: &Cli, file: &PathBuf) -> Result<Problem, CliError> {
    let pf = read_problem(file)?;
    let settings = Settings::resolve(cli.tol, cli.seed, cli.samples, &pf.options);
    Problem::build(&pf, settings)
}

fn emit<R: serde::Serialize + std::fmt::Display>(json: bool, report: &R) {
    if json {
        println!("{}", to_json(report));
    } else {
        print!("{report}");
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let unit = Unit::from_bits_flag(cli.bits);
    match &cli.command {
        Command::Structure { file, show_unitary } => {
            let p = load(cli, file)?;
            emit(cli.json, &cmd_structure(&p, *show_unitary));
        }
        Command::Entropy { file } => emit(cli.json, &cmd_entropy(&load(cli, file)?, unit)?),
        Command::Oracle { file } => emit(cli.json, &cmd_oracle(&load(cli, file)?, unit)?),
        Command::Schrodinger { file, unitary } => {
            let p = load(cli, file)?;
            let text = std::fs::read_to_string(unitary).map_err(|e| CliError::Io {
                path: unitary.display().to_string(),
                message: e.to_string(),
            })?;
            let u = match serde_json::from_str::<UnitaryFile>(&text).map_err(|e| CliError::Parse(e.to_string()))? {
                UnitaryFile::Bare(m) | UnitaryFile::Wrapped { unitary: m } => m,
            };
            emit(cli.json, &cmd_schrodinger(&p, &u, unit)?);
        }
        Command::Gns { file } => emit(cli.json, &cmd_gns(&load(cli, file)?, unit)?),
        Command::Zeno { k } => emit(cli.json, &cmd_zeno(*k)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
