//! `lscat`: Lusternik-Schnirelmann category of rational chain complexes.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error, 3 support guard.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "lscat", version, about = "LS category of rational chain complexes")]
pub struct Cli {
    /// Largest Ganea level tried.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_n: usize,
    /// Seed for sampled audits.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest absolute degree any constructed complex may occupy.
    #[arg(long, global = true, default_value_t = 32)]
    pub support_guard: i64,
    /// Candidates tried when searching for a domination.
    #[arg(long, global = true, default_value_t = 32)]
    pub budget: usize,
    /// Write the result document here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Least n whose Ganea map admits a weak section.
    Cat { complex: PathBuf },
    /// Inductive category with a verified certificate.
    Indcat {
        complex: PathBuf,
        #[arg(long)]
        emit_cert: Option<PathBuf>,
    },
    /// Category of the dual complex.
    Cocat { complex: PathBuf },
    /// Inductive category of the dual complex.
    Indcocat {
        complex: PathBuf,
        #[arg(long)]
        emit_cert: Option<PathBuf>,
    },
    /// Check a certificate against a complex.
    VerifyCert { cert: PathBuf, complex: PathBuf },
    /// Join of two maps with a common target.
    Join { f: PathBuf, g: PathBuf },
    /// Ganea tower up to level n.
    Ganea {
        complex: PathBuf,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
    },
    /// Whether the first complex dominates the second.
    Dominates { x: PathBuf, y: PathBuf },
    /// Whether two complexes are weakly equivalent.
    Weq { x: PathBuf, y: PathBuf },
    /// Linear dual of a complex or chain map.
    Dualize { file: PathBuf },
    /// Sampled audit of the model-category axioms.
    CheckAxioms {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, hide = true)]
        corrupt_fibrations: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
