mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "taustrat", version, about = "Stratifying systems and τ-exceptional sequences of τ-rigid modules")]
pub struct Cli {
    /// Override the field characteristic of the algebra file.
    #[arg(long, global = true)]
    pub field_char: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest module dimension explored while enumerating indecomposables.
    #[arg(long, global = true, default_value_t = 64)]
    pub dim_bound: usize,
    /// Number of closure rounds while enumerating indecomposables.
    #[arg(long, global = true, default_value_t = 64)]
    pub iteration_bound: usize,
    /// Largest hom space (in elements) enumerated by epimorphism searches.
    #[arg(long, global = true, default_value_t = 4096)]
    pub hom_cap: u128,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Algebra file checks.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Indecomposable modules.
    #[command(subcommand)]
    Indec(IndecCmd),
    /// Dimension and basis of Hom(M, N).
    Hom { file: PathBuf, m: String, n: String },
    /// Auslander-Reiten translate of a module.
    Tau {
        file: PathBuf,
        #[arg(long)]
        module: String,
        /// Apply the inverse translate instead.
        #[arg(long)]
        inverse: bool,
    },
    /// τ-tilting modules.
    #[command(subcommand)]
    Tautilt(TautiltCmd),
    /// Bongartz completion of a τ-rigid module.
    Bongartz {
        file: PathBuf,
        #[arg(long)]
        module: String,
    },
    /// Induced stratifying systems.
    #[command(subcommand)]
    Ss(SsCmd),
    /// Standard modules for a vertex order.
    Profile {
        file: PathBuf,
        /// Vertices from smallest to largest, e.g. `1,2,3`; all orders when omitted.
        #[arg(long)]
        order: Option<String>,
    },
    /// Signed τ-exceptional sequences.
    #[command(subcommand)]
    Exseq(ExseqCmd),
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum IndecCmd {
    List { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum TautiltCmd {
    List {
        file: PathBuf,
        /// List support τ-tilting pairs instead.
        #[arg(long)]
        support: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum SsCmd {
    Build {
        file: PathBuf,
        /// Summands joined by `+`, e.g. `P1+M12+S2`, or inline module JSON.
        #[arg(long)]
        module: String,
        /// 1-based positions of the summands, e.g. `2,1,3`.
        #[arg(long)]
        order: Option<String>,
    },
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        module: String,
    },
    Table {
        file: PathBuf,
        /// List every order and its induced family.
        #[arg(long)]
        audit: bool,
        /// Expected values; defaults to `<stem>.table1.tsv` next to the algebra file.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExseqCmd {
    Build {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        order: Option<String>,
    },
    Verify {
        file: PathBuf,
        /// JSON file holding the sequence.
        sequence: PathBuf,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<taustrat::Error>() {
        Some(e) if e.is_inconclusive() => 2,
        Some(e) if e.is_invariant_violation() => 3,
        _ => 1,
    }
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
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
