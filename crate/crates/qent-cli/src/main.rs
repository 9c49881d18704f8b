use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qent_cli::commands::{self, BSideArg, BasisArg, CriterionArg, FamilyArg, MethodArg};
use qent_cli::report::Report;
use qent_cli::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Entanglement measures from operator expectation values, with
/// uncertainty-based and PPT entanglement criteria.
#[derive(Parser)]
#[command(name = "qent", version, about)]
struct Cli {
    /// Report format (JSON reports are deterministic and machine-readable)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an entanglement measure M(n) on a pure state
    Measure {
        /// State file (JSON; see the book for the schema)
        #[arg(long)]
        state: PathBuf,
        /// Measure order n ≥ 2
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Basis per chain slot (repeat n−1 times, or once to broadcast)
        #[arg(long = "basis")]
        bases: Vec<String>,
        /// Comma-separated factor indices to keep as subsystem A
        #[arg(long)]
        keep: Option<String>,
    },
    /// Run an entanglement criterion on a pure or mixed state
    Criterion {
        #[arg(long)]
        state: PathBuf,
        #[arg(long = "type", value_enum)]
        kind: CriterionArg,
        /// Basis family: pauli, gellmann, or weyl
        #[arg(long, default_value = "gellmann")]
        basis: String,
        /// B-side operator convention for the local criterion
        #[arg(long = "b-side", value_enum, default_value_t = BSideArg::Conjugate)]
        b_side: BSideArg,
    },
    /// Verify orthonormality, completeness, and the Hermitian sum rule
    BasisCheck {
        #[arg(long = "type", value_enum)]
        kind: BasisArg,
        #[arg(long)]
        dim: usize,
        /// Number of random probe operators
        #[arg(long, default_value_t = 20)]
        probes: usize,
        /// Probe generator seed (surfaced in the report)
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Schmidt spectrum and M(2..5) of a bipartite pure state
    Schmidt {
        #[arg(long)]
        state: PathBuf,
    },
    /// Sweep a state family and tabulate criteria side by side
    Scan {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Parameter grid start:stop:step (inclusive)
        #[arg(long)]
        grid: String,
        /// Comma-separated criteria: identity, local, collective, ppt
        #[arg(long)]
        criteria: String,
        #[arg(long, default_value = "gellmann")]
        basis: String,
        #[arg(long = "b-side", value_enum, default_value_t = BSideArg::Conjugate)]
        b_side: BSideArg,
    },
}

fn run(cli: &Cli, echo: Vec<String>) -> Result<Report, CliError> {
    match &cli.command {
        Command::Measure {
            state,
            n,
            method,
            bases,
            keep,
        } => commands::cmd_measure(echo, state, *n, *method, bases, keep.as_deref()),
        Command::Criterion {
            state,
            kind,
            basis,
            b_side,
        } => commands::cmd_criterion(echo, state, *kind, basis, *b_side),
        Command::BasisCheck {
            kind,
            dim,
            probes,
            seed,
        } => commands::cmd_basis_check(echo, *kind, *dim, *probes, *seed),
        Command::Schmidt { state } => commands::cmd_schmidt(echo, state),
        Command::Scan {
            family,
            grid,
            criteria,
            basis,
            b_side,
        } => commands::cmd_scan(echo, *family, grid, criteria, basis, *b_side),
    }
}

fn main() -> ExitCode {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(&cli, echo) {
        Ok(report) => {
            match cli.format {
                Format::Json => {
                    // Warnings stay off stdout so the JSON remains parseable
                    // in pipelines; they are still part of the report body.
                    for warning in &report.warnings {
                        eprintln!("warning: {warning}");
                    }
                    println!("{}", report.to_json());
                }
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{}", err.diagnostic());
            ExitCode::from(err.kind.code() as u8)
        }
    }
}
