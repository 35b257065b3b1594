mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{AlgebraCmd, Cli, Command, ElementCmd, OmegaCmd, PolyCmd, RelationsCmd};
use casimir_core::{par, Error};
use commands::Outcome;

fn dispatch(cli: &Cli, command_line: &[String]) -> casimir_core::Result<Outcome> {
    let manifest = output::manifest(command_line, cli.seed);
    match &cli.command {
        Command::Algebra { action: AlgebraCmd::Info { name } } => commands::algebra_info(name, manifest),
        Command::Omega { action: OmegaCmd::Table { k } } => commands::omega_table(*k, manifest),
        Command::Poly { action: PolyCmd::VerifyInvariant { algebra, family, params, graph, domain } } => {
            commands::verify_invariant(algebra, *family, params.as_deref(), graph.as_deref(), *domain, manifest)
        }
        Command::Element { action } => match action {
            ElementCmd::Build { family, params } => commands::element_build(*family, params, manifest),
            ElementCmd::VerifyCentral { input, brute_force } => commands::verify_central(input, *brute_force, manifest),
            ElementCmd::G2DetCheck { mode, generators } => {
                commands::g2_det(*mode, generators, cli.allow_long, manifest)
            }
        },
        Command::Relations { action: RelationsCmd::Check { id, n, k } } => commands::relation(id, *n, *k, manifest),
        Command::Selftest => commands::selftest(cli.seed, manifest),
        Command::Bench(b) => commands::bench(b.repeat, manifest),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_line: Vec<String> = std::env::args().skip(1).collect();
    let result = match cli.threads {
        Some(0) => Err(Error::InvalidInput("--threads must be positive".into())),
        Some(n) => par::with_threads(n, || dispatch(&cli, &command_line)),
        None => dispatch(&cli, &command_line),
    };
    match result {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            for line in &outcome.lines {
                // A closed pipe (e.g. `| head`) just ends the output.
                if writeln!(out, "{line}").is_err() {
                    break;
                }
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Error::Consistency(msg)) => {
            eprintln!("error: internal consistency failure: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
