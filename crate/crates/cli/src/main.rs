#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, SusyCommand};

/// A request that cannot be run as given; exits with status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn run(cli: Cli) -> anyhow::Result<()> {
    let (doc, out) = match &cli.command {
        Command::Spectrum(a) => (commands::levels(commands::LevelCommand::Spectrum, a)?, &a.output),
        Command::Ipt(a) => (commands::levels(commands::LevelCommand::Ipt, a)?, &a.output),
        Command::Oracle(a) => (commands::levels(commands::LevelCommand::Oracle, a)?, &a.output),
        Command::Table(a) => (commands::table(a)?, &a.output),
        Command::Vacuum(a) => (commands::vacuum(a)?, &a.output),
        Command::EffectivePotential(a) => (commands::effective_potential(a)?, &a.output),
        Command::Susy { command } => match command {
            SusyCommand::Ispp(a) => (commands::ispp(a)?, &a.output),
            SusyCommand::Scaling(a) => (commands::scaling(a)?, &a.output),
            SusyCommand::Wavefunction(a) => (commands::wavefunction(a)?, &a.output),
        },
    };
    let body = doc.render(out.format)?;
    output::write(out, &body).map_err(|e| {
        let target = out.out.as_ref().map_or("standard output".into(), |p| p.display().to_string());
        anyhow::Error::new(e).context(format!("cannot write {target}"))
    })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<anharmonic::Error>() {
        Some(anharmonic::Error::InvalidSpec(_) | anharmonic::Error::InvalidArgument(_)) => 2,
        Some(_) => 3,
        None if err.downcast_ref::<std::io::Error>().is_some() => 1,
        None => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
