//! Scenario files, sweeps and plot-ready output for `hom-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod literals;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Result;

#[derive(Debug, Parser)]
#[command(name = "hom", version, about = "Hong-Ou-Mandel interference sweeps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coincidence against delay, one block per photon numbers and mismatch.
    Dip(Common),
    /// Fock visibility over arm B's spectral width and center.
    Contour(Common),
    /// Best visibility and FWHM ratio for each pair of shapes.
    Tables(Common),
    /// Coherent-pulse visibility maps.
    Coherent(Common),
    /// Loss, depolarization and broadening channels.
    Channels(Common),
    /// Entanglement-swapping fidelity.
    Swap(Common),
    /// MDI table, error budget, key rate, sensing, classifier and fusion.
    Protocols(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML scenario file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override one value by dotted path, e.g. `profile_a.width_thz=0.25`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub sets: Vec<String>,
    /// Points per sweep axis.
    #[arg(long)]
    pub grid: Option<usize>,
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Dip(c)
            | Command::Contour(c)
            | Command::Tables(c)
            | Command::Coherent(c)
            | Command::Channels(c)
            | Command::Swap(c)
            | Command::Protocols(c) => c,
        }
    }
}

/// Runs one command and returns its rendered output.
pub fn render(command: &Command) -> Result<String> {
    use commands::*;
    use config::decode;

    let c = command.common();
    let table = config::load(c.config.as_deref(), &c.sets, c.grid)?;
    match command {
        Command::Dip(_) => dip::run(decode(table)?),
        Command::Contour(_) => contour::run(decode(table)?),
        Command::Tables(_) => tables::run(decode(table)?),
        Command::Coherent(_) => coherent::run(decode(table)?),
        Command::Channels(_) => channels::run(decode(table)?),
        Command::Swap(_) => swap::run(decode(table)?),
        Command::Protocols(_) => protocols::run(decode(table)?),
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let text = render(&cli.command)?;
    match &cli.command.common().out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
