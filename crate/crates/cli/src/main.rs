use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use optomirror_cli::commands::{self, Output};
use optomirror_cli::{load_config, CliError, RunConfig};

#[derive(Parser)]
#[command(name = "optomirror", version, about = "Single-photon superposition of a cavity mirror: curves, checks and simulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Flat key=value configuration file; defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Random seed, overrides `mc.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override one config key, `key=value`. May be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Visibility and phase over theta, CSV.
    Visibility(Common),
    /// Compare the Fock-space oracle with the closed form.
    Validate(Common),
    /// Experimental requirements report.
    Feasibility(Common),
    /// Monte Carlo event list, CSV.
    Montecarlo(Common),
    /// Visibility at 1 mK and 60 uK, CSV.
    Fig2(Common),
    /// Print the effective configuration.
    Config(Common),
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (common, command): (&Common, fn(&RunConfig) -> Result<Output, CliError>) = match &cli.command {
        Command::Visibility(c) => (c, commands::visibility),
        Command::Validate(c) => (c, commands::validate),
        Command::Feasibility(c) => (c, commands::feasibility),
        Command::Montecarlo(c) => (c, commands::montecarlo),
        Command::Fig2(c) => (c, commands::fig2),
        Command::Config(c) => (c, |cfg| Ok(Output { body: cfg.to_kv_string(), ..Output::default() })),
    };
    let mut config = load_config(common.config.as_deref(), &common.set)?;
    if let Some(seed) = common.seed {
        config.mc_seed = seed;
    }
    let output = command(&config)?;
    write_output(common.out.as_deref(), &output.body)?;
    if !output.summary.is_empty() {
        eprint!("{}", output.summary);
    }
    match output.failure {
        Some(reason) => Err(CliError::Validation(reason)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("optomirror: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
