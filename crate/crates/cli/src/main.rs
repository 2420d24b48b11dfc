use std::io::Write;
use std::process::ExitCode;

use charvar_cli::commands::{execute, Cli};
use charvar_cli::config::RunConfig;
use charvar_cli::CliError;
use clap::Parser;

fn emit(doc: &serde_json::Value, cfg: &RunConfig) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc).expect("serializable") + "\n";
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::load(cli.config.as_deref(), cli.seed, cli.output.clone())?;
    match execute(&cli.command, &cfg) {
        Ok(doc) => emit(&doc, &cfg),
        Err(CliError::Check(doc)) => {
            // Failed checks still produce their report.
            match serde_json::from_str::<serde_json::Value>(&doc) {
                Ok(v) => emit(&v, &cfg)?,
                Err(_) => eprintln!("{doc}"),
            }
            Err(CliError::Check("tolerance exceeded".into()))
        }
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("charvar: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
