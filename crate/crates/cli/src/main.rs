use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use effradius_cli::{run, Cli, CliError, JobConfig};

fn execute(cli: &Cli) -> Result<(), CliError> {
    let config = JobConfig::from_command(&cli.command)?;
    let output = run(&config)?;
    match &config.out {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(output.as_bytes())
                .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
