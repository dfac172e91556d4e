use std::process::ExitCode;

use clap::Parser;
use hlcluster_cli::commands::{execute, Cli, CliError, Command};
use hlcluster_cli::server;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve { port } = cli.command {
        let runtime = match tokio::runtime::Runtime::new() {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        };
        return match runtime.block_on(server::serve(port)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    match execute(&cli.command) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n";
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
