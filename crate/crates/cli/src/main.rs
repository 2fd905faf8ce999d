use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use dressed_cli::{exit_code, Cli, Error, EXIT_INVARIANT, EXIT_USAGE};

fn run(cli: &Cli) -> anyhow::Result<()> {
    let cfg = cli.resolve()?;
    let artifacts = cli.execute(&cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &artifacts.csv)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(artifacts.csv.as_bytes())?,
    }
    if let (Some(path), Some(svg)) = (&cfg.svg, &artifacts.svg) {
        std::fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    }
    for note in &artifacts.notes {
        eprintln!("{note}");
    }
    match artifacts.violation {
        Some(msg) => Err(Error::InvariantViolation(msg).into()),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = exit_code(&e);
            debug_assert!(code <= EXIT_INVARIANT);
            ExitCode::from(code as u8)
        }
    }
}
