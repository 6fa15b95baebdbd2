use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use niemytzki_lab_cli::{configure_threads, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| {
        let output = run(&cli)?;
        if let Some(dir) = &cli.out {
            output.write_to(dir)?;
        }
        // a closed pipe on stdout is not a failure of the run
        let _ = std::io::stdout().write_all(output.summary.as_bytes());
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
