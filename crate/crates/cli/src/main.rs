use std::env;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use eulerian_cli::{run, Cli, OUTPUT_DIR_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", report.render(cli.format));
    if let Some(dir) = env::var_os(OUTPUT_DIR_ENV) {
        if let Err(e) = report.write_to_dir(cli.format, &PathBuf::from(dir)) {
            eprintln!("error: writing to ${OUTPUT_DIR_ENV}: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.status.code())
}
