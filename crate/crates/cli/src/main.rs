use std::process::ExitCode;

use clap::Parser;
use iwasawa_cli::{emit, render, run, Cli, RunConfig, EXIT_INPUT};

fn main() -> ExitCode {
    let cfg = RunConfig::from(Cli::parse());
    match run(&cfg) {
        Ok((code, report)) => {
            if let Err(e) = emit(&render(&report, cfg.output_format), cfg.out_path.as_deref()) {
                eprintln!("error: writing report: {e}");
                return ExitCode::from(EXIT_INPUT as u8);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
