use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use trinomax_cli::{run, Cli, EXIT_BAD_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let _ = e.print();
            return ExitCode::from(EXIT_BAD_INPUT as u8);
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            if cli.json {
                println!("{}", e.body());
            } else {
                eprintln!("error: {}", e.message);
                eprintln!("{}", e.body());
            }
            return ExitCode::from(EXIT_BAD_INPUT as u8);
        }
    };
    let out = if cli.json {
        report.to_json() + "\n"
    } else if cli.csv {
        match report.to_csv() {
            Some(s) => s,
            None => {
                eprintln!("{}", trinomax_cli::CliError { kind: "InvalidArgument", message: format!("{} has no CSV output", report.command) }.body());
                return ExitCode::from(EXIT_BAD_INPUT as u8);
            }
        }
    } else {
        report.to_table()
    };
    let _ = std::io::stdout().write_all(out.as_bytes());
    ExitCode::from(report.exit_code as u8)
}
