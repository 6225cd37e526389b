use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use relcyc_cli::{init_threads, run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_threads();
    let out = run(&RunConfig::from(&cli));
    for m in &out.messages {
        eprintln!("{m}");
    }
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &out.report).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(out.report.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("{e}");
        return ExitCode::from(2);
    }
    ExitCode::from(out.status as u8)
}
