use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use enriched_cli::{run, Cli};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let argv = args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    let report = run(&cli, &argv);
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(report.render(cli.format).as_bytes());
    ExitCode::from(report.exit_code() as u8)
}
