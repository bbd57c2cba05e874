use std::io::Write;
use std::process::ExitCode;

use ahs_cli::args::parse_config;

fn main() -> ExitCode {
    let config = match parse_config(std::env::args_os()) {
        Ok(Ok(c)) => c,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
        Err(e) => {
            let _ = e.print();
            // Help and version requests are not failures.
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match ahs_cli::run(&config) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(report.render().as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
