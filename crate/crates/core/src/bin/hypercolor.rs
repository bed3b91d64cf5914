use std::io::Write;
use std::process::ExitCode;

use hypercolor::cli::{run, CliError};

fn main() -> ExitCode {
    match run(std::env::args_os()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.status as u8)
        }
        Err(CliError::Usage(e)) => {
            // --help and --version print to stdout and exit 0
            let _ = e.print();
            ExitCode::from(e.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
