use std::io::Write;
use std::process::ExitCode;

use cocart::cli::{run, Job, EXIT_PARSE};

fn main() -> ExitCode {
    let job = match Job::parse_from(std::env::args_os()) {
        Ok(j) => j,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let out = run(&job);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
