use std::io::Write;
use std::process::ExitCode;

use seifert_cli::{run, Status};

fn main() -> ExitCode {
    let result = run(std::env::args_os());
    let written = match result.status {
        Status::Ok => std::io::stdout().write_all(result.output.as_bytes()),
        Status::Error => std::io::stderr().write_all(result.output.as_bytes()),
    };
    if written.is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(result.exit_code as u8)
}
