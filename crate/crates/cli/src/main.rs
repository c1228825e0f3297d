use std::process::ExitCode;

fn main() -> ExitCode {
    let code = awfslab::run_subcommand(std::env::args());
    ExitCode::from(code as u8)
}
