use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(geomforge::cli::run(std::env::args_os()))
}
