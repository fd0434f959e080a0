use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qwalk::cli::run(std::env::args_os()))
}
