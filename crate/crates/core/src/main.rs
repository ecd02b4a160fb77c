use std::process::ExitCode;

fn main() -> ExitCode {
    amplify::cli::main_with_args(std::env::args_os())
}
