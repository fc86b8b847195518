use std::process::ExitCode;

fn main() -> ExitCode {
    discgrowth::cli::run(std::env::args_os())
}
