use std::process::ExitCode;

fn main() -> ExitCode {
    bqct::cli::execute(std::env::args())
}
