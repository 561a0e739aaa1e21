use std::process::ExitCode;

fn main() -> ExitCode {
    lecalc::cli::main()
}
