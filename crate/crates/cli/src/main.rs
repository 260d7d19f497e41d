use std::process::ExitCode;

fn main() -> ExitCode {
    wban_cli::run()
}
