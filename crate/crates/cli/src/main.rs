use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(origami::run(std::env::args_os()))
}
