use std::io::Write;
use std::process::ExitCode;

use zinbiel_cli::{run_command, EXIT_INPUT};

fn main() -> ExitCode {
    let (code, out) = run_command(std::env::args_os());
    let written = if code == EXIT_INPUT {
        std::io::stderr().write_all(out.as_bytes())
    } else {
        std::io::stdout().write_all(out.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(EXIT_INPUT as u8);
    }
    ExitCode::from(code as u8)
}
