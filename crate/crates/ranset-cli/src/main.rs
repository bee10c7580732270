use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    let code = ranset_cli::execute(std::env::args_os(), &mut stdout);
    let _ = stdout.flush();
    ExitCode::from(code as u8)
}
