use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(msg) = ramcoh_cli::configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let d = ramcoh_cli::dispatch(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(d.stdout.as_bytes());
    let _ = std::io::stderr().write_all(d.stderr.as_bytes());
    ExitCode::from(d.code as u8)
}
