use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = etl_cli::run(std::env::args_os());
    let mut out: Box<dyn Write> = if result.code == 2 { Box::new(std::io::stderr()) } else { Box::new(std::io::stdout()) };
    // a closed pipe is not worth a panic
    let _ = out.write_all(result.output.as_bytes());
    ExitCode::from(result.code as u8)
}
