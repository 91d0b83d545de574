use std::process::ExitCode;

use qtype_cli::{emit, run, RunConfig, EXIT_INPUT};

fn main() -> ExitCode {
    let cfg = match RunConfig::parse_from(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let outcome = run(&cfg);
    if let Some(err) = &outcome.error {
        eprintln!("error: {err}");
    }
    if let Err(e) = emit(&cfg, &outcome) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(EXIT_INPUT as u8);
    }
    ExitCode::from(outcome.code as u8)
}
