use std::process::ExitCode;

fn main() -> ExitCode {
    let out = dgdual_cli::run_command(std::env::args_os());
    if !out.stdout_report.is_empty() {
        println!("{}", out.stdout_report);
    }
    if !out.diagnostics.is_empty() {
        eprintln!("{}", out.diagnostics);
    }
    ExitCode::from(out.exit_code as u8)
}
