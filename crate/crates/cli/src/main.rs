use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use innerdist_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    let code = match run(cli, &mut out, &mut err) {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
