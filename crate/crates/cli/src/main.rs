use std::io::Write;
use std::process::ExitCode;

use ainfty_cli::{render, run, serve, Cli, Command};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve { port } = cli.command {
        let rt = match tokio::runtime::Runtime::new() {
            Ok(rt) => rt,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
        };
        return match rt.block_on(serve::serve(port)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let (code, out) = render(&run(&cli.command), cli.json);
    let mut stdout = std::io::stdout().lock();
    if code >= 2 && !cli.json {
        eprint!("{out}");
    } else {
        let _ = stdout.write_all(out.as_bytes());
    }
    ExitCode::from(code)
}
