use std::process::ExitCode;

use clap::Parser;
use widthlab_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.report.render(cli.stable));
            if let Some(path) = &cli.json {
                let mut text = serde_json::to_string_pretty(&out.report.to_json(cli.stable))
                    .expect("report serializes");
                text.push('\n');
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("widthlab: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(out.exit)
        }
        Err(fatal) => {
            eprintln!("widthlab: {}", fatal.message);
            ExitCode::from(fatal.code)
        }
    }
}
