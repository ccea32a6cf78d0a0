use std::process::ExitCode;

use segreta_cli::app::SEED_ENV;
use segreta_cli::{run_command, CliError};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let env_seed = std::env::var(SEED_ENV).ok();
    match run_command(&argv, env_seed.as_deref()) {
        Ok(out) => {
            print!("{}", out.render());
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            ExitCode::from(e.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
