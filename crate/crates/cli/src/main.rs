use std::process::ExitCode;

use clap::Parser;
use mirrorlab_cli::config::{parse_config, Flags};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let flags = Flags::parse();
    let result = parse_config(flags).and_then(|config| mirrorlab_cli::run(&config, &mut std::io::stdout()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mirrorlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
