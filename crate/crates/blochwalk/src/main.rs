use std::process::ExitCode;

use blochwalk::config::Cli;
use blochwalk::run_experiment;
use clap::Parser;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version are not errors
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = cli.run_args().resolve().and_then(|config| run_experiment(&config));
    match result {
        Ok(manifest) => {
            println!(
                "wrote {} files to {} in {:.2}s",
                manifest.files.len() + 1,
                manifest.config.out_dir.display(),
                manifest.duration_seconds
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("blochwalk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
