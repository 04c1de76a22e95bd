mod commands;
mod error;
mod options;

use std::io::Write;
use std::panic;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::error::{CliError, ExitKind};
use crate::options::{Cli, FileConfig};

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .format(|buf, record| {
            writeln!(
                buf,
                "keygraph: {}: {}",
                record.level().as_str().to_lowercase(),
                record.args()
            )
        })
        .init();
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    if let Some(jobs) = cli.jobs.or(file.jobs) {
        if jobs == 0 {
            return Err(CliError::usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::usage(format!("cannot set up {jobs} worker threads: {e}")))?;
    }
    commands::run(cli.command, &file)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("keygraph: {}", first.trim_start_matches("error: "));
            return ExitCode::from(ExitKind::Usage as u8);
        }
    };
    init_logging(cli.verbose);

    panic::set_hook(Box::new(|info| {
        let message = info
            .payload()
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| info.payload().downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".to_string());
        let message = message.lines().next().unwrap_or_default().to_string();
        match info.location() {
            Some(loc) => eprintln!(
                "keygraph: internal error: {message} at {}:{}",
                loc.file(),
                loc.line()
            ),
            None => eprintln!("keygraph: internal error: {message}"),
        }
    }));

    match panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("keygraph: {}", e.message.lines().next().unwrap_or_default());
            ExitCode::from(e.kind as u8)
        }
        Err(_) => ExitCode::from(ExitKind::Internal as u8),
    }
}
