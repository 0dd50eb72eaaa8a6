mod args;
mod commands;
mod output;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use commands::CliError;

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("ACF_NUM_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "ACF_NUM_THREADS must be a positive integer, got '{v}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let format = cli
        .format
        .unwrap_or_else(|| commands::default_format(&cli.command));
    if cli.emit_gnuplot {
        if !commands::has_plot(&cli.command) {
            return Err(CliError::Usage(
                "--emit-gnuplot is available for scatter, flow and polescan".into(),
            ));
        }
        if format != Format::Csv || cli.output.is_none() {
            return Err(CliError::Usage(
                "--emit-gnuplot needs --format csv and --output".into(),
            ));
        }
    }
    commands::validate(&cli.command)?;
    init_threads()?;

    let outcome = commands::execute(&cli.command)?;
    let report = &outcome.report;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let text = match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    match &cli.output {
        Some(path) => {
            write_file(path, &text)?;
            if cli.emit_gnuplot {
                let script = report.gnuplot(path).expect("plot spec present");
                write_file(&path.with_extension("gp"), &script)?;
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })?;
        }
    }
    Ok(!outcome.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
