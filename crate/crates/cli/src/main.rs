use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use siegel_cy_cli::{emit_report, run_suite, Format, Params, Selector};

/// Verify the theta-constant, modular-form and threefold computations.
#[derive(Parser, Debug)]
#[command(name = "siegel-cy", version)]
struct Cli {
    /// Which suite to run.
    #[arg(value_enum, default_value = "all")]
    suite: Selector,
    /// Truncation bound N on q-expansions.
    #[arg(short = 'N', long, default_value_t = 12)]
    truncation: u32,
    /// Seed for every sampled matrix and point.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Numeric tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Directory for cached theta expansions.
    #[arg(long, value_name = "DIR")]
    cache: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let params = Params { truncation: cli.truncation, seed: cli.seed, tol: cli.tol, cache: cli.cache };
    let report = run_suite(cli.suite, &params);
    match emit_report(&report, cli.format, cli.json.as_deref()) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("siegel-cy: cannot write report: {e}");
            return ExitCode::from(2);
        }
    }
    if report.success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
