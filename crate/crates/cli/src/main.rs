use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use corrpca::report::DEFAULT_THRESHOLD;
use corrpca::{
    ingest_csv, load_model, run_analysis, run_simulation, run_verify, CliError, Mode, Result,
};

/// Principal component and factor analysis of CSV data.
#[derive(Debug, Parser)]
#[command(name = "corrpca", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Correlation, eigen decomposition, loadings and the retained component count.
    Analyze(AnalyzeArgs),
    /// Draw observations from a saved factor model.
    Simulate(SimulateArgs),
    /// Check that the loadings equal the data-to-component correlations.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// CSV file, one observation per row.
    #[arg(long, short)]
    input: PathBuf,
    /// The first row holds column names (default).
    #[arg(long, overrides_with = "no_header")]
    header: bool,
    /// The first row is data; columns are named c1, c2, ...
    #[arg(long)]
    no_header: bool,
}

impl InputArgs {
    fn has_header(&self) -> bool {
        !self.no_header
    }
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Mode::Pca)]
    mode: Mode,
    /// Share of every variable's variance the retained components must explain.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Also write each matrix as a CSV file into this directory.
    #[arg(long)]
    export_csv_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Analysis report (.json), labeled matrix (.json) or labeled loadings (.csv).
    #[arg(long, short)]
    model: PathBuf,
    /// Use the truncated loadings of an fa report.
    #[arg(long)]
    reduced: bool,
    #[arg(long, short)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Destination CSV for the simulated observations.
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Analyze(args) => {
            let dataset = ingest_csv(&args.input.input, args.input.has_header())?;
            let report = run_analysis(&dataset, args.threshold, args.mode)?;
            if let Some(dir) = &args.export_csv_dir {
                report.export_csv(dir)?;
            }
            let json = report.to_json();
            match &args.out {
                Some(path) => fs::write(path, json).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                }),
                None => write_stdout(&json),
            }
        }
        Command::Simulate(args) => {
            let loaded = load_model(&args.model, args.reduced)?;
            let summary = run_simulation(&loaded, args.samples, args.seed, &args.out)?;
            write_stdout(&to_json(&summary))
        }
        Command::Verify(args) => {
            let dataset = ingest_csv(&args.input.input, args.input.has_header())?;
            let report = run_verify(&dataset)?;
            write_stdout(&to_json(&report))?;
            if report.max_abs_deviation >= args.tolerance {
                return Err(CliError::Verification {
                    deviation: report.max_abs_deviation,
                    tolerance: args.tolerance,
                });
            }
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("summary serializes");
    s.push('\n');
    s
}

fn write_stdout(text: &str) -> Result<()> {
    std::io::stdout()
        .write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}
