use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gemenge_cli::{load_scenario, run_scenario, scenarios, Error, ReportFormat, RunReport, ScenarioConfig};

#[derive(Parser)]
#[command(name = "gemenge", version, about = "Run identical-particle and measurement scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and emit its report.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Parse and validate a scenario file without running it.
    Validate { scenario: PathBuf },
    /// Run a bundled example scenario (`--list` to show them).
    Demo {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(clap::Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

const EXIT_CONFIG_OR_RUNTIME: u8 = 1;
const EXIT_VERDICT_FAILED: u8 = 2;

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_CONFIG_OR_RUNTIME)
        }
    }
}

fn dispatch(command: Command) -> Result<u8, Error> {
    match command {
        Command::Run { scenario, output } => execute(&load_scenario(&scenario)?, &output),
        Command::Validate { scenario } => {
            let config = load_scenario(&scenario)?;
            println!("{}: valid {} scenario", scenario.display(), config.kind.as_str());
            Ok(0)
        }
        Command::Demo { list: true, .. } => {
            for name in scenarios::names() {
                println!("{name}");
            }
            Ok(0)
        }
        Command::Demo { name, output, .. } => {
            let name = name.unwrap_or_default();
            execute(&scenarios::bundled(&name)?, &output)
        }
    }
}

fn execute(config: &ScenarioConfig, output: &OutputArgs) -> Result<u8, Error> {
    let report = run_scenario(config)?;
    let format = ReportFormat::from(output.format);
    match &output.out {
        Some(path) => gemenge_cli::emit_report(&report, format, path)?,
        None => print!("{}", format.render(&report)?),
    }
    if let Some(path) = &config.output.json {
        write_extra(&report, ReportFormat::Json, path)?;
    }
    if let Some(path) = &config.output.csv {
        write_extra(&report, ReportFormat::Csv, path)?;
    }
    summarize(&report);
    Ok(if report.all_passed() { 0 } else { EXIT_VERDICT_FAILED })
}

fn write_extra(report: &RunReport, format: ReportFormat, path: &Path) -> Result<(), Error> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|source| Error::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    gemenge_cli::emit_report(report, format, path)
}

fn summarize(report: &RunReport) {
    for v in &report.verdicts {
        eprintln!(
            "{} {:<28} residual {:.3e} (tolerance {:.1e})",
            if v.passed { "PASS" } else { "FAIL" },
            v.name,
            v.residual,
            v.tolerance
        );
    }
}
