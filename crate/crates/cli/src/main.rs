use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::Value;

use opentomo::sweep::{format_float, parse_override, point_from_overrides, run_sweep, ScenarioKind, SweepSpec};
use opentomo::verify::{verify_all, verify_scenario};

/// Tomograms of open quantum systems (units: hbar = k_B = 1).
#[derive(Debug, Parser)]
#[command(name = "opentomo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep one parameter over a linear grid and write CSV.
    Sweep {
        /// JSON sweep config.
        #[arg(long)]
        config: PathBuf,
        /// Override a config value by dotted path, e.g. `params.temperature=2`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Output CSV path; defaults to `out` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the self-verification checks for one scenario or all of them.
    Verify {
        #[arg(default_value = "all")]
        scenario: String,
    },
    /// Evaluate a single point and print the tomogram.
    Point {
        #[arg(long)]
        scenario: String,
        /// Time, shorthand for `--set t=...`.
        #[arg(long)]
        t: Option<f64>,
        /// Scenario parameter, e.g. `temperature=2`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
}

fn sweep(config: PathBuf, overrides: Vec<String>, out: Option<PathBuf>) -> Result<()> {
    let text = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
    let spec = SweepSpec::from_json(&text, &overrides)?;
    let Some(out) = out.or_else(|| spec.out.clone().map(PathBuf::from)) else {
        bail!("no output path: pass --out or set `out` in the config");
    };
    let table = run_sweep(&spec)?;
    fs::write(&out, table.to_csv()).with_context(|| format!("writing {}", out.display()))?;
    eprintln!("wrote {} rows to {}", table.rows.len(), out.display());
    Ok(())
}

fn verify(scenario: &str) -> Result<bool> {
    let report = if scenario == "all" { verify_all() } else { verify_scenario(ScenarioKind::parse(scenario)?) };
    println!("{report}");
    Ok(report.passed())
}

fn point(scenario: &str, t: Option<f64>, overrides: Vec<String>) -> Result<()> {
    let kind = ScenarioKind::parse(scenario)?;
    let mut pairs: Vec<(String, Value)> = overrides.iter().map(|o| parse_override(o)).collect::<Result<_, _>>()?;
    if let Some(t) = t {
        pairs.push(("t".into(), Value::from(t)));
    }
    let point = point_from_overrides(kind, &pairs)?;
    let values = point.evaluate()?;
    println!("# units: hbar = k_B = 1");
    println!("# parameters: {}", point.params());
    for (name, v) in kind.columns().iter().zip(values) {
        println!("{name} = {}", format_float(v));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sweep { config, overrides, out } => sweep(config, overrides, out).map(|()| true),
        Command::Verify { scenario } => verify(&scenario),
        Command::Point { scenario, t, overrides } => point(&scenario, t, overrides).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
