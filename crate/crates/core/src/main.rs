use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kahlerkit::report::{self, Format, RunConfig};
use kahlerkit::schwarzschild;

/// Verification suites and data tables for Clifford algebras, forms and
/// Schwarzschild charts.
#[derive(Debug, Parser)]
#[command(name = "kahlerkit", version)]
struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = kahlerkit::sampling::DEFAULT_SEED)]
    seed: u64,
    /// Output format: text, json or csv. Each command has its own default.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a verification suite: clifford, matrixrep, exterior, covariance,
    /// so33, schwarzschild or all.
    Verify {
        suite: String,
        /// Replace a check's tolerance, as `id=value`. Repeatable.
        #[arg(long = "tol", value_parser = parse_override)]
        tolerances: Vec<(String, f64)>,
    },
    /// Radial null slopes of a chart at log-spaced radii.
    Lightcone {
        chart: String,
        r_min: f64,
        r_max: f64,
        samples: usize,
    },
    /// Operator-Schmidt terms of a 16x16 map, or of a 4x4 matrix lifted to
    /// one.
    Schmidt { file: PathBuf },
    /// Spin lift of a Minkowski isometry.
    Spinlift { file: PathBuf },
    /// Print a data table: worked-examples, double-star, codifferential,
    /// dilation or car.
    Table { name: String },
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (id, v) = s.split_once('=').ok_or_else(|| format!("expected id=value, got '{s}'"))?;
    let v: f64 = v.parse().map_err(|e| format!("bad tolerance '{v}': {e}"))?;
    Ok((id.to_string(), v))
}

enum Failure {
    Usage(String),
}

impl From<kahlerkit::Error> for Failure {
    fn from(e: kahlerkit::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn json(value: &impl serde::Serialize) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn run(cli: &Cli) -> Result<(String, Option<String>), Failure> {
    match &cli.command {
        Command::Verify { suite, tolerances } => {
            let format = cli.format.unwrap_or(Format::Text);
            let cfg = RunConfig {
                seed: cli.seed,
                tolerances: tolerances.iter().cloned().collect(),
                format,
                ..RunConfig::default()
            };
            let result = report::verify(suite, &cfg)?;
            let text = report::render(&result, format)?;
            let failed: Vec<_> = result.failures().map(|c| c.id.clone()).collect();
            let fail = (!failed.is_empty()).then(|| format!("failed checks: {}", failed.join(", ")));
            Ok((text, fail))
        }
        Command::Lightcone { chart, r_min, r_max, samples } => {
            let rows = schwarzschild::lightcone(chart, *r_min, *r_max, *samples)?;
            Ok((report::render_lightcone(&rows, cli.format.unwrap_or(Format::Csv))?, None))
        }
        Command::Schmidt { file } => {
            let d = report::schmidt_from_json(&read(file)?)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&d)?,
                Format::Text | Format::Csv => {
                    let mut s = format!("terms {}\nresidual {:e}\n", d.terms.len(), d.residual);
                    for t in &d.terms {
                        s.push_str(&format!("weight {:e}\n", t.weight));
                    }
                    s
                }
            };
            Ok((text, None))
        }
        Command::Spinlift { file } => {
            let lift = report::spinlift_from_json(&read(file)?)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&lift)?,
                Format::Text | Format::Csv => {
                    let mut s = format!("parity {:?}\nresidual {:e}\n", lift.parity, lift.residual);
                    for (b, z) in lift.h.terms() {
                        s.push_str(&format!("{:?} {} {}\n", b.indices(), z.re, z.im));
                    }
                    s
                }
            };
            Ok((text, None))
        }
        Command::Table { name } => {
            let value = report::table(name)?;
            Ok((report::render_table(name, &value, cli.format.unwrap_or(Format::Json))?, None))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, fail)) => {
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match fail {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("{msg}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
