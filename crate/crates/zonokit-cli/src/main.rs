use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zonokit::diff::minkdiff_with;
use zonokit::facet::zonotope_hrep_with;
use zonokit::io::{DiffResultDoc, HPolytopeDoc, ZonotopeDoc};
use zonokit::sample::{instance_rng, random_zonotope, ScenarioSpec};
use zonokit::{Tolerances, Zonotope};
use zonokit_cli::bench::{csv_row, run_scenario, ScenarioReport, CSV_HEADER};
use zonokit_cli::CliError;

const EXIT_EMPTY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "zonokit",
    version,
    about = "Zonotope set operations: Minkowski sum and difference, halfspace conversion, benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minkowski difference of two zonotope documents (exit 3 when empty)
    Diff {
        /// Minuend document
        minuend: PathBuf,
        /// Subtrahend document
        subtrahend: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Override the LP feasibility tolerance
        #[arg(long)]
        tol_lp: Option<f64>,
        /// Override the generator alignment tolerance
        #[arg(long)]
        tol_align: Option<f64>,
    },
    /// Minkowski sum of two zonotope documents
    Sum {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Halfspace representation of a zonotope document
    Hrep {
        zonotope: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        tol_align: Option<f64>,
    },
    /// Generate a seeded random zonotope document
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        order: f64,
        /// Maximum generator length
        #[arg(long, default_value_t = 1.0)]
        l_max: f64,
        #[arg(long, env = "ZONOKIT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Randomized difference benchmark over one scenario or a batch document
    Bench {
        #[arg(long, required_unless_present = "batch")]
        dim: Option<usize>,
        #[arg(long, required_unless_present = "batch")]
        order_m: Option<f64>,
        #[arg(long, required_unless_present = "batch")]
        order_s: Option<f64>,
        #[arg(long, required_unless_present = "batch")]
        instances: Option<usize>,
        /// JSON batch document: a list of scenario records
        #[arg(long, conflicts_with_all = ["dim", "order_m", "order_s", "instances"])]
        batch: Option<PathBuf>,
        #[arg(long, env = "ZONOKIT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Worker threads; statistics do not depend on the level
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Cross-check each instance against the recursive reference path
        /// (dimensions 2 and 3 only)
        #[arg(long)]
        compare_oracle: bool,
        #[arg(long)]
        tol_lp: Option<f64>,
        #[arg(long)]
        tol_align: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn tolerances(tol_lp: Option<f64>, tol_align: Option<f64>) -> Tolerances {
    let mut tol = Tolerances::default();
    if let Some(lp) = tol_lp {
        tol.lp_feasibility = lp;
    }
    if let Some(align) = tol_align {
        tol.align = align;
    }
    tol
}

fn read_zonotope(path: &Path) -> Result<Zonotope, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let doc: ZonotopeDoc = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Zonotope::try_from(&doc).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write_output(output: Option<&Path>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::internal(format!("serialization failed: {e}")))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Diff {
            minuend,
            subtrahend,
            output,
            tol_lp,
            tol_align,
        } => {
            let zm = read_zonotope(&minuend)?;
            let zs = read_zonotope(&subtrahend)?;
            let tol = tolerances(tol_lp, tol_align);
            let result = minkdiff_with(&zm, &zs, &tol)?;
            let doc = DiffResultDoc::from(&result);
            write_output(output.as_deref(), &to_json(&doc)?)?;
            Ok(if result.is_empty() { EXIT_EMPTY } else { 0 })
        }
        Command::Sum { a, b, output } => {
            let sum = read_zonotope(&a)?.minkowski_sum(&read_zonotope(&b)?)?;
            write_output(output.as_deref(), &to_json(&ZonotopeDoc::from(&sum))?)?;
            Ok(0)
        }
        Command::Hrep {
            zonotope,
            output,
            tol_align,
        } => {
            let tol = tolerances(None, tol_align);
            let z = read_zonotope(&zonotope)?.merge_aligned(tol.align);
            let (hp, _) = zonotope_hrep_with(&z, &tol)?;
            write_output(output.as_deref(), &to_json(&HPolytopeDoc::from(&hp))?)?;
            Ok(0)
        }
        Command::Random {
            dim,
            order,
            l_max,
            seed,
            output,
        } => {
            if dim < 1 || !(order.is_finite() && order > 0.0) || !(l_max.is_finite() && l_max > 0.0)
            {
                return Err(CliError::input(
                    "random requires dim >= 1, order > 0, l-max > 0".to_string(),
                ));
            }
            if zonokit::sample::generator_count(dim, order) == 0 {
                return Err(CliError::input("order rounds to zero generators".to_string()));
            }
            let mut rng = instance_rng(seed, 0);
            let z = random_zonotope(dim, order, l_max, &mut rng);
            write_output(output.as_deref(), &to_json(&ZonotopeDoc::from(&z))?)?;
            Ok(0)
        }
        Command::Bench {
            dim,
            order_m,
            order_s,
            instances,
            batch,
            seed,
            format,
            jobs,
            compare_oracle,
            tol_lp,
            tol_align,
            output,
        } => {
            let tol = tolerances(tol_lp, tol_align);
            let specs: Vec<ScenarioSpec> = match batch {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        CliError::input(format!("cannot read {}: {e}", path.display()))
                    })?;
                    serde_json::from_str(&text)
                        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?
                }
                None => vec![ScenarioSpec {
                    dim: dim.expect("required by clap"),
                    order_m: order_m.expect("required by clap"),
                    order_s: order_s.expect("required by clap"),
                    instances: instances.expect("required by clap"),
                    seed,
                }],
            };

            let mut reports: Vec<ScenarioReport> = Vec::with_capacity(specs.len());
            for spec in &specs {
                let report = run_scenario(spec, &tol, jobs, compare_oracle)?;
                if report.failures > 0 {
                    eprintln!(
                        "warning: {} of {} instances failed in scenario (dim={}, order_m={}, order_s={}, seed={})",
                        report.failures, spec.instances, spec.dim, spec.order_m, spec.order_s, spec.seed
                    );
                }
                reports.push(report);
            }

            let rendered = match format {
                Format::Csv => {
                    let mut s = String::from(CSV_HEADER);
                    s.push('\n');
                    for r in &reports {
                        s.push_str(&csv_row(r));
                        s.push('\n');
                    }
                    s
                }
                Format::Json => to_json(&reports)?,
            };
            write_output(output.as_deref(), &rendered)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
