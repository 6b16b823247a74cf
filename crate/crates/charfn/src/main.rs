use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use charfn::cli::{
    self, render_report_text, render_validation_text, OutputFormat, PathChoice, RunConfig,
    SpecSource,
};

#[derive(Parser)]
#[command(
    name = "charfn",
    about = "Numerical test of whether a function is a characteristic function",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a candidate function is a characteristic function.
    Check(CheckArgs),
    /// Run the numeric self-test battery.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Smallest |y| of the imaginary-axis grid.
    #[arg(long, default_value_t = 1e-2)]
    ymin: f64,
    /// Largest |y| of the imaginary-axis grid.
    #[arg(long, default_value_t = 1e2)]
    ymax: f64,
    /// Grid points per side of the axis.
    #[arg(long, default_value_t = 64)]
    grid_points: usize,
    /// Highest derivative order tested.
    #[arg(long, default_value_t = 10)]
    max_order: usize,
    /// Sign tolerance of the monotonicity tests.
    #[arg(long, default_value_t = 1e-7)]
    tol_sign: f64,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    abs_tol: f64,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-8)]
    rel_tol: f64,
    /// Replace the deterministic extra Gram points with seeded random ones.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for table construction (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct CheckArgs {
    /// Catalog entry name (see README for the list).
    #[arg(long, conflicts_with_all = ["measure", "samples"])]
    catalog: Option<String>,
    /// Catalog parameter key=value; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// JSON measure file.
    #[arg(long, conflicts_with = "samples")]
    measure: Option<PathBuf>,
    /// CSV sample file with columns t, re_f, im_f.
    #[arg(long)]
    samples: Option<PathBuf>,
    /// Theorem path: auto, t1, t2 or t3.
    #[arg(long, default_value = "auto")]
    theorem: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: CommonArgs,
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, f64>, String> {
    let mut out = BTreeMap::new();
    for item in raw {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("--param expects KEY=VALUE, got '{item}'"))?;
        let value: f64 = v
            .parse()
            .map_err(|_| format!("--param {k}: '{v}' is not a number"))?;
        out.insert(k.to_string(), value);
    }
    Ok(out)
}

fn run_config(common: &CommonArgs, theorem: PathChoice) -> RunConfig {
    RunConfig {
        theorem,
        y_min: common.ymin,
        y_max: common.ymax,
        points_per_side: common.grid_points,
        max_order: common.max_order,
        abs_tol: common.abs_tol,
        rel_tol: common.rel_tol,
        tol_sign: common.tol_sign,
        seed: common.seed,
        threads: common.threads,
        ..RunConfig::default()
    }
}

fn emit(common: &CommonArgs, text: String) -> Result<(), String> {
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Exit codes: 0 PASS, 1 FAIL, 2 INCONCLUSIVE, 3 runtime error, 4 usage.
fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(4);
        }
    };

    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("charfn: {msg}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Check(args) => {
            let theorem: PathChoice = args.theorem.parse().map_err(|e| format!("{e}"))?;
            let format: OutputFormat = args.common.format.parse().map_err(|e| format!("{e}"))?;
            let source = if let Some(name) = &args.catalog {
                SpecSource::Catalog {
                    name: name.clone(),
                    params: parse_params(&args.params)?,
                }
            } else if let Some(path) = &args.measure {
                SpecSource::MeasureFile(path.clone())
            } else if let Some(path) = &args.samples {
                SpecSource::SampleFile(path.clone())
            } else {
                return Err("one of --catalog, --measure or --samples is required".into());
            };
            let cfg = run_config(&args.common, theorem);
            let report = cli::run(&source, &cfg).map_err(|e| e.to_string())?;
            let text = match format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n"
                }
                OutputFormat::Text => render_report_text(&report),
            };
            emit(&args.common, text)?;
            Ok(report.verdict.exit_code() as u8)
        }
        Command::Validate(args) => {
            let format: OutputFormat = args.common.format.parse().map_err(|e| format!("{e}"))?;
            let cfg = run_config(&args.common, PathChoice::Auto);
            let report = cli::validate(&cfg).map_err(|e| e.to_string())?;
            let text = match format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n"
                }
                OutputFormat::Text => render_validation_text(&report),
            };
            emit(&args.common, text)?;
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}
