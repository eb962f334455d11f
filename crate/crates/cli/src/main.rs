use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use fockzero_cli::io::{ExperimentJson, IndependenceConfigJson, LatticePointsJson, SignalJson};
use fockzero_cli::{execute, CliError, CommandSpec, Format, RunConfig, DEFAULT_SWEEP};

#[derive(Parser)]
#[command(
    name = "fockzero",
    about = "Spectral and exact-arithmetic experiments on truncated analytic function spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Input file path, or "-" for standard input.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file path; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Artifact format: json, csv or svg.
    #[arg(long)]
    format: Option<String>,
    /// Seed for randomized residual probes.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Truncation dimension.
    #[arg(long = "M")]
    dim: Option<usize>,
    /// Guard band width.
    #[arg(long)]
    guard: Option<usize>,
    /// Rotation or root order.
    #[arg(long)]
    d: Option<u32>,
    /// Real part of the displacement.
    #[arg(long = "beta-re")]
    beta_re: Option<f64>,
    /// Imaginary part of the displacement.
    #[arg(long = "beta-im")]
    beta_im: Option<f64>,
    /// Range bound for integer scans.
    #[arg(long)]
    bound: Option<u64>,
    /// Extraction radius for coefficient recovery.
    #[arg(long)]
    radius: Option<f64>,
}

#[derive(Subcommand, Clone)]
enum Sub {
    /// Independence certificate for a point configuration (JSON input).
    HrtCheck(CommonArgs),
    /// Spectral sweep of the deep-zero constraint system.
    DeepZero(CommonArgs),
    /// Exact lattice membership for points or roots of unity.
    Lattice(CommonArgs),
    /// Totient table and the phi(n) = 2 scan.
    Phi(CommonArgs),
    /// Coefficient recovery for a sampled signal.
    Bargmann(CommonArgs),
    /// SVG figure of roots of unity with their lattice, when one exists.
    RootsFigure(CommonArgs),
}

fn read_input(args: &CommonArgs) -> Result<String, CliError> {
    let Some(path) = &args.input else {
        return Err(CliError::Input(
            "this subcommand requires --input".into(),
        ));
    };
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("reading standard input failed: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("reading {} failed: {e}", path.display())))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("input does not parse: {e}")))
}

fn beta_from(args: &CommonArgs, fallback: Option<Complex64>) -> Result<Complex64, CliError> {
    match (args.beta_re, args.beta_im, fallback) {
        (None, None, Some(b)) => Ok(b),
        (re, im, fb) => {
            let base = fb.unwrap_or(Complex64::new(0.0, 0.0));
            Ok(Complex64::new(
                re.unwrap_or(base.re),
                im.unwrap_or(base.im),
            ))
        }
    }
}

/// Guard default: three quarters of the truncation stays guarded, which
/// the displacement guard tolerates for moderate displacements.
fn default_guard(dim: usize) -> usize {
    dim - dim / 4
}

fn build_run(sub: &Sub) -> Result<(RunConfig, Option<PathBuf>), CliError> {
    let (args, default_format) = match sub {
        Sub::HrtCheck(a) | Sub::DeepZero(a) | Sub::Lattice(a) | Sub::Phi(a) | Sub::Bargmann(a) => {
            (a, Format::Json)
        }
        Sub::RootsFigure(a) => (a, Format::Svg),
    };
    let format = match &args.format {
        Some(text) => Format::parse(text)?,
        None => default_format,
    };
    let command = match sub {
        Sub::HrtCheck(args) => {
            let config: IndependenceConfigJson = parse_json(&read_input(args)?)?;
            let dim = args.dim.unwrap_or(config.dim);
            CommandSpec::IndependenceCheck {
                points: config.points.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
                exact: config.exact,
                window: config.window,
                dim,
            }
        }
        Sub::DeepZero(args) => {
            let experiment: Option<ExperimentJson> = match &args.input {
                Some(_) => Some(parse_json(&read_input(args)?)?),
                None => None,
            };
            let d = args
                .d
                .or(experiment.as_ref().map(|e| e.d))
                .ok_or_else(|| CliError::Input("deep-zero needs --d or an input file".into()))?;
            let beta = beta_from(
                args,
                experiment
                    .as_ref()
                    .map(|e| Complex64::new(e.beta[0], e.beta[1])),
            )?;
            let dim = args.dim.or(experiment.as_ref().and_then(|e| e.dim));
            let guard = args.guard.or(experiment.as_ref().and_then(|e| e.guard));
            let cells = match dim {
                Some(m) => vec![(m, guard.unwrap_or_else(|| default_guard(m)))],
                None => match guard {
                    Some(g) => DEFAULT_SWEEP.iter().map(|&(m, _)| (m, g)).collect(),
                    None => DEFAULT_SWEEP.to_vec(),
                },
            };
            CommandSpec::DeepZero { d, beta, cells }
        }
        Sub::Lattice(args) => match args.d {
            Some(d) => CommandSpec::LatticeRoots { d },
            None => {
                let points: LatticePointsJson = parse_json(&read_input(args)?)?;
                CommandSpec::LatticePoints {
                    conductor: points.conductor,
                    points: points.points,
                }
            }
        },
        Sub::Phi(args) => CommandSpec::Phi {
            bound: args.bound.unwrap_or(100),
        },
        Sub::Bargmann(args) => {
            let signal: SignalJson = parse_json(&read_input(args)?)?;
            CommandSpec::Bargmann {
                grid: signal.grid,
                values: signal.values.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
                dim: args.dim.unwrap_or(64),
                radius: args.radius.unwrap_or(1.0),
            }
        }
        Sub::RootsFigure(args) => CommandSpec::RootsFigure {
            d: args.d.unwrap_or(6),
        },
    };
    Ok((
        RunConfig {
            command,
            format,
            seed: args.seed,
        },
        args.output.clone(),
    ))
}

fn write_artifact(bytes: &[u8], output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| CliError::Input(format!("writing {} failed: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Input(format!("writing standard output failed: {e}"))),
    }
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    let (config, output) = build_run(&cli.command)?;
    let bytes = execute(&config)?;
    write_artifact(&bytes, &output)
}

fn main() {
    if let Err(error) = run() {
        eprintln!("{}", error.to_json());
        std::process::exit(error.exit_code());
    }
}
