//! Batch front end over the analytic engines: each subcommand consumes a
//! small JSON description, runs one engine, and emits a JSON, CSV or SVG
//! artifact. Everything is deterministic given the run configuration,
//! including the seed used for randomized residual probes, so repeated
//! runs produce byte-identical artifacts.

pub mod io;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fockzero::bargmann::{bargmann_coefficients, SampledSignal};
use fockzero::deepzero::{
    assemble_constraints, min_singular_value, reduction_identity_residual, DeepZeroProblem,
};
use fockzero::exact::{
    lattice_membership_decision, phi_equals_two_solutions, roots_in_lattice, totient_sieve,
};
use fockzero::independence::{
    certify_independence, classify_known_case, gaussian_window, PointConfig,
};
use fockzero::{Error, FockVector};

use io::{
    certificate_json, csv_coefficients, csv_deep_zero, csv_phi, membership_json,
    svg_roots_figure, DeepZeroRowJson, ExactPointsJson, PhiJson, WindowJson,
};

/// Output encoding of an artifact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl Format {
    pub fn parse(text: &str) -> Result<Format, CliError> {
        match text {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            other => Err(CliError::Input(format!(
                "unknown format {other:?}; expected json, csv or svg"
            ))),
        }
    }
}

/// Fully parsed work order for one subcommand.
#[derive(Clone, Debug)]
pub enum CommandSpec {
    IndependenceCheck {
        points: Vec<Complex64>,
        exact: Option<ExactPointsJson>,
        window: WindowJson,
        dim: usize,
    },
    DeepZero {
        d: u32,
        beta: Complex64,
        /// (truncation, guard) cells, in output order.
        cells: Vec<(usize, usize)>,
    },
    LatticeRoots {
        d: u32,
    },
    LatticePoints {
        conductor: u32,
        points: Vec<Vec<[io::IntValue; 2]>>,
    },
    Phi {
        bound: u64,
    },
    Bargmann {
        grid: Vec<f64>,
        values: Vec<Complex64>,
        dim: usize,
        radius: f64,
    },
    RootsFigure {
        d: u32,
    },
}

/// One run: a command, an output format and the seed for any randomized
/// probe the command performs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandSpec,
    pub format: Format,
    pub seed: u64,
}

/// Failures are split by exit class: malformed or incompatible input
/// versus an engine that refused or failed while computing.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Engine(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Engine(_) => 2,
        }
    }

    /// Machine-readable error object for standard error.
    pub fn to_json(&self) -> String {
        let (kind, message) = match self {
            CliError::Input(m) => ("input", m.clone()),
            CliError::Engine(e) => ("engine", e.to_string()),
        };
        serde_json::json!({ "error": { "kind": kind, "message": message } }).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

fn json_bytes<T: serde::Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn require_format(format: Format, allowed: &[Format], subcommand: &str) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "format not supported by {subcommand}"
        )))
    }
}

fn to_complex(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

/// Default sweep when no truncation is pinned: guard bands keep a quarter
/// of the columns interior, which the displacement guard supports for
/// moderate displacements.
pub const DEFAULT_SWEEP: [(usize, usize); 4] = [(32, 24), (48, 36), (64, 48), (96, 72)];

/// Deterministic zero-class probe vector for the reduction residual:
/// seeded coefficients on the indices divisible by d, unit-normalized.
pub fn seeded_zero_class_vector(seed: u64, d: u32, dim: usize) -> Result<FockVector, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let support = (dim / 2).min(24).max(1);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); dim];
    for (n, slot) in coeffs.iter_mut().enumerate().take(support) {
        if n % d as usize == 0 {
            *slot = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let raw = FockVector::new(coeffs)?;
    let norm = raw.norm();
    Ok(raw.scale(Complex64::new(1.0 / norm, 0.0)))
}

fn build_point_config(
    points: &[Complex64],
    exact: &Option<ExactPointsJson>,
) -> Result<PointConfig, CliError> {
    match exact {
        None => PointConfig::new(points.to_vec()).map_err(|e| CliError::Input(e.to_string())),
        Some(spec) => {
            let elements = spec
                .coeffs
                .iter()
                .map(|coeffs| {
                    io::CycloJson {
                        conductor: spec.conductor,
                        coeffs: coeffs.clone(),
                    }
                    .to_element()
                })
                .collect::<Result<Vec<_>, String>>()
                .map_err(CliError::Input)?;
            PointConfig::with_exact(points.to_vec(), elements)
                .map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

fn build_window(window: &WindowJson, dim: usize) -> Result<FockVector, CliError> {
    match window {
        WindowJson::Named(name) if name == "gaussian" => {
            gaussian_window(dim).map_err(|e| CliError::Input(e.to_string()))
        }
        WindowJson::Named(other) => Err(CliError::Input(format!(
            "unknown window {other:?}; expected \"gaussian\" or coefficients"
        ))),
        WindowJson::Coefficients(pairs) => {
            let coeffs: Vec<Complex64> = pairs.iter().map(|&p| to_complex(p)).collect();
            let vector = FockVector::new(coeffs).map_err(|e| CliError::Input(e.to_string()))?;
            Ok(vector.resized(dim))
        }
    }
}

/// Runs one command and returns the artifact bytes. Identical
/// configurations yield identical bytes.
pub fn execute(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    match &config.command {
        CommandSpec::IndependenceCheck {
            points,
            exact,
            window,
            dim,
        } => {
            require_format(config.format, &[Format::Json], "hrt-check")?;
            if *dim == 0 {
                return Err(CliError::Input("truncation must be positive".into()));
            }
            let point_config = build_point_config(points, exact)?;
            let window = build_window(window, *dim)?;
            let certificate = certify_independence(&point_config, &window, *dim)?;
            let classification = match classify_known_case(&point_config) {
                Ok(class) => Some(class),
                Err(Error::ExactnessRequired(_)) => None,
                Err(other) => return Err(other.into()),
            };
            json_bytes(&certificate_json(&certificate, classification))
        }
        CommandSpec::DeepZero { d, beta, cells } => {
            require_format(config.format, &[Format::Json, Format::Csv], "deep-zero")?;
            if cells.is_empty() {
                return Err(CliError::Input("no sweep cells to run".into()));
            }
            let mut rows = Vec::with_capacity(cells.len());
            for &(dim, guard) in cells {
                let problem = DeepZeroProblem::new(*d, *beta, dim, guard)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                let system = assemble_constraints(&problem)?;
                let sigma_min = min_singular_value(&system, guard)?;
                let probe = seeded_zero_class_vector(config.seed, *d, dim)?;
                let reduction_residual = reduction_identity_residual(*d, *beta, &probe)?;
                rows.push(DeepZeroRowJson {
                    d: *d,
                    beta: [beta.re, beta.im],
                    dim,
                    guard,
                    sigma_min,
                    reduction_residual,
                    exploratory: !problem.crystallographic(),
                });
            }
            rows.sort_by_key(|r| r.dim);
            match config.format {
                Format::Csv => Ok(csv_deep_zero(&rows).into_bytes()),
                _ => json_bytes(&rows),
            }
        }
        CommandSpec::LatticeRoots { d } => {
            require_format(config.format, &[Format::Json], "lattice")?;
            if *d == 0 {
                return Err(CliError::Input("root order must be positive".into()));
            }
            let result = roots_in_lattice(*d)?;
            json_bytes(&membership_json(&result))
        }
        CommandSpec::LatticePoints { conductor, points } => {
            require_format(config.format, &[Format::Json], "lattice")?;
            let elements = points
                .iter()
                .map(|coeffs| {
                    io::CycloJson {
                        conductor: *conductor,
                        coeffs: coeffs.clone(),
                    }
                    .to_element()
                })
                .collect::<Result<Vec<_>, String>>()
                .map_err(CliError::Input)?;
            let result = lattice_membership_decision(&elements)?;
            json_bytes(&membership_json(&result))
        }
        CommandSpec::Phi { bound } => {
            require_format(config.format, &[Format::Json, Format::Csv], "phi")?;
            if *bound < 1 {
                return Err(CliError::Input("bound must be at least 1".into()));
            }
            if *bound > 20_000_000 {
                return Err(CliError::Input("bound too large for the table sieve".into()));
            }
            let sieve = totient_sieve(*bound as usize);
            let table: Vec<[u64; 2]> = (1..=*bound).map(|n| [n, sieve[n as usize]]).collect();
            let phi_two = phi_equals_two_solutions(*bound as usize);
            match config.format {
                Format::Csv => Ok(csv_phi(&table).into_bytes()),
                _ => json_bytes(&PhiJson {
                    bound: *bound,
                    phi_two,
                    table,
                }),
            }
        }
        CommandSpec::Bargmann {
            grid,
            values,
            dim,
            radius,
        } => {
            require_format(config.format, &[Format::Json, Format::Csv], "bargmann")?;
            if grid.len() < 2 {
                return Err(CliError::Input("signal needs at least two nodes".into()));
            }
            if grid.windows(2).any(|w| w[1] <= w[0]) {
                return Err(CliError::Input("grid must be strictly increasing".into()));
            }
            if grid.len() != values.len() {
                return Err(CliError::Input(
                    "grid and values must have equal lengths".into(),
                ));
            }
            // Trapezoid weights for an arbitrary strictly increasing grid.
            let n = grid.len();
            let mut weights = vec![0.0f64; n];
            for i in 0..n {
                let left = if i == 0 { grid[0] } else { grid[i - 1] };
                let right = if i + 1 == n { grid[n - 1] } else { grid[i + 1] };
                weights[i] = (right - left) / 2.0;
            }
            let signal = SampledSignal::new(grid.clone(), weights, values.clone())
                .map_err(|e| CliError::Input(e.to_string()))?;
            let coeffs = bargmann_coefficients(&signal, *dim, *radius)?;
            match config.format {
                Format::Csv => Ok(csv_coefficients(coeffs.coeffs()).into_bytes()),
                _ => json_bytes(&io::complex_pairs(coeffs.coeffs())),
            }
        }
        CommandSpec::RootsFigure { d } => {
            require_format(config.format, &[Format::Svg], "roots-figure")?;
            if *d == 0 {
                return Err(CliError::Input("root order must be positive".into()));
            }
            let result = roots_in_lattice(*d)?;
            Ok(svg_roots_figure(*d, &result).into_bytes())
        }
    }
}
