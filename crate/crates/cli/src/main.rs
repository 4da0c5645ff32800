mod commands;
mod problem;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lhsnul::field::square_class;
use lhsnul::lattice::has_rational_sqrt_lambda;
use lhsnul::{Field, Lattice, QuadNumber, Rational};

use commands::Report;
use problem::ProblemFile;

/// Exact Laguerre–Hahn checks on quadratic lattices.
///
/// Exit codes: 0 when every check passes, 1 when a mathematical check
/// fails, 2 on input or usage errors.
#[derive(Parser)]
#[command(name = "lhsnul", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print p, r, λ, τ, the lattice class and q + 1/q.
    Classify {
        file: PathBuf,
        /// Also print this many floating-point lattice points.
        #[arg(long, default_value_t = 0)]
        points: usize,
        /// Starting point for --points.
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        x0: f64,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run the full pipeline and print a JSON certificate.
    Certify {
        file: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Fit Riccati data to moments and print the candidates as JSON.
    Fit {
        file: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Tabulate lₙ, πₙ, Θₙ and the ratio data (Aₙ, Bₙ, Cₙ, Dₙ) as JSON.
    Derive {
        file: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
}

/// Command-line values take precedence over the file's `options` block.
#[derive(Args)]
struct Overrides {
    #[arg(long)]
    n_max: Option<usize>,
    /// Truncation order N: moments u₀…u_N are used.
    #[arg(long = "trunc")]
    truncation: Option<usize>,
    /// Degree bounds for A, B, C, D.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    deg_bounds: Option<Vec<usize>>,
    /// Work in Q(√d) for this d.
    #[arg(long, allow_hyphen_values = true)]
    discriminant: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
}

impl Overrides {
    fn apply(&self, problem: &mut ProblemFile) -> Result<(), CliError> {
        let o = &mut problem.options;
        if let Some(n) = self.n_max {
            o.n_max = Some(n);
        }
        if let Some(t) = self.truncation {
            o.truncation = Some(t);
        }
        if let Some(b) = &self.deg_bounds {
            let bounds: [usize; 4] = b
                .as_slice()
                .try_into()
                .map_err(|_| CliError::Input(format!("--deg-bounds needs four values, got {}", b.len())))?;
            o.degree_bounds = Some(bounds);
        }
        if let Some(d) = &self.discriminant {
            o.discriminant = Some(d.clone());
        }
        Ok(())
    }
}

fn load(path: &Path, overrides: &Overrides) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut problem = ProblemFile::parse(&text, &path.display().to_string())?;
    overrides.apply(&mut problem)?;
    Ok(problem)
}

fn lattice<F: Field>(problem: &ProblemFile) -> Result<Lattice<F>, CliError> {
    Lattice::new(problem.conic()?, problem.discriminant()?).map_err(|e| CliError::Input(e.to_string()))
}

/// Runs a command over the rationals when `√λ` is rational, otherwise over
/// the quadratic field that contains it.
fn run_in_field(
    problem: &ProblemFile,
    rational: impl FnOnce(&Lattice<Rational>, &str) -> Result<Report, CliError>,
    quadratic: impl FnOnce(&Lattice<QuadNumber>, &str) -> Result<Report, CliError>,
) -> Result<Report, CliError> {
    let conic = problem.conic()?;
    match problem.discriminant()? {
        None if has_rational_sqrt_lambda(&conic) => rational(&lattice(problem)?, "Q"),
        disc => {
            let d = disc.unwrap_or_else(|| conic.lambda());
            let (_, s) = square_class(&d);
            quadratic(&lattice(problem)?, &format!("Q(sqrt({s}))"))
        }
    }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Classify { file, points, x0, overrides } => {
            let problem = load(&file, &overrides)?;
            let lat: Lattice<Rational> = lattice(&problem)?;
            print!("{}", commands::classify_report(&lat, points, x0));
            Ok(Report { json: serde_json::Value::Null, passed: true })
        }
        Command::Certify { file, overrides } => {
            let problem = load(&file, &overrides)?;
            run_in_field(&problem, |l, f| commands::certify_cmd(&problem, l, f), |l, f| commands::certify_cmd(&problem, l, f))
        }
        Command::Fit { file, overrides } => {
            let problem = load(&file, &overrides)?;
            run_in_field(&problem, |l, f| commands::fit_cmd(&problem, l, f), |l, f| commands::fit_cmd(&problem, l, f))
        }
        Command::Derive { file, overrides } => {
            let problem = load(&file, &overrides)?;
            run_in_field(&problem, |l, f| commands::derive_cmd(&problem, l, f), |l, f| commands::derive_cmd(&problem, l, f))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            if !report.json.is_null() {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"));
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                if let Some(err) = report.json.get("error") {
                    eprintln!("error: {}", err["message"].as_str().unwrap_or_default());
                } else if let Some(bad) = report.json["checks"].as_array().and_then(|cs| cs.iter().find(|c| c["verdict"] != "pass")) {
                    eprintln!("check `{}` {}: {}", bad["name"].as_str().unwrap_or_default(), bad["verdict"].as_str().unwrap_or_default(), bad["residual_summary"].as_str().unwrap_or_default());
                }
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
