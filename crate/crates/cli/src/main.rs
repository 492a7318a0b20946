//! Command-line frontend: gallery verification, convergence tables, frame
//! checks and inspection of user-supplied piecewise polynomials.
//!
//! Exit codes: 0 when all checks pass, 1 on a claim-check failure (the
//! failing checks are named on the diagnostic stream), 2 on input errors.

mod io;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use hilmod_core::gallery::{self, GalleryParams};
use hilmod_core::module::{convergence_table, frame_check};
use hilmod_core::rat::Rat;

use render::Format;

/// Default enclosure width 2^-40, overridable by flag or environment.
const WIDTH_ENV: &str = "HILMOD_ENCLOSURE_WIDTH";

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: bad JSON, unknown id, invalid rationals. Exit 2.
    Input(String),
    /// One or more claim checks failed. Exit 1.
    ChecksFailed(Vec<String>),
}

#[derive(Parser)]
#[command(
    name = "hilmod",
    about = "Exact Fourier-series diagnostics in Hilbert modules over function algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the claim suite of a gallery construction (or `all`).
    Verify {
        /// Gallery id, or `all` for the whole gallery.
        id: String,
        /// Truncation depth / block size / sample count of the construction.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Convergence table of a vector against a system along a schedule.
    Table {
        /// System descriptor file (explicit vectors or a named generator).
        #[arg(long)]
        system: PathBuf,
        /// Vector file.
        #[arg(long)]
        vector: PathBuf,
        /// Strictly increasing prefix lengths, e.g. `1,2,4,8`.
        #[arg(long)]
        schedule: String,
        /// Superlevel thresholds, e.g. `1/2,1/4`.
        #[arg(long, default_value = "1/2")]
        eps: String,
        /// Enclosure width as a rational, e.g. `1/1048576`.
        #[arg(long)]
        width: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Verify two-sided frame bounds on test vectors.
    Frame {
        /// System descriptor file; explicit systems use all their vectors,
        /// generator systems are truncated to the schedule-free default.
        #[arg(long)]
        system: PathBuf,
        /// Test vector file (one vector, an array, or `{"vectors": [...]}`).
        #[arg(long)]
        vector: PathBuf,
        /// Lower frame bound C as a rational.
        #[arg(long)]
        lower: String,
        /// Upper frame bound D as a rational.
        #[arg(long)]
        upper: String,
        /// Number of system vectors to use for generated systems.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Parse, validate and describe a piecewise polynomial file.
    Inspect {
        path: PathBuf,
        #[arg(long)]
        width: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn parse_rat(s: &str, what: &str) -> Result<Rat, CliError> {
    Rat::from_str(s).map_err(|e| CliError::Input(format!("invalid {what}: {e}")))
}

fn resolve_width(flag: &Option<String>) -> Result<Rat, CliError> {
    let text = match flag {
        Some(s) => s.clone(),
        None => match std::env::var(WIDTH_ENV) {
            Ok(s) => s,
            Err(_) => return Ok(Rat::pow2_neg(40)),
        },
    };
    let w = parse_rat(&text, "enclosure width")?;
    if !w.is_positive() {
        return Err(CliError::Input(format!(
            "enclosure width must be positive, got {w}"
        )));
    }
    Ok(w)
}

fn parse_schedule(s: &str) -> Result<Vec<u64>, CliError> {
    let steps: Result<Vec<u64>, _> = s.split(',').map(|t| t.trim().parse::<u64>()).collect();
    let steps = steps.map_err(|e| CliError::Input(format!("invalid schedule: {e}")))?;
    if steps.is_empty() || steps.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Input(
            "schedule must be a nonempty strictly increasing list".into(),
        ));
    }
    Ok(steps)
}

fn parse_eps_list(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',')
        .map(|t| {
            let eps = parse_rat(t.trim(), "eps")?;
            if !eps.is_positive() {
                return Err(CliError::Input(format!("eps must be positive, got {eps}")));
            }
            Ok(eps)
        })
        .collect()
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Verify { id, n, format } => {
            let reports = if id == "all" {
                if n.is_some() {
                    return Err(CliError::Input(
                        "--n applies to a single gallery id, not `all`".into(),
                    ));
                }
                gallery::verify_all().map_err(|e| CliError::Input(e.to_string()))?
            } else {
                let report = gallery::verify(&id, GalleryParams { n })
                    .map_err(|e| CliError::Input(e.to_string()))?;
                vec![report]
            };
            let out = render::verify_reports(&reports, format)?;
            let failing: Vec<String> = reports
                .iter()
                .flat_map(|r| {
                    r.checks
                        .iter()
                        .filter(|c| !c.passed)
                        .map(move |c| format!("{}/{}", r.id, c.name))
                })
                .collect();
            if failing.is_empty() {
                Ok(out)
            } else {
                print!("{out}");
                Err(CliError::ChecksFailed(failing))
            }
        }
        Command::Table {
            system,
            vector,
            schedule,
            eps,
            width,
            format,
        } => {
            let system = io::load_system(&system)?;
            let x = io::load_single_vector(&vector, system.context())?;
            let schedule = parse_schedule(&schedule)?;
            let eps_list = parse_eps_list(&eps)?;
            let width = resolve_width(&width)?;
            let rows = convergence_table(&system, &x, &schedule, &eps_list, &width)
                .map_err(|e| CliError::Input(e.to_string()))?;
            render::convergence_table(&rows, &eps_list, format)
        }
        Command::Frame {
            system,
            vector,
            lower,
            upper,
            n,
            format,
        } => {
            let system = io::load_system(&system)?;
            let tests = io::load_vectors(&vector, system.context())?;
            let lower = parse_rat(&lower, "lower frame bound")?;
            let upper = parse_rat(&upper, "upper frame bound")?;
            let count = match (system.len(), n) {
                (Some(len), None) => len as u64,
                (_, Some(n)) => n,
                (None, None) => {
                    return Err(CliError::Input(
                        "generated systems need --n to fix the vector count".into(),
                    ))
                }
            };
            let vectors: Result<Vec<_>, _> = (1..=count).map(|i| system.vector(i)).collect();
            let vectors = vectors.map_err(|e| CliError::Input(e.to_string()))?;
            let report = frame_check(system.context(), &vectors, &tests, &lower, &upper)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let out = render::frame_report(&report, format)?;
            if report.all_bounds_hold() {
                Ok(out)
            } else {
                print!("{out}");
                let failing: Vec<String> = report
                    .per_vector
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| !r.lower_ok || !r.upper_ok)
                    .map(|(k, r)| {
                        let side = match (r.lower_ok, r.upper_ok) {
                            (false, false) => "both bounds",
                            (false, true) => "lower bound",
                            _ => "upper bound",
                        };
                        format!("test vector {}: {side}", k + 1)
                    })
                    .collect();
                Err(CliError::ChecksFailed(failing))
            }
        }
        Command::Inspect {
            path,
            width,
            format,
        } => {
            let p = io::load_ppoly(&path)?;
            let width = resolve_width(&width)?;
            render::inspect(&p, &width, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::ChecksFailed(names)) => {
            for name in names {
                eprintln!("check failed: {name}");
            }
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
