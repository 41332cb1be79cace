//! `convexkit`: seeded stress runs for the inequality evaluators,
//! certificate re-checks, and deviation bounds over CSV samples, with
//! deterministic JSON bundles for toolchain consumption.
//!
//! Exit codes: 0 all checks passed, 1 a check failed (the bundle carries
//! the witness), 2 usage or validation error, 3 unreadable or malformed
//! input.

mod json;
mod runs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use convexkit::report::Tolerance;

use runs::{BoundParams, CliError, RunConfig, EXIT_CHECK_FAILED};

#[derive(Parser)]
#[command(
    name = "convexkit",
    version,
    about = "Convexity-class checks, inequality stress runs and deviation bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for the configuration generator; CONVEXKIT_SEED is an
    /// equivalent environment override, but setting both is an error.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Random configurations per inequality family.
    #[arg(long, global = true, default_value_t = 10_000)]
    trials: usize,

    /// Sample points per axis for the grid-based checks.
    #[arg(long, global = true, default_value_t = 64)]
    grid: usize,

    /// Absolute and relative tolerance for gap verdicts.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Accuracy target for the adaptive quadrature in the integral chains.
    #[arg(long = "quad-tol", global = true, default_value_t = 1e-10)]
    quad_tol: f64,

    /// Write the JSON report bundle to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the function catalog with domains and certificates.
    Catalog,
    /// Re-check every certificate a catalog function carries.
    Classify {
        /// Catalog id, e.g. `pow:3`.
        function: String,
        /// Run one named check instead of the certified set
        /// (superquadratic or subquadratic).
        #[arg(long)]
        check: Option<String>,
    },
    /// Stress one inequality family over seeded random configurations.
    Verify {
        /// Catalog id, e.g. `pow:3`.
        function: String,
        /// Family name, e.g. `jensen`, `ext-jensen`, `hh-uniform`, `gamma`.
        inequality: String,
    },
    /// Evaluate a deviation bound on a CSV sample (`x` or `x,weight` rows).
    Bound {
        /// Path to the sample file.
        data: PathBuf,
        /// Bound name: cipu, power, submult, strong or modulus.
        name: String,
        /// Catalog id of the function the bound is stated for.
        #[arg(long)]
        function: Option<String>,
        /// Power-mean exponent (power and strong bounds).
        #[arg(long)]
        p: Option<f64>,
        /// Strong-convexity modulus coefficient (strong bound).
        #[arg(long)]
        m: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let cfg = resolve_config(&cli)?;
    let reports = match &cli.command {
        Command::Catalog => {
            print!("{}", runs::catalog_text());
            return Ok(0);
        }
        Command::Classify { function, check } => {
            runs::cmd_classify(function, check.as_deref(), &cfg)?
        }
        Command::Verify {
            function,
            inequality,
        } => runs::cmd_verify(function, inequality, &cfg)?,
        Command::Bound {
            data,
            name,
            function,
            p,
            m,
        } => {
            let params = BoundParams {
                function: function.clone(),
                p: *p,
                m: *m,
            };
            runs::cmd_bound(data, name, &params, &cfg)?
        }
    };

    if let Some(path) = &cli.json {
        let bundle = runs::bundle(&cfg, &reports);
        std::fs::write(path, bundle.render())
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    for report in &reports {
        println!("{}", report.human_line());
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!("{} passed, {} failed", reports.len() - failed, failed);
    Ok(if failed == 0 { 0 } else { EXIT_CHECK_FAILED })
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let seed = resolve_seed(cli.seed)?;
    if cli.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if cli.grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be a positive real, got {}",
            cli.tol
        )));
    }
    if !(cli.quad_tol > 0.0 && cli.quad_tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--quad-tol must be a positive real, got {}",
            cli.quad_tol
        )));
    }
    Ok(RunConfig {
        seed,
        trials: cli.trials,
        grid_points: cli.grid,
        tol: Tolerance::new(cli.tol, cli.tol),
        quad_tol: cli.quad_tol,
    })
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    let env = std::env::var("CONVEXKIT_SEED").ok();
    match (env, flag) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "CONVEXKIT_SEED and --seed are both set; use exactly one".into(),
        )),
        (Some(s), None) => s.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "CONVEXKIT_SEED must be an unsigned 64-bit integer, got `{s}`"
            ))
        }),
        (None, Some(v)) => Ok(v),
        (None, None) => Ok(0),
    }
}
