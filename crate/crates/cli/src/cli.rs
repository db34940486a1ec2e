use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::checks;
use crate::commands;
use crate::config::{self, SuiteConfig, DEFAULT_TRIALS};
use crate::error::{exit, CliError, Result};
use crate::runner;

#[derive(Debug, Parser)]
#[command(name = "orbitgeo", version, about = "Geometry of positive unitized operators and unitary orbits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Points of the geodesic from P to Q, one JSON line per t
    Geodesic {
        p: PathBuf,
        q: PathBuf,
        /// Comma separated parameters
        #[arg(long = "t", value_delimiter = ',', default_value = "0.5", allow_negative_numbers = true)]
        t: Vec<f64>,
    },
    /// Geodesic distance between P and Q
    Dist { p: PathBuf, q: PathBuf },
    /// Operations on unitary orbits; points are {"base", "g"} files
    #[command(subcommand)]
    Orbit(OrbitCommand),
    /// Run a verification suite and write a CSV report
    Check(CheckArgs),
    /// Re-run one trial of a check from the seed printed in a report
    Replay {
        /// Check id, e.g. orbit/exp_log
        check: String,
        seed: u64,
        dim: usize,
        #[arg(long, default_value_t = orbitgeo_core::curves::DEFAULT_STEP)]
        step: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrbitCommand {
    /// Endpoint of the orbit geodesic with initial velocity V
    Exp { point: PathBuf, v: PathBuf },
    /// Co-diagonal generator joining two points of one orbit
    Log { from: PathBuf, to: PathBuf },
    /// Length of the orbit geodesic generated by H
    Length { point: PathBuf, h: PathBuf },
    /// Local cross section at the base, evaluated at the point
    Section { point: PathBuf },
    /// Unitary 1 + k with k supported on R(a) + R(gag*) matching g
    Witness { point: PathBuf },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// metric, geodesic, curvature, emi, segal, orbit, cartan, section or all
    pub suite: String,
    #[arg(long, env = "ORBITGEO_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,6,8")]
    pub dims: Vec<usize>,
    /// Override a tolerance: <suite>=<value> or <suite/check>=<value>
    #[arg(long = "tol")]
    pub tol: Vec<String>,
    /// CSV destination; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = orbitgeo_core::curves::DEFAULT_STEP)]
    pub step: f64,
}

impl CheckArgs {
    pub fn config(&self) -> Result<SuiteConfig> {
        let mut tolerances = std::collections::BTreeMap::new();
        for t in &self.tol {
            let (k, v) = config::parse_tolerance(t)?;
            tolerances.insert(k, v);
        }
        let config = SuiteConfig {
            seed: self.seed,
            trials: self.trials,
            dims: self.dims.clone(),
            tolerances,
            out: self.out.clone(),
            step: self.step,
        };
        config.validate()?;
        Ok(config)
    }
}

fn check(args: &CheckArgs) -> Result<()> {
    let suites = config::parse_selection(&args.suite)?;
    let config = args.config()?;
    let report = runner::run_suites(&config, &suites)?;
    match &config.out {
        Some(path) => report.write_csv(std::fs::File::create(path)?)?,
        None => report.write_csv(std::io::stdout().lock())?,
    }
    eprint!("{}", report.summary_text());
    let failed: Vec<_> = report.failures().collect();
    for r in &failed {
        eprintln!(
            "FAIL {} dim={} trial={} seed={} residual={} tolerance={}{}",
            r.suite,
            r.dim,
            r.trial,
            r.seed,
            orbitgeo_core::io::fmt_sig(r.residual, 17),
            orbitgeo_core::io::fmt_sig(r.tolerance, 17),
            r.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default()
        );
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed {
            failed: failed.len(),
            total: report.rows.len(),
        })
    }
}

fn replay(id: &str, seed: u64, dim: usize, step: f64) -> Result<String> {
    let c = checks::find(id).ok_or_else(|| CliError::Usage(format!("unknown check `{id}`")))?;
    if dim < 2 {
        return Err(CliError::Usage("dim must be at least 2".into()));
    }
    let (stat, note) = runner::run_trial(c, seed, dim, step);
    let tol = c.tolerance.value();
    let verdict = if stat <= tol { "pass" } else { "FAIL" };
    let mut line = format!("{id} dim={dim} seed={seed} residual={} tolerance={tol:e} {verdict}", orbitgeo_core::io::fmt_sig(stat, 17));
    if let Some(n) = note {
        line += &format!(" ({n})");
    }
    Ok(line + "\n")
}

fn execute(cli: &Cli) -> Result<Option<String>> {
    use OrbitCommand as O;
    let text = match &cli.command {
        Command::Geodesic { p, q, t } => commands::geodesic_cmd(p, q, t)?,
        Command::Dist { p, q } => commands::dist_cmd(p, q)?,
        Command::Orbit(O::Exp { point, v }) => commands::orbit_exp_cmd(point, v)?,
        Command::Orbit(O::Log { from, to }) => commands::orbit_log_cmd(from, to)?,
        Command::Orbit(O::Length { point, h }) => commands::orbit_length_cmd(point, h)?,
        Command::Orbit(O::Section { point }) => commands::orbit_section_cmd(point)?,
        Command::Orbit(O::Witness { point }) => commands::orbit_witness_cmd(point)?,
        Command::Check(args) => {
            check(args)?;
            return Ok(None);
        }
        Command::Replay { check, seed, dim, step } => replay(check, *seed, *dim, *step)?,
    };
    Ok(Some(text))
}

/// Runs the parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    // fail fast on an incomplete registry, before touching any input
    if let Err(e) = checks::validate_registry(&checks::registry()) {
        eprintln!("orbitgeo: {e}");
        return exit::FAILURE;
    }
    match execute(&cli) {
        Ok(text) => {
            if let Some(text) = text {
                let mut out = std::io::stdout().lock();
                if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                    return exit::FAILURE;
                }
            }
            exit::OK
        }
        Err(e) => {
            eprintln!("orbitgeo: {e}");
            e.exit_code()
        }
    }
}
