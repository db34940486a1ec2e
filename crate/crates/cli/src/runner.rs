//! Runs checks over (dimension, trial) grids. Trials run on the rayon pool;
//! rows come back in (check, dimension, trial) order whatever the schedule.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use orbitgeo_core::sampling::{stream_id, trial_rng};
use rand::Rng;
use rayon::prelude::*;

use crate::checks::{self, Check, Ctx, Tolerance};
use crate::config::{Suite, SuiteConfig};
use crate::error::{CliError, Result};
use crate::report::{Report, Row, SuiteSummary};

/// Seed of one trial; also written to the report.
pub fn row_seed(seed: u64, id: &str, dim: usize, trial: usize) -> u64 {
    trial_rng(seed, stream_id(id) ^ (dim as u64).rotate_left(48), trial as u64).random()
}

/// Runs one trial. Errors and panics yield an infinite statistic and a note.
pub fn run_trial(check: &Check, seed: u64, dim: usize, step: f64) -> (f64, Option<String>) {
    let mut cx = Ctx {
        rng: trial_rng(seed, stream_id(check.id), 0),
        dim,
        step,
    };
    match panic::catch_unwind(AssertUnwindSafe(|| (check.run)(&mut cx))) {
        Ok(Ok(v)) => (v, None),
        Ok(Err(e)) => (f64::INFINITY, Some(e.to_string())),
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            (f64::INFINITY, Some(format!("panicked: {msg}")))
        }
    }
}

pub fn tolerance_for(config: &SuiteConfig, check: &Check) -> f64 {
    if let Some(v) = config.tolerances.get(check.id) {
        return *v;
    }
    match check.tolerance {
        Tolerance::Residual(v) => config.tolerances.get(check.suite.name()).copied().unwrap_or(v),
        Tolerance::Fixed(v) => v,
    }
}

pub fn run_suites(config: &SuiteConfig, suites: &[Suite]) -> Result<Report> {
    config.validate()?;
    let registry = checks::registry();
    checks::validate_registry(&registry)?;
    for key in config.tolerances.keys() {
        let known = Suite::ALL.iter().any(|s| s.name() == key) || registry.iter().any(|c| c.id == key);
        if !known {
            return Err(CliError::Usage(format!("--tol names unknown suite or check `{key}`")));
        }
    }
    let mut report = Report::default();
    for &suite in suites {
        let started = Instant::now();
        let jobs: Vec<(&Check, f64, usize, usize)> = registry
            .iter()
            .filter(|c| c.suite == suite)
            .flat_map(|&c| {
                let tol = tolerance_for(config, c);
                let dims = c.dims.map(<[usize]>::to_vec).unwrap_or_else(|| config.dims.clone());
                dims.into_iter()
                    .flat_map(move |d| (0..config.trials).map(move |t| (c, tol, d, t)))
            })
            .collect();
        let rows: Vec<Row> = jobs
            .into_par_iter()
            .map(|(c, tol, dim, trial)| {
                let seed = row_seed(config.seed, c.id, dim, trial);
                let (residual, note) = run_trial(c, seed, dim, config.step);
                Row {
                    suite: c.id,
                    trial,
                    seed,
                    dim,
                    residual,
                    tolerance: tol,
                    pass: residual <= tol,
                    note,
                }
            })
            .collect();
        let failed = rows.iter().filter(|r| !r.pass).count();
        report.summaries.push(SuiteSummary {
            suite,
            trials: rows.len(),
            passed: rows.len() - failed,
            failed,
            wall_time: started.elapsed(),
        });
        report.rows.extend(rows);
    }
    Ok(report)
}
