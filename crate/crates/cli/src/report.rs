use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::time::Duration;

use orbitgeo_core::io::fmt_sig;

use crate::config::Suite;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    /// Check id, `suite/name`.
    pub suite: &'static str,
    pub trial: usize,
    pub seed: u64,
    pub dim: usize,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Error text when the trial did not produce a statistic.
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub rows: Vec<Row>,
    pub summaries: Vec<SuiteSummary>,
}

pub const CSV_HEADER: [&str; 7] = ["suite", "trial", "seed", "dim", "residual", "tolerance", "pass"];

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.suite.to_string(),
                r.trial.to_string(),
                r.seed.to_string(),
                r.dim.to_string(),
                fmt_sig(r.residual, 17),
                fmt_sig(r.tolerance, 17),
                r.pass.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }

    /// Per-check tallies with the largest statistic, then per-suite wall time.
    pub fn summary_text(&self) -> String {
        let mut per_check: BTreeMap<&str, (usize, usize, f64, f64)> = BTreeMap::new();
        for r in &self.rows {
            let e = per_check.entry(r.suite).or_insert((0, 0, f64::NEG_INFINITY, r.tolerance));
            e.0 += 1;
            e.1 += usize::from(!r.pass);
            e.2 = e.2.max(r.residual);
        }
        let mut s = String::new();
        let _ = writeln!(s, "{:<34} {:>7} {:>7} {:>24} {:>12}", "check", "trials", "failed", "max", "tolerance");
        for (id, (n, f, worst, tol)) in &per_check {
            let _ = writeln!(s, "{id:<34} {n:>7} {f:>7} {:>24} {:>12}", fmt_sig(*worst, 6), fmt_sig(*tol, 3));
        }
        for sum in &self.summaries {
            let _ = writeln!(
                s,
                "suite {:<10} {:>7} trials {:>7} passed {:>5} failed {:>9.3}s",
                sum.suite.name(),
                sum.trials,
                sum.passed,
                sum.failed,
                sum.wall_time.as_secs_f64()
            );
        }
        s
    }
}
