use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use orbitgeo_core::curves::DEFAULT_STEP;

use crate::error::{CliError, Result};

pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_DIMS: [usize; 5] = [2, 3, 4, 6, 8];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Metric,
    Geodesic,
    Curvature,
    Emi,
    Segal,
    Orbit,
    Cartan,
    Section,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Metric,
        Suite::Geodesic,
        Suite::Curvature,
        Suite::Emi,
        Suite::Segal,
        Suite::Orbit,
        Suite::Cartan,
        Suite::Section,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Metric => "metric",
            Suite::Geodesic => "geodesic",
            Suite::Curvature => "curvature",
            Suite::Emi => "emi",
            Suite::Segal => "segal",
            Suite::Orbit => "orbit",
            Suite::Cartan => "cartan",
            Suite::Section => "section",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown suite `{s}`")))
    }
}

/// Suites selected on the command line; `all` expands to every suite.
pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Trials per check and dimension.
    pub trials: usize,
    pub dims: Vec<usize>,
    /// Keyed by suite name (`orbit`) or check id (`orbit/exp_log`).
    pub tolerances: BTreeMap<String, f64>,
    pub out: Option<PathBuf>,
    /// Finite-difference step for curve checks.
    pub step: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: DEFAULT_TRIALS,
            dims: DEFAULT_DIMS.to_vec(),
            tolerances: BTreeMap::new(),
            out: None,
            step: DEFAULT_STEP,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d < 2) {
            return Err(CliError::Usage("--dims must be a non-empty list of integers >= 2".into()));
        }
        if let Some((k, v)) = self.tolerances.iter().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return Err(CliError::Usage(format!("tolerance for `{k}` must be positive, got {v}")));
        }
        if !(self.step > 0.0 && self.step < 0.25) {
            return Err(CliError::Usage(format!("--step must lie in (0, 0.25), got {}", self.step)));
        }
        Ok(())
    }
}

/// Parses `name=value`.
pub fn parse_tolerance(s: &str) -> Result<(String, f64)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("expected <suite>=<value>, got `{s}`")))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad tolerance value in `{s}`")))?;
    Ok((k.trim().to_string(), v))
}
