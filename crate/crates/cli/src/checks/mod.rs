//! The check registry. A check draws one random instance per trial and
//! returns a statistic; the trial passes when the statistic is at most the
//! tolerance.

use std::collections::BTreeSet;

use orbitgeo_core::linalg::{self, CMatrix};
use orbitgeo_core::Result;
use rand_chacha::ChaCha8Rng;

use crate::config::Suite;
use crate::error::CliError;

mod cartan;
mod curvature;
mod geodesic;
mod inequalities;
mod metric;
mod orbit;
mod section;

/// Per-trial state handed to a check.
pub struct Ctx {
    pub rng: ChaCha8Rng,
    pub dim: usize,
    pub step: f64,
}

pub type TrialFn = fn(&mut Ctx) -> Result<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// A residual bound; suite-level `--tol` overrides apply.
    Residual(f64),
    /// Exact checks, indicators and ratio-encoded lower bounds; only a
    /// check-level override applies.
    Fixed(f64),
}

impl Tolerance {
    pub fn value(self) -> f64 {
        match self {
            Tolerance::Residual(v) | Tolerance::Fixed(v) => v,
        }
    }
}

pub struct Check {
    pub id: &'static str,
    pub suite: Suite,
    pub tolerance: Tolerance,
    /// Dimensions used instead of the configured ones.
    pub dims: Option<&'static [usize]>,
    pub run: TrialFn,
    pub about: &'static str,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check").field("id", &self.id).field("tolerance", &self.tolerance).finish()
    }
}

/// Every invariant that `check` must be able to reach.
pub const REQUIRED: &[&str] = &[
    "metric/trace_cyclicity",
    "metric/spectral_radius",
    "metric/opnorm_submultiplicative",
    "metric/functional_equations",
    "metric/homomorphism",
    "metric/isometry",
    "metric/compatibility",
    "geodesic/euler",
    "geodesic/endpoints",
    "geodesic/leaf",
    "geodesic/scalar_formula",
    "geodesic/exp_log",
    "geodesic/minimality",
    "curvature/antisymmetry",
    "curvature/pair_symmetry",
    "curvature/sectional",
    "emi/inequality",
    "emi/commuting_equality",
    "emi/distance",
    "segal/inequality",
    "segal/commuting_equality",
    "orbit/invariance",
    "orbit/unitary_isometry",
    "orbit/codiagonal",
    "orbit/obstruction",
    "orbit/dichotomy",
    "orbit/non_geodesic",
    "orbit/generator",
    "orbit/exp_log",
    "orbit/log_of_exp",
    "orbit/endpoint_spectrum",
    "orbit/length",
    "orbit/length_2x2",
    "orbit/witness",
    "cartan/grading",
    "cartan/tangent_normal",
    "section/identity",
    "section/local_section",
];

pub fn registry() -> Vec<&'static Check> {
    [
        metric::CHECKS,
        geodesic::CHECKS,
        curvature::CHECKS,
        inequalities::CHECKS,
        orbit::CHECKS,
        cartan::CHECKS,
        section::CHECKS,
    ]
    .into_iter()
    .flatten()
    .collect()
}

/// Compares the registry with `REQUIRED`.
pub fn validate_registry(checks: &[&Check]) -> Result<(), CliError> {
    let mut seen = BTreeSet::new();
    for c in checks {
        if !seen.insert(c.id) {
            return Err(CliError::Registry(format!("duplicate check `{}`", c.id)));
        }
        if c.id.split('/').next() != Some(c.suite.name()) {
            return Err(CliError::Registry(format!("`{}` is filed under suite `{}`", c.id, c.suite)));
        }
        let t = c.tolerance.value();
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::Registry(format!("`{}` has tolerance {t}", c.id)));
        }
    }
    let required: BTreeSet<&str> = REQUIRED.iter().copied().collect();
    if let Some(missing) = required.difference(&seen).next() {
        return Err(CliError::Registry(format!("missing check `{missing}`")));
    }
    if let Some(extra) = seen.difference(&required).next() {
        return Err(CliError::Registry(format!("unlisted check `{extra}`")));
    }
    Ok(())
}

pub fn find(id: &str) -> Option<&'static Check> {
    registry().into_iter().find(|c| c.id == id)
}

pub(crate) fn rel_frob(a: &CMatrix, b: &CMatrix) -> f64 {
    linalg::frobenius(&(a - b)) / linalg::frobenius(b).max(1.0)
}

pub(crate) fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

pub(crate) fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::run_trial;

    #[test]
    fn registry_matches_required_list() {
        validate_registry(&registry()).unwrap();
    }

    #[test]
    fn validation_catches_omissions_and_duplicates() {
        let mut checks = registry();
        let first = checks.remove(0);
        assert!(matches!(validate_registry(&checks), Err(CliError::Registry(_))));
        checks.push(first);
        checks.push(first);
        assert!(matches!(validate_registry(&checks), Err(CliError::Registry(_))));
    }

    #[test]
    fn every_check_passes_one_small_trial() {
        for c in registry() {
            for dim in c.dims.unwrap_or(&[2, 3]) {
                let (stat, note) = run_trial(c, 12345, *dim, orbitgeo_core::curves::DEFAULT_STEP);
                assert!(stat <= c.tolerance.value(), "{} dim {dim}: {stat} ({note:?})", c.id);
            }
        }
    }
}
