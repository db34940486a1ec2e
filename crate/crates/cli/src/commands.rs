//! The matrix commands. Each returns the text to print on standard output.

use std::path::Path;

use orbitgeo_core::io::{read_hermitian, read_json, to_json_string, MatrixJson};
use orbitgeo_core::linalg::{self, CMatrix};
use orbitgeo_core::manifold::{distance, geodesic};
use orbitgeo_core::orbit::{
    cross_section_on_orbit, flat_residual, orbit_generator, orbit_geodesic, orbit_length, orbit_log, orbit_velocity,
    orbits_coincide_witness, FiniteSpectrumHermitian, OrbitPoint,
};
use orbitgeo_core::spectral::SpectralDecomposition;
use orbitgeo_core::{GeoError, PositivePoint, Result};
use serde::{Deserialize, Serialize};

/// An orbit point `g e^a g*` as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitJson {
    pub base: MatrixJson,
    pub g: MatrixJson,
}

impl OrbitJson {
    pub fn new(base: &CMatrix, g: &CMatrix) -> Self {
        Self {
            base: MatrixJson::from_matrix(base),
            g: MatrixJson::from_unitary(g),
        }
    }

    pub fn to_point(&self) -> Result<OrbitPoint> {
        let a = self.base.to_hermitian()?;
        if a.scalar().norm() != 0.0 {
            return Err(GeoError::InvalidShape("orbit base must have scalar 0".into()));
        }
        let base = FiniteSpectrumHermitian::from_matrix(a.part())?;
        OrbitPoint::new(base, self.g.to_operator()?.realize())
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Certificates {
    pub spectrum_drift: f64,
    pub commutation: f64,
}

#[derive(Serialize)]
struct GeodesicPoint<'a> {
    t: f64,
    point: &'a MatrixJson,
}

#[derive(Serialize)]
struct OrbitResult {
    base: MatrixJson,
    g: MatrixJson,
    certificates: Certificates,
}

#[derive(Serialize)]
struct LogResult {
    base: MatrixJson,
    g: MatrixJson,
    h: MatrixJson,
    v: MatrixJson,
    angles: Vec<f64>,
    non_unique: bool,
    certificates: Certificates,
}

#[derive(Serialize)]
struct LengthResult {
    length: f64,
    certificates: Certificates,
}

#[derive(Serialize)]
struct WitnessResult {
    base: MatrixJson,
    g: MatrixJson,
    support_dim: usize,
    certificates: Certificates,
}

fn read_point(path: &Path) -> Result<PositivePoint> {
    PositivePoint::new(read_hermitian(path)?)
}

pub fn read_orbit(path: &Path) -> Result<OrbitPoint> {
    read_json::<OrbitJson>(path)?.to_point()
}

/// A Hermitian matrix, either a plain matrix file or the field `key` of a
/// result object (so `orbit log` output feeds `orbit exp` and `orbit length`).
fn read_part(path: &Path, key: &str) -> Result<CMatrix> {
    let value: serde_json::Value = read_json(path)?;
    let value = match value.get(key) {
        Some(v) if value.get("dim").is_none() => v.clone(),
        _ => value,
    };
    let m: MatrixJson = serde_json::from_value(value)?;
    let x = m.to_hermitian()?;
    if x.scalar().norm() != 0.0 {
        return Err(GeoError::NotTangent {
            normal: x.scalar().norm(),
            tolerance: 0.0,
        });
    }
    Ok(x.into_part())
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut s = to_json_string(value)?;
    s.push('\n');
    Ok(s)
}

pub fn geodesic_cmd(p: &Path, q: &Path, ts: &[f64]) -> Result<String> {
    let p = read_point(p)?;
    let q = read_point(q)?;
    let mut out = String::new();
    for &t in ts {
        let point = MatrixJson::from_operator(geodesic(&p, &q, t)?.value());
        out += &json_line(&GeodesicPoint { t, point: &point })?;
    }
    Ok(out)
}

pub fn dist_cmd(p: &Path, q: &Path) -> Result<String> {
    let d = distance(&read_point(p)?, &read_point(q)?)?;
    Ok(format!("{}\n", orbitgeo_core::io::fmt_sig(d, 12)))
}

fn spectrum_gap(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let x = SpectralDecomposition::of_matrix(&linalg::hermitian_part(a))?;
    let y = SpectralDecomposition::of_matrix(&linalg::hermitian_part(b))?;
    Ok(x.eigenvalues()
        .iter()
        .zip(y.eigenvalues())
        .map(|(s, t)| (s - t).abs())
        .fold(0.0, f64::max))
}

/// `|[g* u, a]|_2`: zero when `u` and `g` move `a` to the same place.
fn commutation(g: &CMatrix, u: &CMatrix, a: &CMatrix) -> f64 {
    linalg::hs_norm(&linalg::commutator(&(g.adjoint() * u), a))
}

pub fn orbit_exp_cmd(point: &Path, v: &Path) -> Result<String> {
    let p = read_orbit(point)?;
    let v = read_part(v, "v")?;
    let h = orbit_generator(&p, &v)?;
    let q = orbit_geodesic(&p, &h, 1.0)?;
    let certificates = Certificates {
        spectrum_drift: q.spectrum_drift(),
        commutation: linalg::hs_norm(&(orbit_velocity(&p, &h)? - &v)),
    };
    json_line(&OrbitResult {
        base: MatrixJson::from_matrix(q.base().matrix()),
        g: MatrixJson::from_unitary(q.g()),
        certificates,
    })
}

pub fn orbit_log_cmd(from: &Path, to: &Path) -> Result<String> {
    let p = read_orbit(from)?;
    let q = read_orbit(to)?;
    let log = orbit_log(&p, &q)?;
    let end = orbit_geodesic(&p, &log.h, 1.0)?;
    json_line(&LogResult {
        base: MatrixJson::from_matrix(p.base().matrix()),
        g: MatrixJson::from_unitary(p.g()),
        h: MatrixJson::from_matrix(&log.h),
        v: MatrixJson::from_matrix(&orbit_velocity(&p, &log.h)?),
        angles: log.angles,
        non_unique: log.non_unique,
        certificates: Certificates {
            spectrum_drift: end.spectrum_drift(),
            commutation: log.commutation,
        },
    })
}

pub fn orbit_length_cmd(point: &Path, h: &Path) -> Result<String> {
    let p = read_orbit(point)?;
    let a = p.base().projector()?;
    let h = read_part(h, "h")?;
    let length = orbit_length(&a, &h)?;
    json_line(&LengthResult {
        length,
        certificates: Certificates {
            spectrum_drift: p.spectrum_drift(),
            commutation: flat_residual(&a, &h)?,
        },
    })
}

pub fn orbit_section_cmd(point: &Path) -> Result<String> {
    let p = read_orbit(point)?;
    let a = p.base().matrix();
    let x = linalg::hermitian_part(&(p.g() * a * p.g().adjoint()));
    let phi = cross_section_on_orbit(p.base(), &x)?;
    json_line(&OrbitResult {
        base: MatrixJson::from_matrix(a),
        g: MatrixJson::from_unitary(&phi),
        certificates: Certificates {
            spectrum_drift: spectrum_gap(&x, a)?,
            commutation: commutation(p.g(), &phi, a),
        },
    })
}

pub fn orbit_witness_cmd(point: &Path) -> Result<String> {
    let p = read_orbit(point)?;
    let a = p.base().matrix();
    let w = orbits_coincide_witness(p.base(), p.g())?;
    let u = w.u.realize();
    json_line(&WitnessResult {
        base: MatrixJson::from_matrix(a),
        g: MatrixJson::from_unitary(&u),
        support_dim: w.support_dim,
        certificates: Certificates {
            spectrum_drift: spectrum_gap(&(&u * a * u.adjoint()), a)?,
            commutation: commutation(p.g(), &u, a),
        },
    })
}
