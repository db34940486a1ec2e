use std::f64::consts::FRAC_PI_2;

use crate::algebra::UnitizedOperator;
use crate::error::{GeoError, Result};
use crate::linalg::{self, CMatrix, C64, I};
use crate::manifold::PositivePoint;
use crate::spectral::SpectralDecomposition;

use super::finite_spectrum::FiniteSpectrumHermitian;
use super::split::{cartan_split, check_same_dim, tangent_normal_split};

/// Deviation from unitarity accepted for `g`.
pub const UNITARY_TOL: f64 = 1e-10;

/// Normal components up to `TANGENCY_TOL * |v|` count as tangent.
pub const TANGENCY_TOL: f64 = 1e-8;

/// The point `g e^a g*` of the orbit, on the leaf with scalar one.
#[derive(Debug, Clone)]
pub struct OrbitPoint {
    base: FiniteSpectrumHermitian,
    g: CMatrix,
    point: PositivePoint,
}

impl OrbitPoint {
    pub fn new(base: FiniteSpectrumHermitian, g: CMatrix) -> Result<Self> {
        check_same_dim(base.matrix(), &g)?;
        let dev = linalg::unitary_deviation(&g);
        if dev > UNITARY_TOL {
            return Err(GeoError::NotUnitary { deviation: dev });
        }
        let part = linalg::hermitian_part(&(&g * base.exp_minus_one() * g.adjoint()));
        let point = PositivePoint::new(UnitizedOperator::hermitian(1.0, part)?)?;
        Ok(Self { base, g, point })
    }

    pub fn base(&self) -> &FiniteSpectrumHermitian {
        &self.base
    }

    pub fn g(&self) -> &CMatrix {
        &self.g
    }

    pub fn point(&self) -> &PositivePoint {
        &self.point
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    /// Eigenbasis of the point, grouped like the blocks of the base.
    pub fn eigenbasis(&self) -> CMatrix {
        &self.g * self.base.basis()
    }

    /// Largest gap between the spectrum of the point and `exp` of the base
    /// spectrum.
    pub fn spectrum_drift(&self) -> f64 {
        self.point
            .spectrum()
            .eigenvalues()
            .iter()
            .zip(self.base.spectrum())
            .map(|(x, l)| (x - l.exp()).abs())
            .fold(0.0, f64::max)
    }

    /// The same point presented over `base`, which must have the same
    /// spectrum as the current base.
    pub fn rebase(&self, base: &FiniteSpectrumHermitian) -> Result<Self> {
        check_same_dim(self.base.matrix(), base.matrix())?;
        if !self.base.same_spectrum(base) {
            return Err(GeoError::DifferentOrbits);
        }
        if self.base.basis() == base.basis() {
            return Ok(Self {
                base: base.clone(),
                ..self.clone()
            });
        }
        let g = &self.g * self.base.basis() * base.basis().adjoint();
        Self::new(base.clone(), g)
    }
}

/// `e^{ih}` for Hermitian `h`.
pub fn exp_i(h: &CMatrix) -> Result<CMatrix> {
    if linalg::max_abs(h) == 0.0 {
        return Ok(linalg::identity(h.nrows()));
    }
    let dec = SpectralDecomposition::of_matrix(&linalg::hermitian_part(h))?;
    Ok(dec.apply_complex(|l| C64::new(0.0, l).exp()))
}

/// Velocity `i[g h g*, p]` at `t = 0` of `t -> e^{itghg*} p e^{-itghg*}`.
pub fn orbit_velocity(p: &OrbitPoint, h: &CMatrix) -> Result<CMatrix> {
    check_same_dim(p.g(), h)?;
    let x = p.g() * h * p.g().adjoint();
    Ok(linalg::hermitian_part(&(linalg::commutator(&x, &p.point().realize()) * I)))
}

/// Minimal-norm Hermitian `x` with `i[x, p] = v`, solved in the eigenbasis
/// of `p`.
pub fn solve_bracket(p: &OrbitPoint, v: &CMatrix) -> Result<CMatrix> {
    check_same_dim(p.g(), v)?;
    let w = p.eigenbasis();
    let local = w.adjoint() * v * &w;
    let mu: Vec<f64> = p.base().spectrum().iter().map(|l| l.exp()).collect();
    let owner: Vec<usize> = (0..p.base().values().len())
        .flat_map(|i| std::iter::repeat_n(i, p.base().multiplicities()[i]))
        .collect();
    let n = v.nrows();
    let x = CMatrix::from_fn(n, n, |j, k| {
        if owner[j] == owner[k] {
            C64::new(0.0, 0.0)
        } else {
            local[(j, k)] / (I * (mu[k] - mu[j]))
        }
    });
    Ok(linalg::hermitian_part(&(&w * x * w.adjoint())))
}

/// The co-diagonal generator `h` with `orbit_velocity(p, h) = v`.
pub fn orbit_generator(p: &OrbitPoint, v: &CMatrix) -> Result<CMatrix> {
    let projector = p.base().projector()?;
    check_same_dim(p.g(), v)?;
    let (tangent, normal) = tangent_normal_split(p, v)?;
    let normal_norm = linalg::hs_norm(&normal);
    let tolerance = TANGENCY_TOL * linalg::hs_norm(v);
    if normal_norm > tolerance {
        return Err(GeoError::NotTangent {
            normal: normal_norm,
            tolerance,
        });
    }
    let x = solve_bracket(p, &tangent)?;
    let local = p.g().adjoint() * x * p.g();
    Ok(cartan_split(&projector, &linalg::hermitian_part(&local))?.codiag)
}

/// `exp_p(v) = e^{ighg*} p e^{-ighg*}`, returned as the orbit point with
/// unitary `g e^{ih}`.
pub fn orbit_exp(p: &OrbitPoint, v: &CMatrix) -> Result<OrbitPoint> {
    let h = orbit_generator(p, v)?;
    orbit_geodesic(p, &h, 1.0)
}

/// `t -> e^{itghg*} p e^{-itghg*}`.
pub fn orbit_geodesic(p: &OrbitPoint, h: &CMatrix, t: f64) -> Result<OrbitPoint> {
    check_same_dim(p.g(), h)?;
    if linalg::max_abs(h) == 0.0 || t == 0.0 {
        return Ok(p.clone());
    }
    let g = p.g() * exp_i(&(h * C64::new(t, 0.0)))?;
    OrbitPoint::new(p.base().clone(), g)
}

/// Result of `orbit_log`.
#[derive(Debug, Clone)]
pub struct OrbitLog {
    /// Co-diagonal generator in the frame of the base.
    pub h: CMatrix,
    /// `|[w* g e^{ih}, e^a]|_2` with `w` the unitary of the target.
    pub commutation: f64,
    /// Set when some principal angle is numerically `pi/2`.
    pub non_unique: bool,
    /// Principal angles between the two ranges, ascending.
    pub angles: Vec<f64>,
}

/// Co-diagonal `h` with `e^{ih} e^a e^{-ih} = g* q g`, built from the
/// principal angles between the ranges of the two projectors.
pub fn orbit_log(p: &OrbitPoint, q: &OrbitPoint) -> Result<OrbitLog> {
    check_same_dim(p.g(), q.g())?;
    p.base().projector()?;
    q.base().projector()?;
    let (rp, rq) = (p.base().rank(), q.base().rank());
    if rp != rq {
        return Err(GeoError::RankMismatch { left: rp, right: rq });
    }
    let q = q.rebase(p.base())?;
    let n = p.dim();
    let r = rp;
    let ea = p.base().exp();
    let certificate = |h: &CMatrix| -> Result<f64> {
        let m = q.g().adjoint() * p.g() * exp_i(h)?;
        Ok(linalg::hs_norm(&linalg::commutator(&m, &ea)))
    };
    if r == 0 || r == n || p.g() == q.g() {
        let h = linalg::zeros(n);
        let commutation = certificate(&h)?;
        return Ok(OrbitLog {
            h,
            commutation,
            non_unique: false,
            angles: vec![0.0; r],
        });
    }
    let rel = p.g().adjoint() * q.g();
    let basis = p.base().basis();
    // kernel columns first, range columns last
    let u0 = basis.columns(0, n - r).clone_owned();
    let u1 = basis.columns(n - r, r).clone_owned();
    let y1 = u1.adjoint() * &rel * &u1;
    let y2 = u0.adjoint() * &rel * &u1;
    // Y1 v_i = c_i, Y2 v_i = s_i with |c_i|^2 + |s_i|^2 = 1: the principal
    // angles are atan2(|s_i|, |c_i|)
    let gram = SpectralDecomposition::of_matrix(&linalg::hermitian_part(&(y1.adjoint() * &y1)))?;
    let c = &y1 * gram.basis();
    let s = &y2 * gram.basis();
    let cn: Vec<f64> = (0..r).map(|i| c.column(i).norm()).collect();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&i, &j| cn[j].total_cmp(&cn[i]));
    let mut w_cols = Vec::with_capacity(r);
    let mut w1 = CMatrix::zeros(r, r);
    let mut missing = Vec::new();
    for &i in &order {
        let ok = cn[i] > 1e-12 && linalg::gram_schmidt_push(&mut w_cols, &(c.column(i) / C64::new(cn[i], 0.0)), 1e-6);
        if ok {
            w1.set_column(i, w_cols.last().expect("pushed"));
        } else {
            missing.push(i);
        }
    }
    for i in missing {
        linalg::gram_schmidt_complete(&mut w_cols, r);
        w1.set_column(i, w_cols.last().expect("pushed"));
    }
    let mut angles = Vec::with_capacity(r);
    let mut m = CMatrix::zeros(n - r, r);
    for i in 0..r {
        let theta = s.column(i).norm().atan2(cn[i]);
        let factor = if theta > 1e-8 { theta / theta.sin() } else { 1.0 + theta * theta / 6.0 };
        m += s.column(i) * w1.column(i).adjoint() * C64::new(factor, 0.0);
        angles.push(theta);
    }
    let upper = &u1 * m.adjoint() * &u0.adjoint() * I;
    let h = linalg::hermitian_part(&(&upper + upper.adjoint()));
    angles.sort_by(f64::total_cmp);
    let non_unique = angles.iter().any(|&t| FRAC_PI_2 - t < 1e-8);
    let commutation = certificate(&h)?;
    Ok(OrbitLog {
        h,
        commutation,
        non_unique,
        angles,
    })
}

/// `L = (sqrt 2 / 2) |h|_2` for `h` co-diagonal with respect to `projector`.
pub fn orbit_length(projector: &CMatrix, h: &CMatrix) -> Result<f64> {
    let split = cartan_split(projector, h)?;
    let hn = linalg::hs_norm(h);
    let deviation = linalg::hs_norm(&split.diag);
    if deviation > 1e-10 * hn.max(1.0) {
        return Err(GeoError::NotCodiagonal { deviation });
    }
    Ok(std::f64::consts::FRAC_1_SQRT_2 * hn)
}
