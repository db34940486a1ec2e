//! The manifold of positive invertible unitized operators with the metric
//! `<X, Y>_p = Re <p^{-1} X, Y p^{-1}>_2`.
//!
//! Its leaves `scalar = const` are geodesically convex; the leaf through the
//! identity is the exponential of the Hermitian parts.

use std::sync::OnceLock;

use crate::algebra::UnitizedOperator;
use crate::error::{GeoError, Result};
use crate::linalg::{self, CMatrix};
use crate::spectral::{lift_fn, lift_with, matrix_function, MatrixFunction, SpectralDecomposition};

/// A positive invertible element: Hermitian, scalar part `> 0`, positive
/// definite realization.
#[derive(Debug, Clone)]
pub struct PositivePoint {
    value: UnitizedOperator,
    spectrum: SpectralDecomposition,
    inv: OnceLock<UnitizedOperator>,
    sqrt: OnceLock<UnitizedOperator>,
    inv_sqrt: OnceLock<UnitizedOperator>,
}

impl PartialEq for PositivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PositivePoint {
    pub fn new(value: UnitizedOperator) -> Result<Self> {
        let spectrum = crate::spectral::spectral(&value)?;
        let scalar = value.scalar().re;
        if !(scalar > 0.0 && spectrum.is_positive()) {
            return Err(GeoError::NotPositive {
                min_eigenvalue: spectrum.min(),
                scalar,
            });
        }
        Ok(Self {
            value,
            spectrum,
            inv: OnceLock::new(),
            sqrt: OnceLock::new(),
            inv_sqrt: OnceLock::new(),
        })
    }

    /// Symmetrizes first; for values produced by floating point products that
    /// are Hermitian only up to rounding.
    pub fn from_hermitian_part(value: &UnitizedOperator) -> Result<Self> {
        Self::new(value.hermitian_part())
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(UnitizedOperator::identity(dim)).expect("identity is positive")
    }

    pub fn value(&self) -> &UnitizedOperator {
        &self.value
    }

    pub fn dim(&self) -> usize {
        self.value.dim()
    }

    /// The leaf label.
    pub fn scalar(&self) -> f64 {
        self.value.scalar().re
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn realize(&self) -> CMatrix {
        self.value.realize()
    }

    pub fn pow(&self, t: f64) -> UnitizedOperator {
        lift_with(self.scalar(), &self.spectrum, MatrixFunction::Pow(t)).expect("positive point")
    }

    pub fn inv(&self) -> &UnitizedOperator {
        self.inv
            .get_or_init(|| lift_with(self.scalar(), &self.spectrum, MatrixFunction::Inv).expect("positive point"))
    }

    pub fn sqrt(&self) -> &UnitizedOperator {
        self.sqrt
            .get_or_init(|| lift_with(self.scalar(), &self.spectrum, MatrixFunction::Sqrt).expect("positive point"))
    }

    pub fn inv_sqrt(&self) -> &UnitizedOperator {
        self.inv_sqrt.get_or_init(|| self.pow(-0.5))
    }

    pub fn log(&self) -> UnitizedOperator {
        lift_with(self.scalar(), &self.spectrum, MatrixFunction::Log).expect("positive point")
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(GeoError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

/// A Hermitian element attached to a base point.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    base: PositivePoint,
    value: UnitizedOperator,
}

impl TangentVector {
    pub fn new(base: &PositivePoint, value: UnitizedOperator) -> Result<Self> {
        if value.dim() != base.dim() {
            return Err(GeoError::DimensionMismatch {
                left: base.dim(),
                right: value.dim(),
            });
        }
        if !value.is_hermitian() {
            return Err(GeoError::NotHermitian {
                deviation: value.hermitian_deviation(),
            });
        }
        Ok(Self {
            base: base.clone(),
            value,
        })
    }

    pub fn from_hermitian_part(base: &PositivePoint, value: &UnitizedOperator) -> Result<Self> {
        Self::new(base, value.hermitian_part())
    }

    pub fn zero(base: &PositivePoint) -> Self {
        Self {
            base: base.clone(),
            value: UnitizedOperator::zero(base.dim()),
        }
    }

    pub fn base(&self) -> &PositivePoint {
        &self.base
    }

    pub fn value(&self) -> &UnitizedOperator {
        &self.value
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            base: self.base.clone(),
            value: self.value.scale_real(c),
        }
    }

    fn check_base(&self, p: &PositivePoint) -> Result<()> {
        if &self.base != p {
            return Err(GeoError::BaseMismatch);
        }
        Ok(())
    }
}

fn metric_raw(p: &PositivePoint, x: &UnitizedOperator, y: &UnitizedOperator) -> f64 {
    let pinv = p.inv();
    let left = pinv * x;
    let right = y * pinv;
    left.inner2(&right).expect("same dimension").re
}

/// `<X, Y>_p = Re <p^{-1} X, Y p^{-1}>_2`.
pub fn metric_at(p: &PositivePoint, x: &TangentVector, y: &TangentVector) -> Result<f64> {
    x.check_base(p)?;
    y.check_base(p)?;
    Ok(metric_raw(p, x.value(), y.value()))
}

pub fn norm_at(p: &PositivePoint, x: &TangentVector) -> Result<f64> {
    Ok(metric_at(p, x, x)?.max(0.0).sqrt())
}

/// The geodesic `t -> p^{1/2} (p^{-1/2} q p^{-1/2})^t p^{1/2}` with the
/// inner factor decomposed once, so that evaluation at many `t` is cheap.
#[derive(Debug, Clone)]
pub struct Geodesic {
    sqrt_p: UnitizedOperator,
    inner_scalar: f64,
    inner: SpectralDecomposition,
}

impl Geodesic {
    pub fn new(p: &PositivePoint, q: &PositivePoint) -> Result<Self> {
        p.check_dim(q)?;
        let isq = p.inv_sqrt();
        let inner = (&(isq * q.value()) * isq).hermitian_part();
        let inner_scalar = inner.scalar().re;
        let dec = crate::spectral::spectral(&inner)?;
        if !(inner_scalar > 0.0 && dec.is_positive()) {
            return Err(GeoError::NotPositive {
                min_eigenvalue: dec.min(),
                scalar: inner_scalar,
            });
        }
        Ok(Self {
            sqrt_p: p.sqrt().clone(),
            inner_scalar,
            inner: dec,
        })
    }

    fn sandwich(&self, m: &UnitizedOperator) -> UnitizedOperator {
        (&(&self.sqrt_p * m) * &self.sqrt_p).hermitian_part()
    }

    pub fn at(&self, t: f64) -> Result<PositivePoint> {
        let mt = lift_with(self.inner_scalar, &self.inner, MatrixFunction::Pow(t))?;
        PositivePoint::new(self.sandwich(&mt))
    }

    /// Exact velocity `p^{1/2} ln(m) m^t p^{1/2}`.
    pub fn velocity(&self, t: f64) -> Result<UnitizedOperator> {
        let f = |l: f64| l.ln() * l.powf(t);
        let v = lift_fn(f(self.inner_scalar), &self.inner, f)?;
        Ok(self.sandwich(&v))
    }

    /// The initial velocity, i.e. the logarithm at `p`.
    pub fn initial_velocity(&self) -> Result<UnitizedOperator> {
        let l = lift_with(self.inner_scalar, &self.inner, MatrixFunction::Log)?;
        Ok(self.sandwich(&l))
    }
}

pub fn geodesic(p: &PositivePoint, q: &PositivePoint, t: f64) -> Result<PositivePoint> {
    Geodesic::new(p, q)?.at(t)
}

/// `exp_p(V) = p^{1/2} e^{p^{-1/2} V p^{-1/2}} p^{1/2}`.
pub fn exp_map(p: &PositivePoint, v: &TangentVector) -> Result<PositivePoint> {
    v.check_base(p)?;
    let isq = p.inv_sqrt();
    let inner = (&(isq * v.value()) * isq).hermitian_part();
    let e = matrix_function(&inner, MatrixFunction::Exp)?;
    let sq = p.sqrt();
    PositivePoint::from_hermitian_part(&(&(sq * &e) * sq))
}

/// The two rearranged forms `p e^{p^{-1} V}` and `e^{V p^{-1}} p`, evaluated
/// with a general (non-Hermitian) matrix exponential.
pub fn exp_map_alternate(p: &PositivePoint, v: &TangentVector) -> Result<(CMatrix, CMatrix)> {
    v.check_base(p)?;
    let pinv = p.inv().realize();
    let vr = v.value().realize();
    let pr = p.realize();
    let left = &pr * linalg::expm(&(&pinv * &vr));
    let right = linalg::expm(&(&vr * &pinv)) * &pr;
    Ok((left, right))
}

/// `exp_p^{-1}(q) = p^{1/2} ln(p^{-1/2} q p^{-1/2}) p^{1/2}`.
pub fn log_map(p: &PositivePoint, q: &PositivePoint) -> Result<TangentVector> {
    let g = Geodesic::new(p, q)?;
    TangentVector::new(p, g.initial_velocity()?)
}

/// Geodesic distance, the length `||log_p(q)||_p`.
pub fn distance(p: &PositivePoint, q: &PositivePoint) -> Result<f64> {
    let v = log_map(p, q)?;
    norm_at(p, &v)
}

fn check_common(p: &PositivePoint, vs: &[&TangentVector]) -> Result<()> {
    vs.iter().try_for_each(|v| v.check_base(p))
}

/// `R_p(X, Y) Z = -1/4 p [[p^{-1} X, p^{-1} Y], p^{-1} Z]`.
pub fn curvature(
    p: &PositivePoint,
    x: &TangentVector,
    y: &TangentVector,
    z: &TangentVector,
) -> Result<TangentVector> {
    check_common(p, &[x, y, z])?;
    let pinv = p.inv();
    let px = pinv * x.value();
    let py = pinv * y.value();
    let pz = pinv * z.value();
    let inner = px.commutator(&py)?.commutator(&pz)?;
    let r = (p.value() * &inner).scale_real(-0.25);
    TangentVector::from_hermitian_part(p, &r)
}

/// Sectional curvature of the plane spanned by `X, Y`.
pub fn sectional(p: &PositivePoint, x: &TangentVector, y: &TangentVector) -> Result<f64> {
    check_common(p, &[x, y])?;
    let xx = metric_raw(p, x.value(), x.value());
    let yy = metric_raw(p, y.value(), y.value());
    let xy = metric_raw(p, x.value(), y.value());
    let gram = xx * yy - xy * xy;
    if gram <= 1e-10 * (xx * yy) || gram <= 0.0 {
        return Err(GeoError::DegeneratePlane { gram });
    }
    let ryy = curvature(p, x, y, y)?;
    Ok(metric_raw(p, ryy.value(), x.value()) / gram)
}

/// `I_g(p) = g p g*` for invertible `g`.
pub fn isometry_action(g: &UnitizedOperator, p: &PositivePoint) -> Result<PositivePoint> {
    if g.dim() != p.dim() {
        return Err(GeoError::DimensionMismatch {
            left: g.dim(),
            right: p.dim(),
        });
    }
    let gr = g.realize();
    let gram = SpectralDecomposition::of_matrix(&linalg::hermitian_part(&(gr.adjoint() * &gr)))?;
    let smallest = gram.min().max(0.0).sqrt();
    let largest = gram.max().max(0.0).sqrt();
    if g.scalar().norm() == 0.0 || smallest <= 1e-12 * largest.max(1.0) {
        return Err(GeoError::SingularElement { smallest });
    }
    PositivePoint::from_hermitian_part(&(&(g * p.value()) * &g.adjoint()))
}

fn require_hermitian(x: &UnitizedOperator) -> Result<()> {
    if !x.is_hermitian() {
        return Err(GeoError::NotHermitian {
            deviation: x.hermitian_deviation(),
        });
    }
    Ok(())
}

/// Both sides of `||X - Y||_2 <= ||ln(e^{-X/2} e^Y e^{-X/2})||_2`.
pub fn emi_check(x: &UnitizedOperator, y: &UnitizedOperator) -> Result<(f64, f64)> {
    require_hermitian(x)?;
    require_hermitian(y)?;
    let lhs = x.checked_sub(y)?.norm2();
    let half = matrix_function(&x.scale_real(-0.5), MatrixFunction::Exp)?;
    let ey = matrix_function(y, MatrixFunction::Exp)?;
    let middle = (&(&half * &ey) * &half).hermitian_part();
    let rhs = matrix_function(&middle, MatrixFunction::Log)?.norm2();
    Ok((lhs, rhs))
}

/// Both sides of `||e^{x+y}||_op <= ||e^{x/2} e^y e^{x/2}||_op`.
pub fn segal_check(x: &UnitizedOperator, y: &UnitizedOperator) -> Result<(f64, f64)> {
    require_hermitian(x)?;
    require_hermitian(y)?;
    let sum = matrix_function(&x.checked_add(y)?, MatrixFunction::Exp)?;
    let lhs = crate::spectral::spectral(&sum)?.max();
    let half = matrix_function(&x.scale_real(0.5), MatrixFunction::Exp)?;
    let ey = matrix_function(y, MatrixFunction::Exp)?;
    let middle = (&(&half * &ey) * &half).hermitian_part();
    let rhs = crate::spectral::spectral(&middle)?.max();
    Ok((lhs, rhs))
}

/// Convenience: a point from a real scalar and a Hermitian part.
pub fn point(scalar: f64, part: CMatrix) -> Result<PositivePoint> {
    PositivePoint::new(UnitizedOperator::hermitian(scalar, part)?)
}

/// Convenience: a tangent vector at `p` from a real scalar and a Hermitian part.
pub fn tangent(p: &PositivePoint, scalar: f64, part: CMatrix) -> Result<TangentVector> {
    TangentVector::new(p, UnitizedOperator::hermitian(scalar, part)?)
}

#[allow(dead_code)]
fn assert_send_sync() {
    fn is<T: Send + Sync>() {}
    is::<PositivePoint>();
    is::<TangentVector>();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag_real, from_real_rows, max_abs, unit, C64, I};

    fn rel(a: &CMatrix, b: &CMatrix) -> f64 {
        linalg::frobenius(&(a - b)) / linalg::frobenius(b).max(1.0)
    }

    fn sample_point(n: usize, seed: f64, scalar: f64) -> PositivePoint {
        let m = CMatrix::from_fn(n, n, |i, j| {
            C64::new((seed + 1.3 * i as f64 - 0.4 * j as f64).sin(), (seed * (i + 2 * j) as f64).cos()) * 0.3
        });
        let h = UnitizedOperator::hermitian(scalar.ln(), linalg::hermitian_part(&m)).unwrap();
        PositivePoint::new(matrix_function(&h, MatrixFunction::Exp).unwrap()).unwrap()
    }

    fn sample_tangent(p: &PositivePoint, seed: f64) -> TangentVector {
        let n = p.dim();
        let m = CMatrix::from_fn(n, n, |i, j| C64::new((seed * (1 + i) as f64 + j as f64).cos(), (seed - (i * j) as f64).sin()));
        tangent(p, seed.sin(), linalg::hermitian_part(&m)).unwrap()
    }

    #[test]
    fn positive_point_rejects_bad_input() {
        assert!(matches!(point(1.0, diag_real(&[-1.0, 0.0])), Err(GeoError::NotPositive { .. })));
        assert!(matches!(point(0.0, linalg::identity(2)), Err(GeoError::NotPositive { .. })));
        assert!(matches!(point(-1.0, diag_real(&[3.0, 3.0])), Err(GeoError::NotPositive { .. })));
        let non_herm = UnitizedOperator::from_part(unit(2, 0, 1)).unwrap();
        assert!(matches!(PositivePoint::new(non_herm), Err(GeoError::NotHermitian { .. })));
    }

    #[test]
    fn metric_at_identity_is_inner2() {
        let p = PositivePoint::identity(2);
        let x = tangent(&p, 0.0, unit(2, 0, 0)).unwrap();
        assert!((metric_at(&p, &x, &x).unwrap() - 4.0).abs() < 1e-15);
        let z = TangentVector::zero(&p);
        assert_eq!(metric_at(&p, &z, &z).unwrap(), 0.0);
    }

    #[test]
    fn metric_at_diagonal_point() {
        // realization diag(2,1): p^{-1} E11 p^{-1} = E11 / 4, so 4 * 1/4 = 1
        let p = point(1.0, diag_real(&[1.0, 0.0])).unwrap();
        let x = tangent(&p, 0.0, unit(2, 0, 0)).unwrap();
        assert!((metric_at(&p, &x, &x).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn metric_rejects_foreign_base() {
        let p = PositivePoint::identity(2);
        let q = point(2.0, linalg::zeros(2)).unwrap();
        let x = tangent(&q, 0.0, unit(2, 0, 0)).unwrap();
        assert!(matches!(metric_at(&p, &x, &x), Err(GeoError::BaseMismatch)));
        assert!(matches!(exp_map(&p, &x), Err(GeoError::BaseMismatch)));
    }

    #[test]
    fn metric_is_symmetric_and_positive() {
        let p = sample_point(4, 0.7, 1.4);
        let x = sample_tangent(&p, 0.3);
        let y = sample_tangent(&p, 1.1);
        let xy = metric_at(&p, &x, &y).unwrap();
        let yx = metric_at(&p, &y, &x).unwrap();
        assert!((xy - yx).abs() < 1e-12 * xy.abs().max(1.0));
        assert!(metric_at(&p, &x, &x).unwrap() > 0.0);
    }

    #[test]
    fn geodesic_examples() {
        let p = sample_point(3, 0.2, 1.0);
        let same = geodesic(&p, &p, 0.37).unwrap();
        assert!(rel(&same.realize(), &p.realize()) < 1e-12);

        let id = PositivePoint::identity(2);
        let q = point(1.0, diag_real(&[3.0, 0.0])).unwrap();
        let mid = geodesic(&id, &q, 0.5).unwrap();
        assert!(max_abs(&(mid.realize() - diag_real(&[2.0, 1.0]))) < 1e-14);

        let a = sample_point(4, 0.9, 2.0);
        let b = sample_point(4, 2.4, 0.5);
        let m1 = geodesic(&a, &b, 0.5).unwrap();
        let m2 = geodesic(&b, &a, 0.5).unwrap();
        assert!(rel(&m1.realize(), &m2.realize()) < 1e-12);
    }

    #[test]
    fn geodesic_scalar_follows_leaf_interpolation() {
        let a = sample_point(3, 0.4, 2.0);
        let b = sample_point(3, 1.4, 0.5);
        let g = Geodesic::new(&a, &b).unwrap();
        for k in 0..=8 {
            let t = k as f64 / 8.0;
            let expected = a.scalar().powf(1.0 - t) * b.scalar().powf(t);
            assert!((g.at(t).unwrap().scalar() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn exp_map_examples() {
        let p = sample_point(3, 0.6, 1.2);
        let back = exp_map(&p, &TangentVector::zero(&p)).unwrap();
        assert!(rel(&back.realize(), &p.realize()) < 1e-13);

        let id = PositivePoint::identity(2);
        let v = tangent(&id, 0.0, diag_real(&[2f64.ln(), 0.0])).unwrap();
        let e = exp_map(&id, &v).unwrap();
        assert!(max_abs(&(e.realize() - diag_real(&[2.0, 1.0]))) < 1e-14);
    }

    #[test]
    fn exp_map_alternate_forms_agree() {
        let p = sample_point(4, 1.9, 0.8);
        let v = sample_tangent(&p, 0.45);
        let e = exp_map(&p, &v).unwrap().realize();
        let (left, right) = exp_map_alternate(&p, &v).unwrap();
        assert!(rel(&left, &e) < 1e-10);
        assert!(rel(&right, &e) < 1e-10);
    }

    #[test]
    fn log_map_examples() {
        let p = sample_point(3, 1.2, 1.0);
        let zero = log_map(&p, &p).unwrap();
        assert!(zero.value().norm2() < 1e-13);

        let id = PositivePoint::identity(2);
        let q = point(1.0, diag_real(&[3.0, 0.0])).unwrap();
        let v = log_map(&id, &q).unwrap();
        assert!(v.value().scalar().norm() < 1e-15);
        assert!(max_abs(&(v.value().part() - diag_real(&[4f64.ln(), 0.0]))) < 1e-14);
    }

    #[test]
    fn exp_log_roundtrip_and_consistency() {
        let p = sample_point(5, 0.3, 1.7);
        let q = sample_point(5, 2.2, 0.6);
        let v = log_map(&p, &q).unwrap();
        let back = exp_map(&p, &v).unwrap();
        assert!(rel(&back.realize(), &q.realize()) < 1e-9);
        for t in [0.2, 0.5, 0.9] {
            let a = exp_map(&p, &v.scale(t)).unwrap();
            let b = geodesic(&p, &q, t).unwrap();
            assert!(rel(&a.realize(), &b.realize()) < 1e-10);
        }
    }

    #[test]
    fn distance_examples() {
        let p = sample_point(3, 0.5, 1.0);
        assert!(distance(&p, &p).unwrap() < 1e-13);

        let id = PositivePoint::identity(2);
        let e = point(std::f64::consts::E, linalg::zeros(2)).unwrap();
        assert!((distance(&id, &e).unwrap() - 1.0).abs() < 1e-14);

        let q = point(1.0, diag_real(&[3.0, 0.0])).unwrap();
        assert!((distance(&id, &q).unwrap() - 2.0 * 4f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn distance_symmetric_and_triangle() {
        let a = sample_point(4, 0.1, 1.0);
        let b = sample_point(4, 1.7, 2.0);
        let c = sample_point(4, 3.3, 0.7);
        let ab = distance(&a, &b).unwrap();
        assert!((ab - distance(&b, &a).unwrap()).abs() < 1e-12);
        assert!(ab <= distance(&a, &c).unwrap() + distance(&c, &b).unwrap() + 1e-12);
    }

    #[test]
    fn curvature_examples() {
        let p = PositivePoint::identity(2);
        let x = tangent(&p, 0.0, from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        let mut ym = linalg::zeros(2);
        ym[(0, 1)] = I;
        ym[(1, 0)] = -I;
        let y = tangent(&p, 0.0, ym.clone()).unwrap();

        assert_eq!(curvature(&p, &x, &x, &y).unwrap().value().norm2(), 0.0);

        let d1 = tangent(&p, 0.3, diag_real(&[1.0, 2.0])).unwrap();
        let d2 = tangent(&p, 0.0, diag_real(&[-1.0, 5.0])).unwrap();
        assert_eq!(curvature(&p, &d1, &d2, &x).unwrap().value().norm2(), 0.0);

        // hand-expanded with Pauli matrices: X = sx, Y = -sy, [X,Y] = -2i sz,
        // [[X,Y],X] = -2i [sz,sx] = -2i (2i sy) = 4 sy, so R = -sy = Y
        let r = curvature(&p, &x, &y, &x).unwrap();
        assert!(max_abs(&(r.value().part() - &ym)) < 1e-15);
    }

    #[test]
    fn curvature_is_exactly_antisymmetric() {
        let p = sample_point(4, 0.8, 1.3);
        let (x, y, z) = (sample_tangent(&p, 0.2), sample_tangent(&p, 0.9), sample_tangent(&p, 1.6));
        let a = curvature(&p, &x, &y, &z).unwrap();
        let b = curvature(&p, &y, &x, &z).unwrap();
        assert_eq!((a.value() + b.value()).norm2(), 0.0);
    }

    #[test]
    fn sectional_examples() {
        let p = PositivePoint::identity(2);
        let d1 = tangent(&p, 0.0, diag_real(&[1.0, 2.0])).unwrap();
        let d2 = tangent(&p, 0.0, diag_real(&[-1.0, 5.0])).unwrap();
        assert_eq!(sectional(&p, &d1, &d2).unwrap(), 0.0);

        let x = tangent(&p, 0.0, from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        let z = tangent(&p, 0.0, diag_real(&[1.0, -1.0])).unwrap();
        let k = sectional(&p, &x, &z).unwrap();
        assert!(k < -1e-3);
        let k2 = sectional(&p, &x.scale(3.7), &z).unwrap();
        assert!((k - k2).abs() < 1e-10);

        assert!(matches!(sectional(&p, &x, &x.scale(2.0)), Err(GeoError::DegeneratePlane { .. })));
    }

    #[test]
    fn isometry_examples() {
        let p = sample_point(3, 0.7, 1.0);
        let same = isometry_action(&UnitizedOperator::identity(3), &p).unwrap();
        assert!(rel(&same.realize(), &p.realize()) < 1e-14);

        // unitary 1 + k with k = u - 1 keeps the leaf
        let c = 0.6;
        let s = 0.8;
        let u = from_real_rows(&[&[c, -s, 0.0], &[s, c, 0.0], &[0.0, 0.0, 1.0]]);
        let g = UnitizedOperator::from_realization(C64::new(1.0, 0.0), &u).unwrap();
        let moved = isometry_action(&g, &p).unwrap();
        assert_eq!(moved.scalar(), 1.0);

        let singular = UnitizedOperator::from_realization(C64::new(1.0, 0.0), &diag_real(&[1.0, 0.0, 1.0])).unwrap();
        assert!(matches!(isometry_action(&singular, &p), Err(GeoError::SingularElement { .. })));
    }

    #[test]
    fn emi_and_segal_examples() {
        let x = UnitizedOperator::hermitian(0.2, diag_real(&[0.3, -0.1, 0.5])).unwrap();
        let (l, r) = emi_check(&x, &x).unwrap();
        assert_eq!(l, 0.0);
        assert!(r < 1e-14);

        let y = UnitizedOperator::hermitian(-0.4, diag_real(&[1.0, 0.2, -0.7])).unwrap();
        let (l, r) = emi_check(&x, &y).unwrap();
        assert!((l - r).abs() < 1e-12);
        let (l, r) = segal_check(&x, &y).unwrap();
        assert!((l - r).abs() < 1e-12 * l);
        let (l, r) = segal_check(&x, &UnitizedOperator::zero(3)).unwrap();
        assert!((l - r).abs() < 1e-12 * l);
    }
}
