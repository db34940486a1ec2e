//! Curves sampled through an evaluator, with central-difference derivatives.
//!
//! Residual tolerances here scale as `O(h^2)`; with the default step `1e-4`
//! the discretization floor is far below `1e-5` for unit-scale inputs.

use crate::algebra::UnitizedOperator;
use crate::error::{GeoError, Result};
use crate::manifold::{Geodesic, PositivePoint, TangentVector};

pub const DEFAULT_STEP: f64 = 1e-4;
pub const SIMPSON_NODES: usize = 129;

type Evaluator<'a> = Box<dyn Fn(f64) -> Result<PositivePoint> + Send + Sync + 'a>;

/// A curve `[0, 1] -> positive points` known only through evaluation.
pub struct SampledCurve<'a> {
    eval: Evaluator<'a>,
    step: f64,
}

impl<'a> SampledCurve<'a> {
    pub fn new<F>(eval: F) -> Self
    where
        F: Fn(f64) -> Result<PositivePoint> + Send + Sync + 'a,
    {
        Self {
            eval: Box::new(eval),
            step: DEFAULT_STEP,
        }
    }

    pub fn with_step(mut self, step: f64) -> Self {
        assert!(step > 0.0 && step < 0.25, "finite difference step must lie in (0, 1/4)");
        self.step = step;
        self
    }

    pub fn from_geodesic(g: Geodesic) -> Self {
        Self::new(move |t| g.at(t))
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn at(&self, t: f64) -> Result<PositivePoint> {
        (self.eval)(t)
    }

    fn check_interior(&self, t: f64) -> Result<()> {
        if !(t > self.step && t < 1.0 - self.step) {
            return Err(GeoError::OutsideDifferentiableRange { t, step: self.step });
        }
        Ok(())
    }

    /// Central difference `(g(t+h) - g(t-h)) / 2h`.
    pub fn velocity(&self, t: f64) -> Result<UnitizedOperator> {
        self.check_interior(t)?;
        let h = self.step;
        let fwd = self.at(t + h)?;
        let bwd = self.at(t - h)?;
        Ok((fwd.value() - bwd.value()).scale_real(0.5 / h))
    }

    /// Fourth-order velocity anywhere on `[0, 1]`: the five-point central
    /// stencil in the interior, one-sided five-point stencils near the ends.
    pub fn velocity_anywhere(&self, t: f64) -> Result<UnitizedOperator> {
        let h = self.step;
        let (offsets, weights): ([f64; 5], [f64; 5]) = if t >= 2.0 * h && t <= 1.0 - 2.0 * h {
            ([-2.0, -1.0, 1.0, 2.0, 0.0], [1.0, -8.0, 8.0, -1.0, 0.0])
        } else if t < 2.0 * h {
            ([0.0, 1.0, 2.0, 3.0, 4.0], [-25.0, 48.0, -36.0, 16.0, -3.0])
        } else {
            ([0.0, -1.0, -2.0, -3.0, -4.0], [25.0, -48.0, 36.0, -16.0, 3.0])
        };
        let mut acc: Option<UnitizedOperator> = None;
        for (o, w) in offsets.iter().zip(weights).filter(|(_, w)| *w != 0.0) {
            let term = self.at(t + o * h)?.value().scale_real(w);
            acc = Some(match acc {
                Some(a) => &a + &term,
                None => term,
            });
        }
        Ok(acc.expect("stencils are nonempty").scale_real(1.0 / (12.0 * h)))
    }

    /// Second central difference `(g(t+h) - 2 g(t) + g(t-h)) / h^2`.
    pub fn acceleration(&self, t: f64) -> Result<UnitizedOperator> {
        self.check_interior(t)?;
        let h = self.step;
        let fwd = self.at(t + h)?;
        let mid = self.at(t)?;
        let bwd = self.at(t - h)?;
        let num = &(fwd.value() + bwd.value()) - &mid.value().scale_real(2.0);
        Ok(num.scale_real(1.0 / (h * h)))
    }

    /// `int_0^1 ||g'(t)||_{g(t)} dt` by composite Simpson.
    pub fn length(&self) -> Result<f64> {
        simpson(
            |t| {
                let p = self.at(t)?;
                let v = TangentVector::from_hermitian_part(&p, &self.velocity_anywhere(t)?)?;
                crate::manifold::norm_at(&p, &v)
            },
            SIMPSON_NODES,
        )
    }
}

/// Composite Simpson rule on `[0, 1]` with an odd number of nodes.
pub fn simpson<F>(mut f: F, nodes: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    assert!(nodes >= 3 && nodes % 2 == 1, "Simpson needs an odd node count >= 3");
    let n = nodes - 1;
    let h = 1.0 / n as f64;
    let mut acc = f(0.0)? + f(1.0)?;
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(k as f64 * h)?;
    }
    Ok(acc * h / 3.0)
}

/// `nabla_{g'} V = V' - 1/2 (g' g^{-1} V + V g^{-1} g')`, with `g'` and `V'`
/// by central differences.
pub fn covariant_derivative<F>(curve: &SampledCurve<'_>, field: F, t: f64) -> Result<TangentVector>
where
    F: Fn(f64) -> Result<UnitizedOperator>,
{
    curve.check_interior(t)?;
    let h = curve.step();
    let p = curve.at(t)?;
    let gdot = curve.velocity(t)?;
    let v = field(t)?;
    let vdot = (&field(t + h)? - &field(t - h)?).scale_real(0.5 / h);
    let pinv = p.inv();
    let sym = &(&(&gdot * pinv) * &v) + &(&(&v * pinv) * &gdot);
    let nabla = &vdot - &sym.scale_real(0.5);
    TangentVector::from_hermitian_part(&p, &nabla)
}

/// `||g'' - g' g^{-1} g'||_2`; zero along geodesics up to the
/// discretization floor.
pub fn geodesic_residual(curve: &SampledCurve<'_>, t: f64) -> Result<f64> {
    let p = curve.at(t)?;
    let gdot = curve.velocity(t)?;
    let gddot = curve.acceleration(t)?;
    let quad = &(&gdot * p.inv()) * &gdot;
    Ok((&gddot - &quad).norm2())
}
