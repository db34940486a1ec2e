//! The unitized operator algebra at matrix scale.
//!
//! An element is a pair `(scalar, part)` standing for `scalar * 1 + part`.
//! The pair is kept explicit: in finite dimension the split of a matrix into
//! a multiple of the identity plus a remainder is not canonical, and the inner
//! product treats the two components differently:
//!
//! ```text
//! <alpha + a, beta + b>_2 = alpha * conj(beta) + 4 tr(b* a)
//! ```
//!
//! Every spectral statement refers to the realization `scalar * I + part`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{GeoError, Result};
use crate::linalg::{self, CMatrix, C64, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct UnitizedOperator {
    scalar: C64,
    part: CMatrix,
}

impl UnitizedOperator {
    pub fn new(scalar: C64, part: CMatrix) -> Result<Self> {
        if !part.is_square() {
            return Err(GeoError::InvalidShape(format!(
                "part must be square, got {}x{}",
                part.nrows(),
                part.ncols()
            )));
        }
        if part.nrows() == 0 {
            return Err(GeoError::InvalidShape("dimension must be at least 1".into()));
        }
        Ok(Self { scalar, part })
    }

    /// A Hermitian element: real scalar, and `part` equal to its adjoint bit
    /// for bit.
    pub fn hermitian(scalar: f64, part: CMatrix) -> Result<Self> {
        let x = Self::new(C64::new(scalar, 0.0), part)?;
        if !x.is_hermitian() {
            return Err(GeoError::NotHermitian {
                deviation: linalg::hermitian_deviation(&x.part),
            });
        }
        Ok(x)
    }

    pub fn from_part(part: CMatrix) -> Result<Self> {
        Self::new(ZERO, part)
    }

    pub fn scalar_multiple(dim: usize, scalar: f64) -> Self {
        Self {
            scalar: C64::new(scalar, 0.0),
            part: linalg::zeros(dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar_multiple(dim, 1.0)
    }

    pub fn zero(dim: usize) -> Self {
        Self::scalar_multiple(dim, 0.0)
    }

    /// Splits a matrix as `scalar * I + (m - scalar * I)`.
    pub fn from_realization(scalar: C64, m: &CMatrix) -> Result<Self> {
        let n = m.nrows();
        Self::new(scalar, m - linalg::identity(n) * scalar)
    }

    pub fn dim(&self) -> usize {
        self.part.nrows()
    }

    pub fn scalar(&self) -> C64 {
        self.scalar
    }

    pub fn part(&self) -> &CMatrix {
        &self.part
    }

    pub fn into_part(self) -> CMatrix {
        self.part
    }

    /// `scalar * I + part`.
    pub fn realize(&self) -> CMatrix {
        let mut m = self.part.clone();
        for i in 0..self.dim() {
            m[(i, i)] += self.scalar;
        }
        m
    }

    /// Structural check: real scalar and `part == part*` exactly.
    pub fn is_hermitian(&self) -> bool {
        self.scalar.im == 0.0 && linalg::is_exact_hermitian(&self.part)
    }

    /// Largest deviation from the Hermitian condition, over scalar and part.
    pub fn hermitian_deviation(&self) -> f64 {
        self.scalar.im.abs().max(linalg::hermitian_deviation(&self.part))
    }

    /// `(x + x*) / 2`, exactly Hermitian.
    pub fn hermitian_part(&self) -> Self {
        Self {
            scalar: C64::new(self.scalar.re, 0.0),
            part: linalg::hermitian_part(&self.part),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            scalar: self.scalar.conj(),
            part: self.part.adjoint(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            scalar: self.scalar * c,
            part: &self.part * c,
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
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

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            scalar: self.scalar + other.scalar,
            part: &self.part + &other.part,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            scalar: self.scalar - other.scalar,
            part: &self.part - &other.part,
        })
    }

    /// `(l + a)(m + b) = lm + (l b + m a + a b)`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let (l, m) = (self.scalar, other.scalar);
        Ok(Self {
            scalar: l * m,
            part: &other.part * l + &self.part * m + &self.part * &other.part,
        })
    }

    /// `[x, y] = xy - yx`; the scalars cancel exactly, so only the parts enter.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            scalar: ZERO,
            part: linalg::commutator(&self.part, &other.part),
        })
    }

    pub fn inner2(&self, other: &Self) -> Result<C64> {
        self.check_dim(other)?;
        // tr(b* a) = sum_ij conj(b_ij) a_ij
        let tr: C64 = self
            .part
            .iter()
            .zip(other.part.iter())
            .map(|(a, b)| b.conj() * a)
            .sum();
        Ok(self.scalar * other.scalar.conj() + tr * 4.0)
    }

    /// `sqrt(|scalar|^2 + 4 tr(a* a))`.
    pub fn norm2(&self) -> f64 {
        let part_sq: f64 = self.part.iter().map(|z| z.norm_sqr()).sum();
        (self.scalar.norm_sqr() + 4.0 * part_sq).sqrt()
    }
}

impl Add for &UnitizedOperator {
    type Output = UnitizedOperator;
    fn add(self, rhs: Self) -> UnitizedOperator {
        self.checked_add(rhs).expect("unitized add: dimension mismatch")
    }
}

impl Sub for &UnitizedOperator {
    type Output = UnitizedOperator;
    fn sub(self, rhs: Self) -> UnitizedOperator {
        self.checked_sub(rhs).expect("unitized sub: dimension mismatch")
    }
}

impl Mul for &UnitizedOperator {
    type Output = UnitizedOperator;
    fn mul(self, rhs: Self) -> UnitizedOperator {
        self.checked_mul(rhs).expect("unitized mul: dimension mismatch")
    }
}

impl Neg for &UnitizedOperator {
    type Output = UnitizedOperator;
    fn neg(self) -> UnitizedOperator {
        UnitizedOperator {
            scalar: -self.scalar,
            part: -&self.part,
        }
    }
}

pub fn uo_add(x: &UnitizedOperator, y: &UnitizedOperator) -> Result<UnitizedOperator> {
    x.checked_add(y)
}

pub fn uo_mul(x: &UnitizedOperator, y: &UnitizedOperator) -> Result<UnitizedOperator> {
    x.checked_mul(y)
}

pub fn inner2(x: &UnitizedOperator, y: &UnitizedOperator) -> Result<C64> {
    x.inner2(y)
}

pub fn norm2(x: &UnitizedOperator) -> f64 {
    x.norm2()
}
