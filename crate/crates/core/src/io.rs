//! JSON matrix exchange and decimal formatting.
//!
//! A matrix file is `{"dim": n, "scalar": [re, im], "part_re": [[..]],
//! "part_im": [[..]]}`. Floats are written with 17 significant digits, which
//! round-trips every `f64`.

use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::UnitizedOperator;
use crate::error::{GeoError, Result};
use crate::linalg::{self, CMatrix, C64};

/// Structural tolerance for Hermitian inputs.
pub const HERMITIAN_LOAD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub scalar: [f64; 2],
    pub part_re: Vec<Vec<f64>>,
    pub part_im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_operator(x: &UnitizedOperator) -> Self {
        let n = x.dim();
        let p = x.part();
        Self {
            dim: n,
            scalar: [x.scalar().re, x.scalar().im],
            part_re: (0..n).map(|i| (0..n).map(|j| p[(i, j)].re).collect()).collect(),
            part_im: (0..n).map(|i| (0..n).map(|j| p[(i, j)].im).collect()).collect(),
        }
    }

    /// A plain matrix `m` written as the pair `(0, m)`.
    pub fn from_matrix(m: &CMatrix) -> Self {
        Self::from_operator(&UnitizedOperator::from_part(m.clone()).expect("square matrix"))
    }

    /// A unitary `g` written as `(1, g - 1)`.
    pub fn from_unitary(g: &CMatrix) -> Self {
        let k = g - linalg::identity(g.nrows());
        Self::from_operator(&UnitizedOperator::new(linalg::ONE, k).expect("square matrix"))
    }

    pub fn to_operator(&self) -> Result<UnitizedOperator> {
        let n = self.dim;
        let rows_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if n == 0 || !rows_ok(&self.part_re) || !rows_ok(&self.part_im) {
            return Err(GeoError::InvalidShape(format!("part arrays must be {n}x{n}")));
        }
        let values = self
            .scalar
            .iter()
            .chain(self.part_re.iter().flatten())
            .chain(self.part_im.iter().flatten());
        if values.clone().any(|v| !v.is_finite()) {
            return Err(GeoError::InvalidShape("non-finite entry".into()));
        }
        let part = CMatrix::from_fn(n, n, |i, j| C64::new(self.part_re[i][j], self.part_im[i][j]));
        UnitizedOperator::new(C64::new(self.scalar[0], self.scalar[1]), part)
    }

    /// Loads a Hermitian element: deviations up to `HERMITIAN_LOAD_TOL`
    /// (relative to the largest entry) are symmetrized away.
    pub fn to_hermitian(&self) -> Result<UnitizedOperator> {
        let x = self.to_operator()?;
        let scale = linalg::max_abs(x.part()).max(x.scalar().norm()).max(1.0);
        let dev = linalg::hermitian_deviation(x.part()).max(x.scalar().im.abs());
        if dev > HERMITIAN_LOAD_TOL * scale {
            return Err(GeoError::NotHermitian { deviation: dev });
        }
        UnitizedOperator::hermitian(x.scalar().re, linalg::hermitian_part(x.part()))
    }
}

/// `serde_json` formatter writing floats as `%.17g`; non-finite values
/// become `null`.
#[derive(Debug, Default, Clone, Copy)]
pub struct SigFormatter;

impl serde_json::ser::Formatter for SigFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(fmt_sig(value, 17).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Formats like C's `%.{digits}g`.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Compact JSON with 17 significant digits per float.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_operator(path: &Path) -> Result<UnitizedOperator> {
    read_json::<MatrixJson>(path)?.to_operator()
}

pub fn read_hermitian(path: &Path) -> Result<UnitizedOperator> {
    read_json::<MatrixJson>(path)?.to_hermitian()
}

pub fn write_operator(path: &Path, x: &UnitizedOperator) -> Result<()> {
    let mut text = to_json_string(&MatrixJson::from_operator(x))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_real_rows;

    #[test]
    fn fmt_sig_matches_printf_g() {
        assert_eq!(fmt_sig(0.1, 17), "0.10000000000000001");
        assert_eq!(fmt_sig(1.0, 17), "1");
        assert_eq!(fmt_sig(-2.5, 17), "-2.5");
        assert_eq!(fmt_sig(1e-5, 17), "1.0000000000000001e-05");
        assert_eq!(fmt_sig(1e20, 17), "1e+20");
        assert_eq!(fmt_sig(123456.0, 3), "1.23e+05");
        assert_eq!(fmt_sig(2f64.ln() * 4.0, 12), "2.77258872224");
        assert_eq!(fmt_sig(0.0, 17), "0");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [std::f64::consts::PI, 1.0 / 3.0, -7.123456789012345e-9, 6.02e23, f64::MIN_POSITIVE] {
            assert_eq!(fmt_sig(x, 17).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let part = CMatrix::from_fn(2, 2, |i, j| C64::new(0.1 * (i + 1) as f64 / 3.0, if i == j { 0.0 } else { 0.7 - i as f64 }));
        let x = UnitizedOperator::hermitian(1.0 / 7.0, linalg::hermitian_part(&part)).unwrap();
        let text = to_json_string(&MatrixJson::from_operator(&x)).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        let y = back.to_hermitian().unwrap();
        assert_eq!(x.part(), y.part());
        assert_eq!(x.scalar(), y.scalar());
    }

    #[test]
    fn non_hermitian_rejected_on_load() {
        let m = MatrixJson::from_matrix(&from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]));
        assert!(matches!(m.to_hermitian(), Err(GeoError::NotHermitian { .. })));
        let tiny = MatrixJson::from_matrix(&from_real_rows(&[&[1.0, 2.0], &[2.0 + 1e-14, 1.0]]));
        assert!(tiny.to_hermitian().unwrap().is_hermitian());
    }

    #[test]
    fn bad_shapes_rejected() {
        let mut m = MatrixJson::from_matrix(&linalg::identity(2));
        m.part_re.pop();
        assert!(matches!(m.to_operator(), Err(GeoError::InvalidShape(_))));
        let text = r#"{"dim": 1, "scalar": [1, 0], "part_re": [[0]]}"#;
        assert!(serde_json::from_str::<MatrixJson>(text).is_err());
    }

    #[test]
    fn unitary_written_as_one_plus_k() {
        let g = from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let j = MatrixJson::from_unitary(&g);
        assert_eq!(j.scalar, [1.0, 0.0]);
        assert_eq!(j.to_operator().unwrap().realize(), g);
    }
}
