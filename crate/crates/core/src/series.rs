//! Truncated power series, parity decomposition and evaluation grids.
//!
//! A [`PowerSeries`] is the polynomial
//!
//! ```text
//! P_m(x) = a_0 + a_1 (x - x0) + ... + a_m (x - x0)^m
//! ```
//!
//! stored as its center `x0` and the coefficient vector `a_0..a_m`. Every
//! other part of the crate consumes series through this type.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative tolerance used by [`PowerSeries::classify_parity`] when the caller
/// has no better value. Coefficients produced by floating-point expansion of an
/// exactly even or odd function sit at the double-precision noise floor.
pub const DEFAULT_PARITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("coefficient a_{index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },
    #[error("series center is not finite ({0})")]
    NonFiniteCenter(f64),
    #[error("evaluation at x = {x} is out of range (result {value})")]
    OutOfRange { x: f64, value: f64 },
    #[error("invalid grid [{a}, {b}] with {n} points: need a < b and at least 2 points")]
    InvalidGrid { a: f64, b: f64, n: usize },
}

/// A truncated power series around `center`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries", into = "RawSeries")]
pub struct PowerSeries {
    center: f64,
    coeffs: Vec<f64>,
}

// On-disk shape; validated on the way in.
#[derive(Serialize, Deserialize)]
struct RawSeries {
    center: f64,
    coeffs: Vec<f64>,
}

impl TryFrom<RawSeries> for PowerSeries {
    type Error = SeriesError;

    fn try_from(raw: RawSeries) -> Result<Self, SeriesError> {
        PowerSeries::new(raw.center, raw.coeffs)
    }
}

impl From<PowerSeries> for RawSeries {
    fn from(s: PowerSeries) -> Self {
        RawSeries {
            center: s.center,
            coeffs: s.coeffs,
        }
    }
}

impl PowerSeries {
    pub fn new(center: f64, coeffs: Vec<f64>) -> Result<Self, SeriesError> {
        if !center.is_finite() {
            return Err(SeriesError::NonFiniteCenter(center));
        }
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(SeriesError::NonFinite { index, value });
        }
        Ok(PowerSeries { center, coeffs })
    }

    /// A Maclaurin series (center 0).
    pub fn maclaurin(coeffs: Vec<f64>) -> Result<Self, SeriesError> {
        Self::new(0.0, coeffs)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation of the polynomial at `x`.
    ///
    /// Overflow shows up as an infinite result; use [`checked_evaluate`]
    /// to turn it into an error.
    ///
    /// [`checked_evaluate`]: PowerSeries::checked_evaluate
    pub fn evaluate(&self, x: f64) -> f64 {
        let h = x - self.center;
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * h + c)
    }

    pub fn checked_evaluate(&self, x: f64) -> Result<f64, SeriesError> {
        let value = self.evaluate(x);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(SeriesError::OutOfRange { x, value })
        }
    }

    /// Splits the series into its even-power and odd-power parts.
    ///
    /// Both parts keep the full length and center, so adding them back
    /// coefficientwise reproduces `self` exactly.
    pub fn split_parity(&self) -> ParitySplit {
        let pick = |keep_even: bool| -> Vec<f64> {
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| if (n % 2 == 0) == keep_even { c } else { 0.0 })
                .collect()
        };
        ParitySplit {
            even: PowerSeries {
                center: self.center,
                coeffs: pick(true),
            },
            odd: PowerSeries {
                center: self.center,
                coeffs: pick(false),
            },
        }
    }

    /// Even if every odd coefficient is at most `tol * max|a_k|`, odd in the
    /// symmetric case, `Neither` otherwise. The zero series is even.
    pub fn classify_parity(&self, tol: f64) -> Parity {
        let threshold = tol.max(0.0) * self.max_abs();
        let small = |rem: usize| {
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(n, _)| n % 2 == rem)
                .all(|(_, c)| c.abs() <= threshold)
        };
        if small(1) {
            Parity::Even
        } else if small(0) {
            Parity::Odd
        } else {
            Parity::Neither
        }
    }
}

/// Result of [`PowerSeries::split_parity`].
#[derive(Debug, Clone, PartialEq)]
pub struct ParitySplit {
    pub even: PowerSeries,
    pub odd: PowerSeries,
}

impl ParitySplit {
    /// Coefficientwise sum of the two parts.
    pub fn recombine(&self) -> PowerSeries {
        let coeffs = self
            .even
            .coeffs
            .iter()
            .zip(&self.odd.coeffs)
            .map(|(e, o)| e + o)
            .collect();
        PowerSeries {
            center: self.even.center,
            coeffs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

/// Uniform partition of `[a, b]` with both endpoints included.
///
/// Points are materialized once so that every consumer evaluates at
/// bit-identical abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    points: Vec<f64>,
}

impl Grid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self, SeriesError> {
        if !(a < b) || n < 2 || !a.is_finite() || !b.is_finite() {
            return Err(SeriesError::InvalidGrid { a, b, n });
        }
        let last = n - 1;
        let width = b - a;
        let points = (0..n)
            .map(|i| {
                if i == last {
                    b
                } else {
                    a + width * (i as f64) / (last as f64)
                }
            })
            .collect();
        Ok(Grid { a, b, points })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Shorthand for [`Grid::new`].
pub fn make_grid(a: f64, b: f64, n: usize) -> Result<Grid, SeriesError> {
    Grid::new(a, b, n)
}
