//! Graph coincidence of a function and its truncated series, and the
//! effective radius of convergence.
//!
//! Two graphs `(eps, l)`-coincide on `[a, b]` when the value vectors of the
//! function and the polynomial on an `N`-point partition are closer than
//! `eps` in the vector norm `l`. The effective radius `R_ef(eps, l)` is the
//! half-width of the largest interval around the center on which that holds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{DomainError, Expr};
use crate::series::{Grid, PowerSeries, SeriesError};

pub const DEFAULT_POINTS: usize = 100;
pub const DEFAULT_R_MAX: f64 = 10.0;
/// Scan resolution of [`effective_radius`]: `R_max / SCAN_STEPS`.
pub const SCAN_STEPS: usize = 64;
/// Bisection stops once `R_hi - R_lo <= BISECT_RTOL * R_hi`.
pub const BISECT_RTOL: f64 = 1e-6;
const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoincidenceError {
    #[error(transparent)]
    Grid(SeriesError),
    #[error("function undefined at grid point x = {x}: {source}")]
    Domain { x: f64, source: DomainError },
    #[error("series overflows at grid point x = {x}")]
    SeriesOverflow { x: f64 },
    #[error("epsilon must be positive (got {0})")]
    NonPositiveEpsilon(f64),
    #[error("R_max must be positive and finite (got {0})")]
    BadRMax(f64),
    #[error("graphs differ by at least epsilon on every interval around the center")]
    NoCoincidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L1,
    L2,
    #[default]
    Linf,
}

impl Norm {
    /// Norm of a difference vector, reduced in index order.
    pub fn apply(self, diffs: &[f64]) -> f64 {
        match self {
            Norm::L1 => diffs.iter().map(|d| d.abs()).sum(),
            Norm::L2 => diffs.iter().map(|d| d * d).sum::<f64>().sqrt(),
            Norm::Linf => diffs.iter().fold(0.0, |m, d| m.max(d.abs())),
        }
    }
}

/// Which interval a radius `R` stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `[x0 - R, x0 + R]`
    #[default]
    Both,
    /// `[x0, x0 + R]`
    Right,
    /// `[x0 - R, x0]`
    Left,
}

impl Side {
    pub fn interval(self, x0: f64, r: f64) -> (f64, f64) {
        match self {
            Side::Both => (x0 - r, x0 + r),
            Side::Right => (x0, x0 + r),
            Side::Left => (x0 - r, x0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceReport {
    pub a: f64,
    pub b: f64,
    pub n_points: usize,
    pub norm: Norm,
    pub distance: f64,
    /// Grid point of the largest deviation (first one on ties); `l_inf` only.
    pub argmax_x: Option<f64>,
}

/// Function values, polynomial values and the grid they were taken on.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    pub grid: Grid,
    pub f: Vec<f64>,
    pub p: Vec<f64>,
}

impl Samples {
    pub fn diffs(&self) -> Vec<f64> {
        self.f.iter().zip(&self.p).map(|(f, p)| f - p).collect()
    }
}

/// Evaluates `f` and the series on the `n`-point grid of `[a, b]`.
pub fn sample(
    f: &Expr,
    series: &PowerSeries,
    a: f64,
    b: f64,
    n: usize,
) -> Result<Samples, CoincidenceError> {
    let grid = Grid::new(a, b, n).map_err(CoincidenceError::Grid)?;
    let mut fv = Vec::with_capacity(n);
    let mut pv = Vec::with_capacity(n);
    for &x in grid.points() {
        fv.push(
            f.eval(x)
                .map_err(|source| CoincidenceError::Domain { x, source })?,
        );
        pv.push(
            series
                .checked_evaluate(x)
                .map_err(|_| CoincidenceError::SeriesOverflow { x })?,
        );
    }
    Ok(Samples { grid, f: fv, p: pv })
}

/// `||V_f - V_p||` on the `n`-point partition of `[a, b]`.
pub fn graph_distance(
    f: &Expr,
    series: &PowerSeries,
    a: f64,
    b: f64,
    n: usize,
    norm: Norm,
) -> Result<CoincidenceReport, CoincidenceError> {
    let samples = sample(f, series, a, b, n)?;
    let diffs = samples.diffs();
    let argmax_x = (norm == Norm::Linf).then(|| {
        let mut best = 0;
        for (i, d) in diffs.iter().enumerate() {
            if d.abs() > diffs[best].abs() {
                best = i;
            }
        }
        samples.grid.points()[best]
    });
    Ok(CoincidenceReport {
        a,
        b,
        n_points: n,
        norm,
        distance: norm.apply(&diffs),
        argmax_x,
    })
}

/// Strict test `||V_f - V_p|| < epsilon`.
pub fn coincide(
    f: &Expr,
    series: &PowerSeries,
    a: f64,
    b: f64,
    n: usize,
    norm: Norm,
    epsilon: f64,
) -> Result<bool, CoincidenceError> {
    Ok(graph_distance(f, series, a, b, n, norm)?.distance < epsilon)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveRadiusOptions {
    pub n_points: usize,
    pub norm: Norm,
    pub r_max: f64,
    pub side: Side,
}

impl Default for EffectiveRadiusOptions {
    fn default() -> Self {
        EffectiveRadiusOptions {
            n_points: DEFAULT_POINTS,
            norm: Norm::default(),
            r_max: DEFAULT_R_MAX,
            side: Side::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectiveRadius {
    /// Lower end of the final bracket.
    pub radius: f64,
    pub epsilon: f64,
    pub n_points: usize,
    pub norm: Norm,
    pub side: Side,
    /// `(R_lo, R_hi)` with `E(R_lo) < epsilon <= E(R_hi)`. Equal to
    /// `(R_max, R_max)` when the tolerance is never reached.
    pub bracket: (f64, f64),
    /// False when `E(R_max) < epsilon`, i.e. the answer is capped at `R_max`.
    pub binding: bool,
}

/// Largest half-width around the series center on which `f` and the series
/// `(epsilon, norm)`-coincide.
///
/// `E(R)` is the graph distance on a fresh `n_points` grid over the interval
/// for `R`. Since `E` need not be monotone once the grid moves with `R`, the
/// range `(0, R_max]` is scanned in [`SCAN_STEPS`] steps for the first
/// `E >= epsilon`, and only that bracket is bisected.
pub fn effective_radius(
    f: &Expr,
    series: &PowerSeries,
    epsilon: f64,
    options: EffectiveRadiusOptions,
) -> Result<EffectiveRadius, CoincidenceError> {
    if !(epsilon > 0.0) {
        return Err(CoincidenceError::NonPositiveEpsilon(epsilon));
    }
    let r_max = options.r_max;
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(CoincidenceError::BadRMax(r_max));
    }
    let x0 = series.center();
    let distance = |r: f64| -> Result<f64, CoincidenceError> {
        let (a, b) = options.side.interval(x0, r);
        Ok(graph_distance(f, series, a, b, options.n_points, options.norm)?.distance)
    };
    let done = |lo: f64, hi: f64, binding: bool| EffectiveRadius {
        radius: lo,
        epsilon,
        n_points: options.n_points,
        norm: options.norm,
        side: options.side,
        bracket: (lo, hi),
        binding,
    };

    let mut lo = 0.0;
    let mut hi = None;
    for j in 1..=SCAN_STEPS {
        let r = r_max * j as f64 / SCAN_STEPS as f64;
        if distance(r)? >= epsilon {
            hi = Some(r);
            break;
        }
        lo = r;
    }
    let Some(mut hi) = hi else {
        return Ok(done(r_max, r_max, false));
    };

    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= BISECT_RTOL * hi {
            return Ok(done(lo, hi, true));
        }
        let mid = 0.5 * (lo + hi);
        if distance(mid)? >= epsilon {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(CoincidenceError::NoCoincidence)
}
