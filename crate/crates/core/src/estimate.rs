//! Radius-of-convergence estimates from a finite set of coefficients.
//!
//! Two families are provided:
//!
//! * **Root-test sequences.** For every nonzero coefficient the reciprocal
//!   n-th root `R_n = |a_n|^(-1/n)` is a finite-index stand-in for
//!   `1 / limsup |a_n|^(1/n)`. The last entry of the sequence is taken as the
//!   estimate. Sequences can be restricted to the even or odd coefficients,
//!   which is the natural choice when the underlying function has a parity.
//! * **Log-coefficient regression.** Fitting `ln|a_n| = beta_1 n` by least
//!   squares gives `R = exp(-beta_1)`.
//!
//! The root sequence comes in two exponent conventions, see [`Convention`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{Parity, PowerSeries, DEFAULT_PARITY_TOL};

/// Default window of the divergence screen.
pub const DEFAULT_SCREEN_WINDOW: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimateError {
    #[error("no nonzero coefficients survive the {filter:?} filter")]
    EmptySequence { filter: ParityFilter },
    #[error("root of a_{index} = {value:e} is not representable")]
    NonFiniteRoot { index: usize, value: f64 },
    #[error("every candidate branch is empty or fails the divergence screen")]
    NoCandidate,
    #[error("divergence screen window must be at least 2 (got {0})")]
    WindowTooSmall(usize),
    #[error("least squares needs at least {needed} usable points, found {found}")]
    InsufficientPoints { needed: usize, found: usize },
    #[error("all coefficients are zero")]
    AllZero,
}

/// Exponent rule of the root sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `R_n = |a_n|^(-1/n)` for `n >= 1`; the constant term has no root.
    Stated,
    /// `R_n = |a_n|^(-1/(n+1))` for `n >= 0`. It gives the classic
    /// values for the sine and the normal density
    /// (`6^(1/4) = 1.565`, `120^(1/6) = 2.221`, `sqrt(2 pi) = 2.507`).
    #[default]
    Empirical,
}

impl Convention {
    fn root(self, n: usize, abs_a: f64) -> Option<f64> {
        match self {
            Convention::Stated if n == 0 => None,
            Convention::Stated => Some(abs_a.powf(-1.0 / n as f64)),
            Convention::Empirical => Some(abs_a.powf(-1.0 / (n + 1) as f64)),
        }
    }
}

/// Which coefficient indices a sequence draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityFilter {
    #[default]
    All,
    Even,
    Odd,
}

impl ParityFilter {
    pub fn keeps(self, n: usize) -> bool {
        match self {
            ParityFilter::All => true,
            ParityFilter::Even => n.is_multiple_of(2),
            ParityFilter::Odd => n % 2 == 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusEntry {
    pub n: usize,
    pub r: f64,
}

/// Root-test sequence `(n, R_n)` over the nonzero coefficients that pass
/// the parity filter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusSequence {
    pub convention: Convention,
    pub parity_filter: ParityFilter,
    pub entries: Vec<RadiusEntry>,
}

impl RadiusSequence {
    /// The estimate: the entry with the largest index.
    pub fn last(&self) -> f64 {
        self.entries.last().expect("sequences are never empty").r
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.r).collect()
    }
}

fn filtered_nonzero(
    series: &PowerSeries,
    filter: ParityFilter,
) -> impl Iterator<Item = (usize, f64)> + '_ {
    series
        .coeffs()
        .iter()
        .enumerate()
        .filter(move |&(n, &a)| filter.keeps(n) && a != 0.0)
        .map(|(n, &a)| (n, a.abs()))
}

pub fn root_sequence(
    series: &PowerSeries,
    convention: Convention,
    filter: ParityFilter,
) -> Result<RadiusSequence, EstimateError> {
    let mut entries = Vec::new();
    for (n, abs_a) in filtered_nonzero(series, filter) {
        let Some(r) = convention.root(n, abs_a) else {
            continue;
        };
        if !(r.is_finite() && r > 0.0) {
            return Err(EstimateError::NonFiniteRoot {
                index: n,
                value: series.coeffs()[n],
            });
        }
        entries.push(RadiusEntry { n, r });
    }
    if entries.is_empty() {
        return Err(EstimateError::EmptySequence { filter });
    }
    Ok(RadiusSequence {
        convention,
        parity_filter: filter,
        entries,
    })
}

/// Outcome of the n-th term screen on one branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivergenceScreen {
    /// The last `k` nonzero magnitudes are nondecreasing.
    pub divergent: bool,
    /// Fewer than `k` nonzero terms were available; `divergent` is false.
    pub insufficient_terms: bool,
}

/// Flags a branch whose trailing nonzero coefficients do not decrease.
///
/// A convergent power series needs `a_n (x - x0)^n -> 0`, so coefficients
/// whose tail keeps growing point at a divergent subset.
pub fn divergence_screen(
    series: &PowerSeries,
    filter: ParityFilter,
    k: usize,
) -> Result<DivergenceScreen, EstimateError> {
    if k < 2 {
        return Err(EstimateError::WindowTooSmall(k));
    }
    let mags: Vec<f64> = filtered_nonzero(series, filter).map(|(_, a)| a).collect();
    if mags.len() < k {
        return Ok(DivergenceScreen {
            divergent: false,
            insufficient_terms: true,
        });
    }
    let tail = &mags[mags.len() - k..];
    Ok(DivergenceScreen {
        divergent: tail.windows(2).all(|w| w[0] <= w[1]),
        insufficient_terms: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivergenceFlags {
    pub all: DivergenceScreen,
    pub even: DivergenceScreen,
    pub odd: DivergenceScreen,
}

/// Terminal values of the three root sequences and the one chosen for the
/// series' parity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootEstimate {
    pub convention: Convention,
    pub parity: Parity,
    pub r_all: Option<f64>,
    pub r_even: Option<f64>,
    pub r_odd: Option<f64>,
    pub selected: f64,
    pub selected_branch: ParityFilter,
    pub selected_reason: String,
    pub divergence: DivergenceFlags,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootEstimateOptions {
    pub convention: Convention,
    pub parity_tol: f64,
    pub screen_window: usize,
}

impl Default for RootEstimateOptions {
    fn default() -> Self {
        RootEstimateOptions {
            convention: Convention::default(),
            parity_tol: DEFAULT_PARITY_TOL,
            screen_window: DEFAULT_SCREEN_WINDOW,
        }
    }
}

/// Root-test estimate with parity-based branch selection.
///
/// Even series use the even-index sequence, odd series the odd one, and
/// everything else the full sequence. A branch whose divergence screen fires
/// is skipped in favour of the next candidate.
pub fn root_estimate(
    series: &PowerSeries,
    options: RootEstimateOptions,
) -> Result<RootEstimate, EstimateError> {
    let last = |filter| {
        root_sequence(series, options.convention, filter)
            .ok()
            .map(|s| s.last())
    };
    let r_all = last(ParityFilter::All);
    let r_even = last(ParityFilter::Even);
    let r_odd = last(ParityFilter::Odd);
    let k = options.screen_window;
    let divergence = DivergenceFlags {
        all: divergence_screen(series, ParityFilter::All, k)?,
        even: divergence_screen(series, ParityFilter::Even, k)?,
        odd: divergence_screen(series, ParityFilter::Odd, k)?,
    };

    let parity = series.classify_parity(options.parity_tol);
    let order = match parity {
        Parity::Even => [ParityFilter::Even, ParityFilter::All, ParityFilter::Odd],
        Parity::Odd => [ParityFilter::Odd, ParityFilter::All, ParityFilter::Even],
        Parity::Neither => [ParityFilter::All, ParityFilter::Even, ParityFilter::Odd],
    };
    let mut skipped = Vec::new();
    for (rank, filter) in order.into_iter().enumerate() {
        let (value, screen) = match filter {
            ParityFilter::All => (r_all, divergence.all),
            ParityFilter::Even => (r_even, divergence.even),
            ParityFilter::Odd => (r_odd, divergence.odd),
        };
        let Some(selected) = value else {
            skipped.push(format!("{filter:?} branch empty").to_lowercase());
            continue;
        };
        if screen.divergent {
            skipped.push(format!("{filter:?} branch fails divergence screen").to_lowercase());
            continue;
        }
        let mut selected_reason = if rank == 0 {
            format!("series is {}", format!("{parity:?}").to_lowercase())
        } else {
            format!(
                "fallback for {} series",
                format!("{parity:?}").to_lowercase()
            )
        };
        if !skipped.is_empty() {
            selected_reason.push_str(&format!(" ({})", skipped.join("; ")));
        }
        return Ok(RootEstimate {
            convention: options.convention,
            parity,
            r_all,
            r_even,
            r_odd,
            selected,
            selected_branch: filter,
            selected_reason,
            divergence,
        });
    }
    Err(EstimateError::NoCandidate)
}

/// Least-squares fit of `ln|a_n|` against `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: Option<f64>,
    /// `exp(-slope)`.
    pub radius: f64,
    pub points: Vec<(usize, f64)>,
    pub residual_sum_squares: f64,
}

/// Regression data: `(n, ln|a_n|)` for every nonzero coefficient.
pub fn log_coefficients(series: &PowerSeries) -> Vec<(usize, f64)> {
    filtered_nonzero(series, ParityFilter::All)
        .map(|(n, a)| (n, a.ln()))
        .collect()
}

/// Fits `ln|a_n| = slope * n` (or `intercept + slope * n`) over the nonzero
/// coefficients with index in `window`, and returns `R = exp(-slope)`.
pub fn ols_estimate(
    series: &PowerSeries,
    with_intercept: bool,
    window: Option<(usize, usize)>,
) -> Result<FitResult, EstimateError> {
    if series.coeffs().iter().all(|&a| a == 0.0) {
        return Err(EstimateError::AllZero);
    }
    let (lo, hi) = window.unwrap_or((0, usize::MAX));
    let points: Vec<(usize, f64)> = log_coefficients(series)
        .into_iter()
        .filter(|&(n, _)| n >= lo && n <= hi)
        .collect();

    let xs = || points.iter().map(|&(n, _)| n as f64);
    let (slope, intercept) = if with_intercept {
        if points.len() < 2 {
            return Err(EstimateError::InsufficientPoints {
                needed: 2,
                found: points.len(),
            });
        }
        let count = points.len() as f64;
        let mean_x = xs().sum::<f64>() / count;
        let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
        let (mut sxx, mut sxy) = (0.0, 0.0);
        for &(n, y) in &points {
            let dx = n as f64 - mean_x;
            sxx += dx * dx;
            sxy += dx * (y - mean_y);
        }
        let slope = sxy / sxx;
        (slope, Some(mean_y - slope * mean_x))
    } else {
        let sxx: f64 = xs().map(|x| x * x).sum();
        if sxx == 0.0 {
            // only the constant term: the slope is undetermined
            return Err(EstimateError::InsufficientPoints {
                needed: 1,
                found: 0,
            });
        }
        let sxy: f64 = points.iter().map(|&(n, y)| n as f64 * y).sum();
        (sxy / sxx, None)
    };

    let residual_sum_squares = points
        .iter()
        .map(|&(n, y)| {
            let r = y - intercept.unwrap_or(0.0) - slope * n as f64;
            r * r
        })
        .sum();
    Ok(FitResult {
        slope,
        intercept,
        radius: (-slope).exp(),
        points,
        residual_sum_squares,
    })
}
