//! Command implementations behind the `effradius` binary.
//!
//! [`run`] is a pure function of a [`JobConfig`] and the series file it
//! names; `main` only parses arguments and writes the returned text.

// `!(a < b)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
mod report;

use std::path::Path;

use effradius::coincidence::{self, sample, CoincidenceError, EffectiveRadiusOptions};
use effradius::estimate::{
    self, log_coefficients, EstimateError, ParityFilter, RootEstimateOptions,
};
use effradius::expr::{parse, Expr, ParseError};
use effradius::io::{read_series, series_to_json, IoError};
use effradius::plot;
use effradius::series::PowerSeries;
use effradius::taylor::{taylor, ExpandError};
use thiserror::Error;

pub use config::{Cli, Command, CommandKind, Format, JobConfig, PlotKind, SeriesSource};
pub use report::{
    format_sig, CoincideReport, EffectiveReport, OlsReport, RadiusReport, Sequences, TaylorReport,
};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unparsable expressions or series files.
    #[error("{0}")]
    Usage(String),
    /// Expansion, estimation or evaluation failed.
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(format!("cannot parse expression: {e}"))
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ExpandError> for CliError {
    fn from(e: ExpandError) -> Self {
        CliError::Numeric(format!("expansion failed: {e}"))
    }
}

impl From<EstimateError> for CliError {
    fn from(e: EstimateError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<CoincidenceError> for CliError {
    fn from(e: CoincidenceError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

fn load_series(config: &JobConfig) -> Result<PowerSeries, CliError> {
    match config
        .source
        .as_ref()
        .expect("validated config has a source")
    {
        SeriesSource::File(path) => Ok(read_series(Path::new(path), config.center)?),
        SeriesSource::Expand { expr, degree } => Ok(taylor(&parse(expr)?, config.center, *degree)?),
    }
}

fn function(config: &JobConfig) -> Result<Expr, CliError> {
    let text = config
        .function
        .as_deref()
        .expect("validated config has --expr");
    Ok(parse(text)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

/// Runs one command and returns what it would print.
pub fn run(config: &JobConfig) -> Result<String, CliError> {
    let series = load_series(config)?;
    let digits = config.precision;
    match config.command {
        CommandKind::Taylor => Ok(match config.format {
            Format::Json => series_to_json(&series),
            Format::Csv => report::series_csv(&series),
            _ => TaylorReport::new(&series).text(digits),
        }),
        CommandKind::Radius => {
            let options = RootEstimateOptions {
                convention: config.convention,
                ..RootEstimateOptions::default()
            };
            let seq = |filter| estimate::root_sequence(&series, config.convention, filter).ok();
            let report = RadiusReport {
                sequences: Sequences {
                    all: seq(ParityFilter::All),
                    even: seq(ParityFilter::Even),
                    odd: seq(ParityFilter::Odd),
                },
                estimate: estimate::root_estimate(&series, options)?,
            };
            Ok(match config.format {
                Format::Json => to_json(&report),
                _ => report.text(digits),
            })
        }
        CommandKind::Ols => {
            let report = OlsReport {
                fit: estimate::ols_estimate(&series, config.intercept, config.window)?,
                window: config.window,
            };
            Ok(match config.format {
                Format::Json => to_json(&report),
                _ => report.text(digits),
            })
        }
        CommandKind::Coincide => {
            let f = function(config)?;
            let (a, b) = config.interval.expect("validated");
            let distance =
                coincidence::graph_distance(&f, &series, a, b, config.n_points, config.norm)?;
            let report = CoincideReport {
                coincide: config.epsilon.map(|eps| distance.distance < eps),
                epsilon: config.epsilon,
                distance,
            };
            Ok(match config.format {
                Format::Json => to_json(&report),
                _ => report.text(digits),
            })
        }
        CommandKind::Effective => {
            let f = function(config)?;
            let options = EffectiveRadiusOptions {
                n_points: config.n_points,
                norm: config.norm,
                r_max: config.r_max,
                side: config.side,
            };
            let epsilon = config.epsilon.expect("validated");
            let report = EffectiveReport {
                result: coincidence::effective_radius(&f, &series, epsilon, options)?,
                center: series.center(),
            };
            Ok(match config.format {
                Format::Json => to_json(&report),
                _ => report.text(digits),
            })
        }
        CommandKind::Plot => plot_command(config, &series),
    }
}

fn plot_command(config: &JobConfig, series: &PowerSeries) -> Result<String, CliError> {
    let svg = config.format == Format::Svg;
    Ok(match config.plot_kind {
        PlotKind::Overlay => {
            let text = config.function.as_deref().expect("validated");
            let f = parse(text)?;
            let (a, b) = config.interval.expect("validated");
            let samples = sample(&f, series, a, b, config.n_points)?;
            if svg {
                let label = format!("P_{}(x)", series.degree());
                plot::overlay_chart(&samples, text, &label).render()
            } else {
                plot::overlay_csv(&samples)
            }
        }
        PlotKind::Ols => {
            let points: Vec<(usize, f64)> = log_coefficients(series)
                .into_iter()
                .filter(|&(n, _)| config.window.is_none_or(|(lo, hi)| n >= lo && n <= hi))
                .collect();
            if points.is_empty() {
                return Err(CliError::Numeric("no nonzero coefficients to plot".into()));
            }
            if svg {
                let fit = estimate::ols_estimate(series, config.intercept, config.window).ok();
                plot::log_coefficients_chart(&points, fit.as_ref()).render()
            } else {
                plot::log_coefficients_csv(&points)
            }
        }
        PlotKind::Sequence => {
            let seq = estimate::root_sequence(series, config.convention, config.parity)?;
            if svg {
                plot::root_sequence_chart(&seq, config.reference).render()
            } else {
                plot::root_sequence_csv(&seq)
            }
        }
    })
}
