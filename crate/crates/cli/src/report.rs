use std::fmt::Write as _;

use effradius::coincidence::{CoincidenceReport, EffectiveRadius, Side};
use effradius::estimate::{FitResult, ParityFilter, RadiusSequence, RootEstimate};
use effradius::series::PowerSeries;
use serde::{Deserialize, Serialize};

/// `x` to `digits` significant digits: plain decimals for moderate
/// magnitudes, scientific notation otherwise.
pub fn format_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (_, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if x == 0.0 || (-4..6).contains(&exp) {
        let rounded: f64 = sci.parse().expect("valid float");
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{rounded:.decimals$}")
    } else {
        sci
    }
}

fn list(values: &[f64], digits: usize) -> String {
    let items: Vec<String> = values.iter().map(|&v| format_sig(v, digits)).collect();
    format!("[{}]", items.join(", "))
}

fn lower(v: impl std::fmt::Debug) -> String {
    format!("{v:?}").to_lowercase()
}

fn name(filter: ParityFilter) -> &'static str {
    match filter {
        ParityFilter::All => "all",
        ParityFilter::Even => "even",
        ParityFilter::Odd => "odd",
    }
}

pub(crate) fn series_csv(series: &PowerSeries) -> String {
    let mut out = String::from("n,a_n\n");
    for (n, a) in series.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{n},{a}");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorReport {
    pub center: f64,
    pub coeffs: Vec<f64>,
}

impl TaylorReport {
    pub fn new(series: &PowerSeries) -> Self {
        TaylorReport {
            center: series.center(),
            coeffs: series.coeffs().to_vec(),
        }
    }

    pub fn text(&self, digits: usize) -> String {
        let mut out = format!(
            "degree {} around x0 = {}\n",
            self.coeffs.len() - 1,
            format_sig(self.center, digits)
        );
        for (n, a) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "a_{n} = {}", format_sig(*a, digits));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sequences {
    pub all: Option<RadiusSequence>,
    pub even: Option<RadiusSequence>,
    pub odd: Option<RadiusSequence>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusReport {
    pub sequences: Sequences,
    pub estimate: RootEstimate,
}

impl RadiusReport {
    pub fn text(&self, digits: usize) -> String {
        let est = &self.estimate;
        let mut out = String::new();
        let _ = writeln!(out, "convention: {}", lower(est.convention));
        let _ = writeln!(out, "parity: {}", lower(est.parity));
        for (label, seq, flags) in [
            ("all", &self.sequences.all, est.divergence.all),
            ("even", &self.sequences.even, est.divergence.even),
            ("odd", &self.sequences.odd, est.divergence.odd),
        ] {
            let body = match seq {
                Some(s) => list(&s.values(), digits),
                None => "(no terms)".into(),
            };
            let flag = if flags.divergent {
                "  [divergent tail]"
            } else {
                ""
            };
            let _ = writeln!(out, "{label:<5} {body}{flag}");
        }
        let _ = writeln!(
            out,
            "selected: {} ({} sequence; {})",
            format_sig(est.selected, digits),
            name(est.selected_branch),
            est.selected_reason
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OlsReport {
    pub fit: FitResult,
    pub window: Option<(usize, usize)>,
}

impl OlsReport {
    pub fn text(&self, digits: usize) -> String {
        let fit = &self.fit;
        let mut out = String::new();
        let model = if fit.intercept.is_some() {
            "ln|a_n| = b0 + b1 n"
        } else {
            "ln|a_n| = b1 n"
        };
        let _ = writeln!(out, "model: {model}");
        let first = fit.points.first().map_or(0, |p| p.0);
        let last = fit.points.last().map_or(0, |p| p.0);
        let _ = writeln!(out, "points: {} (n = {first}..{last})", fit.points.len());
        let _ = writeln!(out, "slope b1: {}", format_sig(fit.slope, digits));
        if let Some(b0) = fit.intercept {
            let _ = writeln!(out, "intercept b0: {}", format_sig(b0, digits));
        }
        let _ = writeln!(
            out,
            "residual sum of squares: {}",
            format_sig(fit.residual_sum_squares, digits)
        );
        let _ = writeln!(out, "radius: {}", format_sig(fit.radius, digits));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincideReport {
    pub distance: CoincidenceReport,
    pub epsilon: Option<f64>,
    pub coincide: Option<bool>,
}

impl CoincideReport {
    pub fn text(&self, digits: usize) -> String {
        let d = &self.distance;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "interval: [{}, {}], N = {}, norm = {}",
            format_sig(d.a, digits),
            format_sig(d.b, digits),
            d.n_points,
            lower(d.norm)
        );
        let _ = writeln!(out, "distance: {}", format_sig(d.distance, digits));
        if let Some(x) = d.argmax_x {
            let _ = writeln!(out, "max at x = {}", format_sig(x, digits));
        }
        if let (Some(eps), Some(ok)) = (self.epsilon, self.coincide) {
            let verdict = if ok { "coincide" } else { "do not coincide" };
            let _ = writeln!(out, "epsilon {}: graphs {verdict}", format_sig(eps, digits));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectiveReport {
    pub result: EffectiveRadius,
    pub center: f64,
}

impl EffectiveReport {
    pub fn text(&self, digits: usize) -> String {
        let r = &self.result;
        let (a, b) = r.side.interval(self.center, r.radius);
        let side = match r.side {
            Side::Both => "symmetric",
            Side::Right => "right of center",
            Side::Left => "left of center",
        };
        let mut out = String::new();
        let _ = writeln!(out, "R_ef: {}", format_sig(r.radius, digits));
        let _ = writeln!(
            out,
            "interval: [{}, {}] ({side})",
            format_sig(a, digits),
            format_sig(b, digits)
        );
        let _ = writeln!(
            out,
            "epsilon: {}, N = {}, norm = {}",
            format_sig(r.epsilon, digits),
            r.n_points,
            lower(r.norm)
        );
        let _ = writeln!(
            out,
            "bracket: ({}, {})",
            format_sig(r.bracket.0, 10),
            format_sig(r.bracket.1, 10)
        );
        if !r.binding {
            let _ = writeln!(out, "note: epsilon not reached up to R_max; not binding");
        }
        out
    }
}
