//! Plot data as CSV and as self-contained SVG line charts.
//!
//! Output is a pure function of the input: numbers are written with fixed
//! formatting and nothing depends on time, locale or hash order, so the same
//! inputs always give byte-identical files.

use std::fmt::Write as _;

use crate::coincidence::Samples;
use crate::estimate::{FitResult, RadiusSequence};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// `x,f,p` rows: function and polynomial on the grid.
pub fn overlay_csv(samples: &Samples) -> String {
    let mut out = String::from("x,f,p\n");
    for ((x, f), p) in samples.grid.points().iter().zip(&samples.f).zip(&samples.p) {
        let _ = writeln!(out, "{x},{f},{p}");
    }
    out
}

/// `n,ln_abs_a` rows: the regression data.
pub fn log_coefficients_csv(points: &[(usize, f64)]) -> String {
    let mut out = String::from("n,ln_abs_a\n");
    for (n, y) in points {
        let _ = writeln!(out, "{n},{y}");
    }
    out
}

/// `n,R_n` rows of a root-test sequence.
pub fn root_sequence_csv(seq: &RadiusSequence) -> String {
    let mut out = String::from("n,R_n\n");
    for e in &seq.entries {
        let _ = writeln!(out, "{},{}", e.n, e.r);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Line,
    Markers,
    LineAndMarkers,
    Dashed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartSeries {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub style: Style,
}

/// A 800x600 chart with axes, ticks, a legend and any number of series.
#[derive(Debug, Clone, PartialEq)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<ChartSeries>,
    /// Fixed y-range; data outside it is clipped. Derived from the data when
    /// `None`.
    pub y_range: Option<(f64, f64)>,
}

impl LineChart {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        LineChart {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            series: Vec::new(),
            y_range: None,
        }
    }

    pub fn with_series(mut self, label: &str, points: Vec<(f64, f64)>, style: Style) -> Self {
        self.series.push(ChartSeries {
            label: label.into(),
            points,
            style,
        });
        self
    }

    fn data_range(&self, pick: impl Fn(&(f64, f64)) -> f64) -> (f64, f64) {
        let (lo, hi) = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().map(&pick))
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
        if lo > hi {
            (0.0, 1.0)
        } else if lo == hi {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo, hi)
        }
    }

    pub fn render(&self) -> String {
        let (x_lo, x_hi) = self.data_range(|p| p.0);
        let (y_lo, y_hi) = self.y_range.unwrap_or_else(|| {
            let (lo, hi) = self.data_range(|p| p.1);
            let pad = 0.05 * (hi - lo);
            (lo - pad, hi + pad)
        });
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let sx = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
        let sy = |y: f64| MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(
            svg,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<defs><clipPath id="plot-area"><rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}"/></clipPath></defs>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="30" text-anchor="middle" font-size="16">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );

        // ticks and grid lines
        for t in nice_ticks(x_lo, x_hi) {
            let x = sx(t);
            let _ = writeln!(
                svg,
                r##"<line x1="{x:.2}" y1="{MARGIN_TOP}" x2="{x:.2}" y2="{:.2}" stroke="#e0e0e0"/>"##,
                MARGIN_TOP + plot_h
            );
            let _ = writeln!(
                svg,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                MARGIN_TOP + plot_h + 18.0,
                tick_label(t)
            );
        }
        for t in nice_ticks(y_lo, y_hi) {
            let y = sy(t);
            let _ = writeln!(
                svg,
                r##"<line x1="{MARGIN_LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e0e0e0"/>"##,
                MARGIN_LEFT + plot_w
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                MARGIN_LEFT - 6.0,
                y + 4.0,
                tick_label(t)
            );
        }
        let _ = writeln!(
            svg,
            r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            MARGIN_LEFT + plot_w / 2.0,
            HEIGHT - 15.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            svg,
            r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
            MARGIN_TOP + plot_h / 2.0,
            MARGIN_TOP + plot_h / 2.0,
            escape(&self.y_label)
        );

        let _ = writeln!(svg, r#"<g clip-path="url(#plot-area)">"#);
        for (i, s) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let pts: Vec<(f64, f64)> = s
                .points
                .iter()
                .filter(|p| p.0.is_finite() && p.1.is_finite())
                .map(|&(x, y)| (sx(x), sy(y)))
                .collect();
            if matches!(s.style, Style::Line | Style::LineAndMarkers | Style::Dashed) {
                let coords: Vec<String> =
                    pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let dash = if s.style == Style::Dashed {
                    r#" stroke-dasharray="6 4""#
                } else {
                    ""
                };
                let _ = writeln!(
                    svg,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="2"{dash} points="{}"/>"#,
                    coords.join(" ")
                );
            }
            if matches!(s.style, Style::Markers | Style::LineAndMarkers) {
                for (x, y) in &pts {
                    let _ = writeln!(
                        svg,
                        r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#
                    );
                }
            }
        }
        let _ = writeln!(svg, "</g>");

        // legend, top right inside the plot
        let legend_x = MARGIN_LEFT + plot_w - 170.0;
        for (i, s) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let y = MARGIN_TOP + 20.0 + 18.0 * i as f64;
            let _ = writeln!(
                svg,
                r#"<line x1="{legend_x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2"/>"#,
                legend_x + 24.0
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
                legend_x + 30.0,
                y + 4.0,
                escape(&s.label)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

/// Function against its polynomial. The y-range follows the function with
/// some headroom so a runaway polynomial is clipped instead of flattening
/// the picture.
pub fn overlay_chart(samples: &Samples, f_label: &str, p_label: &str) -> LineChart {
    let xs = samples.grid.points();
    let f_pts: Vec<(f64, f64)> = xs.iter().copied().zip(samples.f.iter().copied()).collect();
    let p_pts: Vec<(f64, f64)> = xs.iter().copied().zip(samples.p.iter().copied()).collect();
    let (lo, hi) = samples
        .f
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let span = (hi - lo).max(1e-12);
    let mut chart = LineChart::new(
        &format!(
            "[{}, {}], N = {}",
            tick_label(samples.grid.a()),
            tick_label(samples.grid.b()),
            xs.len()
        ),
        "x",
        "y",
    )
    .with_series(f_label, f_pts, Style::Line)
    .with_series(p_label, p_pts, Style::Dashed);
    chart.y_range = Some((lo - 0.5 * span, hi + 0.5 * span));
    chart
}

/// Regression data with the fitted line, when there is one.
pub fn log_coefficients_chart(points: &[(usize, f64)], fit: Option<&FitResult>) -> LineChart {
    let data: Vec<(f64, f64)> = points.iter().map(|&(n, y)| (n as f64, y)).collect();
    let mut chart =
        LineChart::new("OLS data", "n", "ln|a_n|").with_series("ln|a_n|", data, Style::Markers);
    if let Some(fit) = fit {
        let b0 = fit.intercept.unwrap_or(0.0);
        let line = [points.first(), points.last()]
            .into_iter()
            .flatten()
            .map(|&(n, _)| (n as f64, b0 + fit.slope * n as f64))
            .collect();
        chart = chart.with_series(
            &format!("fit, R = {}", tick_label(fit.radius)),
            line,
            Style::Line,
        );
    }
    chart
}

/// Root-test sequence, optionally against a reference radius.
pub fn root_sequence_chart(seq: &RadiusSequence, reference: Option<f64>) -> LineChart {
    let data: Vec<(f64, f64)> = seq.entries.iter().map(|e| (e.n as f64, e.r)).collect();
    let mut chart = LineChart::new("Root-test sequence", "n", "R_n").with_series(
        "R_n",
        data,
        Style::LineAndMarkers,
    );
    if let (Some(r), Some(first), Some(last)) = (reference, seq.entries.first(), seq.entries.last())
    {
        chart = chart.with_series(
            &format!("R = {}", tick_label(r)),
            vec![(first.n as f64, r), (last.n as f64, r)],
            Style::Dashed,
        );
    }
    chart
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Ticks at 1, 2 or 5 times a power of ten, about five per axis.
fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0) || !span.is_finite() {
        return vec![lo];
    }
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-3..1e5).contains(&a) {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.2e}")
    }
}
