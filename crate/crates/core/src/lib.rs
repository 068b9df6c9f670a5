//! How far from its center can a truncated Taylor series be trusted?
//!
//! `effradius` answers that in two ways:
//!
//! * it estimates the radius of convergence from the coefficients alone,
//!   with root-test sequences ([`estimate::root_estimate`]) or a regression
//!   on `ln|a_n|` ([`estimate::ols_estimate`]);
//! * given the function the series came from, it measures how closely the
//!   two graphs agree on an interval ([`coincidence::graph_distance`]) and
//!   finds the widest interval on which they agree to a tolerance
//!   ([`coincidence::effective_radius`]).
//!
//! Functions are written in a small expression language ([`expr::parse`])
//! and expanded with truncated power-series arithmetic ([`taylor::taylor`]).
//!
//! ```
//! use effradius::prelude::*;
//!
//! let f = parse("sin(x)").unwrap();
//! let p = taylor(&f, 0.0, 11).unwrap();
//!
//! let est = root_estimate(&p, RootEstimateOptions::default()).unwrap();
//! assert!((est.selected - 4.3).abs() < 1e-3);
//!
//! let d = graph_distance(&f, &p, -3.5973, 3.5973, 100, Norm::Linf).unwrap();
//! assert!(d.distance < 3e-3);
//! ```
//!
//! The guide in `book/` walks through each piece with runnable examples.

// `!(a < b)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coincidence;
pub mod estimate;
pub mod expr;
pub mod io;
pub mod plot;
pub mod series;
pub mod taylor;

pub mod prelude {
    pub use crate::coincidence::{
        coincide, effective_radius, graph_distance, CoincidenceReport, EffectiveRadius,
        EffectiveRadiusOptions, Norm, Side,
    };
    pub use crate::estimate::{
        divergence_screen, ols_estimate, root_estimate, root_sequence, Convention, FitResult,
        ParityFilter, RadiusSequence, RootEstimate, RootEstimateOptions,
    };
    pub use crate::expr::{parse, Expr};
    pub use crate::series::{make_grid, Grid, Parity, PowerSeries};
    pub use crate::taylor::taylor;
}

// Every Rust snippet in the guide runs as a doctest.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/expressions.md")]
    mod expressions {}
    #[doc = include_str!("../../../book/src/root-test.md")]
    mod root_test {}
    #[doc = include_str!("../../../book/src/regression.md")]
    mod regression {}
    #[doc = include_str!("../../../book/src/coincidence.md")]
    mod coincidence {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
