use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use effradius::coincidence::{Norm, Side, DEFAULT_POINTS, DEFAULT_R_MAX};
use effradius::estimate::{Convention, ParityFilter};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "effradius",
    version,
    about = "Radius of convergence and effective radius of convergence of truncated Taylor series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Expand an expression into a truncated Taylor series
    Taylor(JobArgs),
    /// Root-test sequences and the parity-selected radius estimate
    Radius(JobArgs),
    /// Least-squares fit of ln|a_n| against n
    Ols(JobArgs),
    /// Distance between the graphs of f and its series on [a, b]
    Coincide(JobArgs),
    /// Effective radius of convergence for a tolerance epsilon
    Effective(JobArgs),
    /// Plot data as CSV or SVG
    Plot(JobArgs),
}

impl Command {
    pub fn kind(&self) -> CommandKind {
        match self {
            Command::Taylor(_) => CommandKind::Taylor,
            Command::Radius(_) => CommandKind::Radius,
            Command::Ols(_) => CommandKind::Ols,
            Command::Coincide(_) => CommandKind::Coincide,
            Command::Effective(_) => CommandKind::Effective,
            Command::Plot(_) => CommandKind::Plot,
        }
    }

    pub fn args(&self) -> &JobArgs {
        match self {
            Command::Taylor(a)
            | Command::Radius(a)
            | Command::Ols(a)
            | Command::Coincide(a)
            | Command::Effective(a)
            | Command::Plot(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Taylor,
    Radius,
    Ols,
    Coincide,
    Effective,
    Plot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum PlotKind {
    /// `x,f,p`: function and polynomial on a grid
    #[default]
    Overlay,
    /// `n,ln_abs_a`: regression data
    Ols,
    /// `n,R_n`: root-test sequence
    Sequence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    L1,
    L2,
    Linf,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Norm {
        match n {
            NormArg::L1 => Norm::L1,
            NormArg::L2 => Norm::L2,
            NormArg::Linf => Norm::Linf,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Stated,
    Empirical,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::Stated => Convention::Stated,
            ConventionArg::Empirical => Convention::Empirical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    All,
    Even,
    Odd,
}

impl From<ParityArg> for ParityFilter {
    fn from(p: ParityArg) -> ParityFilter {
        match p {
            ParityArg::All => ParityFilter::All,
            ParityArg::Even => ParityFilter::Even,
            ParityArg::Odd => ParityFilter::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Both,
    Right,
    Left,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Both => Side::Both,
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        }
    }
}

/// Flags shared by every subcommand; each command checks the ones it needs.
#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    /// Expression in x, e.g. "exp(-x^2/2)/sqrt(2*pi)"
    #[arg(long)]
    pub expr: Option<String>,
    /// Series file (.json, or .csv with header `n,a_n`)
    #[arg(long)]
    pub series: Option<PathBuf>,
    /// Expansion center; also the center of CSV series files
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub center: f64,
    /// Degree of the Taylor expansion of --expr
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
    /// Left end of the interval
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Right end of the interval
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub n_points: usize,
    #[arg(long, value_enum, default_value_t = NormArg::Linf)]
    pub norm: NormArg,
    #[arg(long, value_enum, default_value_t = ConventionArg::Empirical)]
    pub convention: ConventionArg,
    /// Fit an intercept in the log-coefficient regression
    #[arg(long)]
    pub intercept: bool,
    /// Index range n_min:n_max for the regression (either end may be empty)
    #[arg(long)]
    pub window: Option<String>,
    #[arg(long, default_value_t = DEFAULT_R_MAX)]
    pub r_max: f64,
    /// Interval for a radius R: [x0-R, x0+R], [x0, x0+R] or [x0-R, x0]
    #[arg(long, value_enum, default_value_t = SideArg::Both)]
    pub side: SideArg,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Significant digits in text output
    #[arg(long, default_value_t = 4)]
    pub precision: usize,
    /// What `plot` draws
    #[arg(long, value_enum, default_value_t = PlotKind::Overlay)]
    pub kind: PlotKind,
    /// Coefficient subset for `plot --kind sequence`
    #[arg(long, value_enum, default_value_t = ParityArg::All)]
    pub parity: ParityArg,
    /// Reference radius drawn as a dashed line in sequence plots
    #[arg(long)]
    pub reference: Option<f64>,
}

/// Where the polynomial comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesSource {
    File(PathBuf),
    Expand { expr: String, degree: usize },
}

/// Validated job description. Commands are pure functions of this plus the
/// series file it names.
#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub command: CommandKind,
    pub source: Option<SeriesSource>,
    /// The function f for coincidence-type commands.
    pub function: Option<String>,
    pub center: f64,
    pub epsilon: Option<f64>,
    pub interval: Option<(f64, f64)>,
    pub n_points: usize,
    pub norm: Norm,
    pub convention: Convention,
    pub intercept: bool,
    pub window: Option<(usize, usize)>,
    pub r_max: f64,
    pub side: Side,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub precision: usize,
    pub plot_kind: PlotKind,
    pub parity: ParityFilter,
    pub reference: Option<f64>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `n_min:n_max`, `n_min:` or `:n_max`.
pub fn parse_window(text: &str) -> Result<(usize, usize), CliError> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| usage(format!("--window `{text}` must look like n_min:n_max")))?;
    let bound = |s: &str, default: usize| -> Result<usize, CliError> {
        let s = s.trim();
        if s.is_empty() {
            Ok(default)
        } else {
            s.parse().map_err(|_| {
                usage(format!(
                    "--window bound `{s}` is not a non-negative integer"
                ))
            })
        }
    };
    let (lo, hi) = (bound(lo, 0)?, bound(hi, usize::MAX)?);
    if lo > hi {
        return Err(usage(format!("--window {lo}:{hi} is empty")));
    }
    Ok((lo, hi))
}

impl JobConfig {
    pub fn from_command(cmd: &Command) -> Result<Self, CliError> {
        let kind = cmd.kind();
        let args = cmd.args();

        let needs_function = match kind {
            CommandKind::Taylor | CommandKind::Coincide | CommandKind::Effective => true,
            CommandKind::Plot => args.kind == PlotKind::Overlay,
            CommandKind::Radius | CommandKind::Ols => false,
        };
        if needs_function && args.expr.is_none() {
            return Err(usage("--expr is required for this command"));
        }
        let expand = |expr: &String| -> Result<SeriesSource, CliError> {
            let degree = args
                .degree
                .ok_or_else(|| usage("--degree is required to expand --expr"))?;
            Ok(SeriesSource::Expand {
                expr: expr.clone(),
                degree,
            })
        };
        let source = match (kind, &args.expr, &args.series) {
            (CommandKind::Taylor, _, Some(_)) => {
                return Err(usage("taylor takes --expr, not --series"));
            }
            (_, None, None) => return Err(usage("give either --expr or --series")),
            (_, Some(_), Some(_)) if !needs_function => {
                return Err(usage("give exactly one of --expr and --series"));
            }
            (_, _, Some(path)) => SeriesSource::File(path.clone()),
            (_, Some(expr), None) => expand(expr)?,
        };

        let interval = match (args.a, args.b) {
            (Some(a), Some(b)) => {
                if !(a < b) {
                    return Err(usage(format!("need --a < --b (got {a} and {b})")));
                }
                Some((a, b))
            }
            (None, None) => None,
            _ => return Err(usage("--a and --b go together")),
        };
        let needs_interval = kind == CommandKind::Coincide
            || (kind == CommandKind::Plot && args.kind == PlotKind::Overlay);
        if needs_interval && interval.is_none() {
            return Err(usage("--a and --b are required for this command"));
        }
        if kind == CommandKind::Effective && args.epsilon.is_none() {
            return Err(usage("--epsilon is required for effective"));
        }
        if let Some(eps) = args.epsilon {
            if !(eps >= 0.0) {
                return Err(usage(format!("--epsilon must be non-negative (got {eps})")));
            }
        }
        if args.n_points < 2 {
            return Err(usage("--n-points must be at least 2"));
        }
        if !(args.r_max > 0.0 && args.r_max.is_finite()) {
            return Err(usage("--r-max must be positive"));
        }
        if args.precision == 0 || args.precision > 17 {
            return Err(usage("--precision must be between 1 and 17"));
        }

        let format = args.format.unwrap_or(match kind {
            CommandKind::Taylor => Format::Json,
            CommandKind::Plot => Format::Csv,
            _ => Format::Text,
        });
        let allowed: &[Format] = match kind {
            CommandKind::Taylor => &[Format::Json, Format::Csv, Format::Text],
            CommandKind::Plot => &[Format::Csv, Format::Svg],
            _ => &[Format::Text, Format::Json],
        };
        if !allowed.contains(&format) {
            return Err(usage(format!(
                "--format {} is not available for this command",
                format.to_possible_value().unwrap().get_name()
            )));
        }

        Ok(JobConfig {
            command: kind,
            source: Some(source),
            function: if needs_function {
                args.expr.clone()
            } else {
                None
            },
            center: args.center,
            epsilon: args.epsilon,
            interval,
            n_points: args.n_points,
            norm: args.norm.into(),
            convention: args.convention.into(),
            intercept: args.intercept,
            window: args.window.as_deref().map(parse_window).transpose()?,
            r_max: args.r_max,
            side: args.side.into(),
            out: args.out.clone(),
            format,
            precision: args.precision,
            plot_kind: args.kind,
            parity: args.parity.into(),
            reference: args.reference,
        })
    }
}
