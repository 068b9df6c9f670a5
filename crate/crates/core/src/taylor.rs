//! Taylor expansion of parsed expressions by truncated power-series
//! arithmetic.
//!
//! Every subexpression is turned into the coefficient vector of its Taylor
//! polynomial in powers of `(x - x0)`, all truncated at the same order `m`.
//! Sums are termwise, products are Cauchy products, quotients multiply by a
//! reciprocal series, and the elementary functions use the usual first-order
//! recurrences obtained from `g' = F'(u) u'`.

use thiserror::Error;

use crate::expr::{BinaryOp, DomainError, Expr, Func};
use crate::series::{PowerSeries, SeriesError};

/// Largest supported truncation order.
pub const MAX_DEGREE: usize = 1000;

/// Reciprocal of a series whose constant term is at or below this magnitude
/// is refused.
pub const MIN_PIVOT: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpandError {
    #[error("degree {0} exceeds the maximum of {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("division by a series with zero constant term ({0:e})")]
    ZeroDenominator(f64),
    #[error("ln of a series with non-positive constant term ({0})")]
    LogNonPositive(f64),
    #[error("sqrt of a series with constant term {0} is not analytic")]
    SqrtNotAnalytic(f64),
    #[error("power with base constant term {0} is not analytic at the center")]
    BadPowerBase(f64),
    #[error("unsupported power: {0}")]
    UnsupportedPower(String),
    #[error("constant subexpression: {0}")]
    Domain(#[from] DomainError),
    #[error("expansion overflowed: {0}")]
    Series(#[from] SeriesError),
}

/// Coefficients `c_0..c_m` of a truncated Taylor polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries {
    coeffs: Vec<f64>,
}

impl TruncSeries {
    pub fn constant(value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        TruncSeries { coeffs }
    }

    /// The identity `x` expanded at `x0`: `x0 + (x - x0)`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut s = Self::constant(x0, order);
        if order >= 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "truncated series needs order >= 0");
        TruncSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn scale(&self, k: f64) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Self {
        let m = self.order();
        let (a, b) = (&self.coeffs, &other.coeffs);
        let coeffs = (0..=m)
            .map(|n| (0..=n).map(|k| a[k] * b[n - k]).sum())
            .collect();
        TruncSeries { coeffs }
    }

    /// `1 / self`, from `b_0 = 1/a_0`, `b_n = -(1/a_0) sum_{k=1..n} a_k b_{n-k}`.
    pub fn recip(&self) -> Result<Self, ExpandError> {
        let a = &self.coeffs;
        if !(a[0].abs() > MIN_PIVOT) {
            return Err(ExpandError::ZeroDenominator(a[0]));
        }
        let inv = 1.0 / a[0];
        let mut b = Vec::with_capacity(a.len());
        b.push(inv);
        for n in 1..a.len() {
            let s: f64 = (1..=n).map(|k| a[k] * b[n - k]).sum();
            b.push(-inv * s);
        }
        Ok(TruncSeries { coeffs: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExpandError> {
        Ok(self.mul(&other.recip()?))
    }

    /// `e_0 = exp(u_0)`, `n e_n = sum_{k=1..n} k u_k e_{n-k}`.
    pub fn exp(&self) -> Self {
        let u = &self.coeffs;
        let mut e = Vec::with_capacity(u.len());
        e.push(u[0].exp());
        for n in 1..u.len() {
            let s: f64 = (1..=n).map(|k| k as f64 * u[k] * e[n - k]).sum();
            e.push(s / n as f64);
        }
        TruncSeries { coeffs: e }
    }

    /// `l_0 = ln(u_0)`, `u_0 n l_n = n u_n - sum_{k=1..n-1} k l_k u_{n-k}`.
    pub fn ln(&self) -> Result<Self, ExpandError> {
        let u = &self.coeffs;
        if !(u[0] > 0.0) {
            return Err(ExpandError::LogNonPositive(u[0]));
        }
        let mut l = Vec::with_capacity(u.len());
        l.push(u[0].ln());
        for n in 1..u.len() {
            let s: f64 = (1..n).map(|k| k as f64 * l[k] * u[n - k]).sum();
            l.push((u[n] - s / n as f64) / u[0]);
        }
        Ok(TruncSeries { coeffs: l })
    }

    /// `sin(u)` and `cos(u)` from the coupled recurrences
    /// `n s_n = sum k u_k c_{n-k}` and `n c_n = -sum k u_k s_{n-k}`.
    pub fn sin_cos(&self) -> (Self, Self) {
        let u = &self.coeffs;
        let mut s = Vec::with_capacity(u.len());
        let mut c = Vec::with_capacity(u.len());
        s.push(u[0].sin());
        c.push(u[0].cos());
        for n in 1..u.len() {
            let mut ss = 0.0;
            let mut cs = 0.0;
            for k in 1..=n {
                let ku = k as f64 * u[k];
                ss += ku * c[n - k];
                cs += ku * s[n - k];
            }
            s.push(ss / n as f64);
            c.push(-cs / n as f64);
        }
        (TruncSeries { coeffs: s }, TruncSeries { coeffs: c })
    }

    /// `r_0 = sqrt(u_0)`, `2 r_0 r_n = u_n - sum_{k=1..n-1} r_k r_{n-k}`.
    pub fn sqrt(&self) -> Result<Self, ExpandError> {
        let u = &self.coeffs;
        if u[0] < 0.0 {
            return Err(ExpandError::SqrtNotAnalytic(u[0]));
        }
        if u[0] == 0.0 {
            if u.iter().all(|&c| c == 0.0) {
                return Ok(self.clone());
            }
            return Err(ExpandError::SqrtNotAnalytic(u[0]));
        }
        let mut r = Vec::with_capacity(u.len());
        r.push(u[0].sqrt());
        for n in 1..u.len() {
            let s: f64 = (1..n).map(|k| r[k] * r[n - k]).sum();
            r.push((u[n] - s) / (2.0 * r[0]));
        }
        Ok(TruncSeries { coeffs: r })
    }

    /// Integer power by repeated squaring; negative exponents go through
    /// [`recip`](Self::recip).
    pub fn powi(&self, k: i64) -> Result<Self, ExpandError> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = TruncSeries::constant(1.0, self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }
}

/// Expands `expr` into its degree-`degree` Taylor polynomial at `x0`.
pub fn taylor(expr: &Expr, x0: f64, degree: usize) -> Result<PowerSeries, ExpandError> {
    if degree > MAX_DEGREE {
        return Err(ExpandError::DegreeTooLarge(degree));
    }
    let s = expand(expr, x0, degree)?;
    Ok(PowerSeries::new(x0, s.coeffs)?)
}

/// Expands `expr` into a [`TruncSeries`] of the given order.
pub fn expand(expr: &Expr, x0: f64, order: usize) -> Result<TruncSeries, ExpandError> {
    Ok(match expr {
        Expr::Number(v) => TruncSeries::constant(*v, order),
        Expr::Constant(c) => TruncSeries::constant(c.value(), order),
        Expr::Var => TruncSeries::variable(x0, order),
        Expr::Neg(e) => expand(e, x0, order)?.neg(),
        Expr::Binary(op, l, r) => match op {
            BinaryOp::Add => expand(l, x0, order)?.add(&expand(r, x0, order)?),
            BinaryOp::Sub => expand(l, x0, order)?.sub(&expand(r, x0, order)?),
            BinaryOp::Mul => expand(l, x0, order)?.mul(&expand(r, x0, order)?),
            BinaryOp::Div => expand(l, x0, order)?.div(&expand(r, x0, order)?)?,
            BinaryOp::Pow => expand_pow(l, r, x0, order)?,
        },
        Expr::Call(f, e) => {
            let u = expand(e, x0, order)?;
            match f {
                Func::Sin => u.sin_cos().0,
                Func::Cos => u.sin_cos().1,
                Func::Tan => {
                    let (s, c) = u.sin_cos();
                    s.div(&c)?
                }
                Func::Exp => u.exp(),
                Func::Ln => u.ln()?,
                Func::Sqrt => u.sqrt()?,
            }
        }
    })
}

fn expand_pow(
    base: &Expr,
    exponent: &Expr,
    x0: f64,
    order: usize,
) -> Result<TruncSeries, ExpandError> {
    if exponent.is_constant() {
        let k = exponent.eval(x0)?;
        if k.fract() == 0.0 && k.abs() <= i64::MAX as f64 {
            return expand(base, x0, order)?.powi(k as i64);
        }
        if !base.is_constant() {
            return Err(ExpandError::UnsupportedPower(format!(
                "non-integer exponent {k} on a non-constant base"
            )));
        }
    }
    if !base.is_constant() {
        return Err(ExpandError::UnsupportedPower(
            "x-dependent exponent on a non-constant base".into(),
        ));
    }
    // b^u = exp(u ln b) for a constant base b > 0
    let b = base.eval(x0)?;
    if !(b > 0.0) {
        return Err(ExpandError::BadPowerBase(b));
    }
    Ok(expand(exponent, x0, order)?.scale(b.ln()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use proptest::prelude::*;

    fn tay(src: &str, x0: f64, m: usize) -> Vec<f64> {
        taylor(&parse(src).unwrap(), x0, m)
            .unwrap()
            .coeffs()
            .to_vec()
    }

    fn factorial(n: u32) -> f64 {
        (1..=n).map(f64::from).product()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (i, (x, y)) in a.iter().zip(b).enumerate() {
            assert!(
                (x - y).abs() <= tol * y.abs().max(1e-300) || (x - y).abs() < 1e-300,
                "index {i}: {x} vs {y}"
            );
        }
    }

    #[test]
    fn sine_degree_11() {
        let c = tay("sin(x)", 0.0, 11);
        let mut expected = vec![0.0; 12];
        for n in (1..12).step_by(2) {
            let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            expected[n] = sign / factorial(n as u32);
        }
        close(&c, &expected, 1e-15);
        assert!((c[11] + 1.0 / 39916800.0).abs() < 1e-22);
        assert!(c.iter().step_by(2).all(|&v| v == 0.0));
    }

    #[test]
    fn exp_degree_4() {
        close(
            &tay("exp(x)", 0.0, 4),
            &[1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0],
            1e-15,
        );
    }

    /// Long division of (x/8 + x^2/2) by (1 + x/8 + x^2/2), term by term.
    fn rational_oracle(m: usize) -> Vec<f64> {
        let mut num = vec![0.0; m + 1];
        let mut den = vec![0.0; m + 1];
        num[1] = 0.125;
        den[0] = 1.0;
        if m >= 1 {
            den[1] = 0.125;
        }
        if m >= 2 {
            num[2] = 0.5;
            den[2] = 0.5;
        }
        let mut q = vec![0.0; m + 1];
        for n in 0..=m {
            let s: f64 = (1..=n).map(|k| den[k] * q[n - k]).sum();
            q[n] = num[n] - s;
        }
        q
    }

    #[test]
    fn rational_degree_3() {
        let c = tay("((1/8)*x + (1/2)*x^2) / (1 + (1/8)*x + (1/2)*x^2)", 0.0, 3);
        close(&c, &[0.0, 1.0 / 8.0, 31.0 / 64.0, -63.0 / 512.0], 1e-15);
        close(&c, &rational_oracle(3), 1e-15);
    }

    #[test]
    fn rational_degree_30_matches_long_division() {
        let c = tay("((1/8)*x + (1/2)*x^2) / (1 + (1/8)*x + (1/2)*x^2)", 0.0, 30);
        close(&c, &rational_oracle(30), 1e-12);
    }

    #[test]
    fn pdf_is_even_with_exact_zeros() {
        let c = tay("exp(-x^2/2)/sqrt(2*pi)", 0.0, 10);
        let s = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        let expected: Vec<f64> = (0..=10)
            .map(|n| {
                if n % 2 == 1 {
                    0.0
                } else {
                    let k = n / 2;
                    s * (-0.5f64).powi(k) / factorial(k as u32)
                }
            })
            .collect();
        close(&c, &expected, 1e-14);
        assert!(c.iter().skip(1).step_by(2).all(|&v| v == 0.0));
    }

    #[test]
    fn elementary_functions_off_center() {
        // ln(x) at 2: ln 2, 1/2, -1/8, 1/24
        close(
            &tay("ln(x)", 2.0, 3),
            &[2f64.ln(), 0.5, -0.125, 1.0 / 24.0],
            1e-14,
        );
        // sqrt(x) at 4: 2, 1/4, -1/64, 1/512
        close(
            &tay("sqrt(x)", 4.0, 3),
            &[2.0, 0.25, -1.0 / 64.0, 1.0 / 512.0],
            1e-14,
        );
        // tan(x) at 0: x + x^3/3 + 2x^5/15
        close(
            &tay("tan(x)", 0.0, 5),
            &[0.0, 1.0, 0.0, 1.0 / 3.0, 0.0, 2.0 / 15.0],
            1e-14,
        );
        // exp(u) with u_0 != 0
        let e1 = 1f64.exp();
        close(&tay("exp(x)", 1.0, 3), &[e1, e1, e1 / 2.0, e1 / 6.0], 1e-14);
        // cos(x) at pi/2 = -(x - pi/2) + (x - pi/2)^3/6
        let c = tay("cos(x)", std::f64::consts::FRAC_PI_2, 3);
        assert!(c[0].abs() < 1e-16);
        close(&c[1..], &[-1.0, -c[0] / 2.0, 1.0 / 6.0], 1e-12);
        // 2^x = exp(x ln 2)
        let l = 2f64.ln();
        close(
            &tay("2^x", 0.0, 3),
            &[1.0, l, l * l / 2.0, l * l * l / 6.0],
            1e-14,
        );
        // (1 + x)^-2 = 1 - 2x + 3x^2 - 4x^3
        close(&tay("(1 + x)^-2", 0.0, 3), &[1.0, -2.0, 3.0, -4.0], 1e-15);
        close(
            &tay("(1 + x)^5", 0.0, 5),
            &[1.0, 5.0, 10.0, 10.0, 5.0, 1.0],
            1e-15,
        );
        close(&tay("x^0", 0.0, 2), &[1.0, 0.0, 0.0], 0.0);
    }

    #[test]
    fn expansion_errors() {
        let err = |src: &str, x0: f64| taylor(&parse(src).unwrap(), x0, 5).unwrap_err();
        assert!(matches!(err("1/x", 0.0), ExpandError::ZeroDenominator(_)));
        assert!(matches!(err("ln(x)", 0.0), ExpandError::LogNonPositive(_)));
        assert!(matches!(err("ln(x)", -1.0), ExpandError::LogNonPositive(_)));
        assert!(matches!(
            err("sqrt(x)", 0.0),
            ExpandError::SqrtNotAnalytic(_)
        ));
        assert!(matches!(
            err("sqrt(x)", -1.0),
            ExpandError::SqrtNotAnalytic(_)
        ));
        assert!(matches!(
            err("1/(sin(x)/cos(x))", 0.0),
            ExpandError::ZeroDenominator(_)
        ));
        assert!(matches!(
            err("(x-1)^-1", 1.0),
            ExpandError::ZeroDenominator(_)
        ));
        assert!(matches!(err("(0-2)^x", 0.0), ExpandError::BadPowerBase(_)));
        assert!(matches!(
            taylor(&parse("x").unwrap(), 0.0, MAX_DEGREE + 1),
            Err(ExpandError::DegreeTooLarge(_))
        ));
        assert_eq!(tay("sqrt(0*x)", 0.0, 2), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let fixtures = [
            ("sin(x)", 0.0),
            ("exp(x)", 0.3),
            ("exp(-x^2/2)/sqrt(2*pi)", 0.5),
            ("((1/8)*x + (1/2)*x^2) / (1 + (1/8)*x + (1/2)*x^2)", 0.2),
            ("sin(3*x)*cos(5*x)*exp(-x) + 3*sin(pi*x)*exp(x/2)", 0.1),
            ("ln(1 + x^2) + sqrt(2 + x) - tan(x/3)", -0.4),
        ];
        let h = 1e-5;
        for (src, x0) in fixtures {
            let e = parse(src).unwrap();
            let a1 = taylor(&e, x0, 6).unwrap().coeffs()[1];
            let fd = (e.eval(x0 + h).unwrap() - e.eval(x0 - h).unwrap()) / (2.0 * h);
            assert!((a1 - fd).abs() < 1e-6, "{src}: {a1} vs {fd}");
        }
    }

    #[test]
    fn remainder_decays_for_entire_functions() {
        let grid: Vec<f64> = (0..=200).map(|i| -1.0 + i as f64 / 100.0).collect();
        for src in ["sin(x)", "exp(x)", "exp(-x^2/2)/sqrt(2*pi)"] {
            let e = parse(src).unwrap();
            let mut prev = f64::INFINITY;
            for m in 4..=16 {
                let p = taylor(&e, 0.0, m).unwrap();
                let err = grid
                    .iter()
                    .map(|&x| (e.eval(x).unwrap() - p.evaluate(x)).abs())
                    .fold(0.0, f64::max);
                assert!(err <= prev, "{src} m={m}: {err} > {prev}");
                prev = err;
            }
        }
    }

    fn poly_expr(coeffs: &[f64]) -> Expr {
        // a_0 + x*(a_1 + x*(...)) built without going through the parser
        coeffs.iter().rev().fold(Expr::Number(0.0), |acc, &c| {
            Expr::binary(
                BinaryOp::Add,
                Expr::Number(c),
                Expr::binary(BinaryOp::Mul, Expr::Var, acc),
            )
        })
    }

    proptest! {
        #[test]
        fn polynomial_expansion_is_consistent(
            coeffs in prop::collection::vec(-1.0..1.0f64, 1..=9),
            x0 in -1.0..1.0f64,
            dx in -2.0..2.0f64,
        ) {
            let e = poly_expr(&coeffs);
            let p = taylor(&e, x0, 8).unwrap();
            let x = x0 + dx;
            let direct = e.eval(x).unwrap();
            let scale: f64 = coeffs.iter().enumerate()
                .map(|(n, c)| (c * x.powi(n as i32)).abs()).sum::<f64>().max(1e-300);
            prop_assert!((p.evaluate(x) - direct).abs() <= 1e-10 * scale);
        }
    }
}
