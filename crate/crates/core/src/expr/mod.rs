//! Real-valued expressions in one variable `x`.
//!
//! The grammar, from loosest to tightest binding:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | tan | exp | ln | sqrt
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)` and `2^3^2` is `2^(3^2)`. Multiplication must be written
//! out: `3x` is a syntax error.

mod parser;

use std::fmt;

use thiserror::Error;

pub use parser::{parse, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Var,
    Constant(Constant),
    Neg(Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("division by zero at x = {x}")]
    DivisionByZero { x: f64 },
    #[error("ln of non-positive argument {arg} at x = {x}")]
    LogNonPositive { x: f64, arg: f64 },
    #[error("sqrt of negative argument {arg} at x = {x}")]
    SqrtNegative { x: f64, arg: f64 },
    #[error("zero raised to a negative power at x = {x}")]
    ZeroNegativePower { x: f64 },
    #[error("non-integer power of negative base {base} at x = {x}")]
    NegativeBase { x: f64, base: f64 },
    #[error("tan is undefined at x = {x}")]
    TanPole { x: f64 },
    #[error("result is not finite at x = {x}")]
    NonFinite { x: f64 },
}

impl Expr {
    pub fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    /// True if the subtree does not mention `x`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Number(_) | Expr::Constant(_) => true,
            Expr::Var => false,
            Expr::Neg(e) | Expr::Call(_, e) => e.is_constant(),
            Expr::Binary(_, l, r) => l.is_constant() && r.is_constant(),
        }
    }

    /// Evaluates the expression at `x` in IEEE double arithmetic.
    pub fn eval(&self, x: f64) -> Result<f64, DomainError> {
        let v = self.eval_raw(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(DomainError::NonFinite { x })
        }
    }

    fn eval_raw(&self, x: f64) -> Result<f64, DomainError> {
        Ok(match self {
            Expr::Number(v) => *v,
            Expr::Var => x,
            Expr::Constant(c) => c.value(),
            Expr::Neg(e) => -e.eval_raw(x)?,
            Expr::Binary(op, l, r) => {
                let a = l.eval_raw(x)?;
                let b = r.eval_raw(x)?;
                match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div => {
                        if b == 0.0 {
                            return Err(DomainError::DivisionByZero { x });
                        }
                        a / b
                    }
                    BinaryOp::Pow => pow(a, b, x)?,
                }
            }
            Expr::Call(f, e) => {
                let a = e.eval_raw(x)?;
                match f {
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Tan => {
                        if a.cos() == 0.0 {
                            return Err(DomainError::TanPole { x });
                        }
                        a.tan()
                    }
                    Func::Exp => a.exp(),
                    Func::Ln => {
                        if a <= 0.0 {
                            return Err(DomainError::LogNonPositive { x, arg: a });
                        }
                        a.ln()
                    }
                    Func::Sqrt => {
                        if a < 0.0 {
                            return Err(DomainError::SqrtNegative { x, arg: a });
                        }
                        a.sqrt()
                    }
                }
            }
        })
    }
}

fn pow(base: f64, exp: f64, x: f64) -> Result<f64, DomainError> {
    if base == 0.0 && exp < 0.0 {
        return Err(DomainError::ZeroNegativePower { x });
    }
    if exp.fract() == 0.0 && exp.abs() <= i32::MAX as f64 {
        return Ok(base.powi(exp as i32));
    }
    if base < 0.0 {
        return Err(DomainError::NegativeBase { x, base });
    }
    Ok(base.powf(exp))
}

/// Shorthand for [`Expr::eval`].
pub fn eval_ast(node: &Expr, x: f64) -> Result<f64, DomainError> {
    node.eval(x)
}

impl fmt::Display for Expr {
    /// Fully parenthesized rendering; parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(v) => write!(f, "{v:?}"),
            Expr::Var => f.write_str("x"),
            Expr::Constant(c) => f.write_str(c.name()),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}
