//! Single-variable real expressions: parsing, evaluation, printing.

mod parser;

use std::fmt;

use thiserror::Error;

use crate::function::RealFn;

pub use parser::{parse, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "pi" => Some(Constant::Pi),
            "e" => Some(Constant::E),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }
}

/// Built-in functions. `log` is the base-10 logarithm, `ln` the natural one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Log,
    Abs,
    Sqrt,
    Floor,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Sin,
        Func::Cos,
        Func::Exp,
        Func::Ln,
        Func::Log,
        Func::Abs,
        Func::Sqrt,
        Func::Floor,
    ];

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Log => "log",
            Func::Abs => "abs",
            Func::Sqrt => "sqrt",
            Func::Floor => "floor",
        }
    }

    fn apply(self, v: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Exp => v.exp(),
            Func::Ln | Func::Log if v <= 0.0 => return Err(EvalError::LogNonPositive),
            Func::Ln => v.ln(),
            Func::Log => v.log10(),
            Func::Abs => v.abs(),
            Func::Sqrt if v < 0.0 => return Err(EvalError::SqrtNegative),
            Func::Sqrt => v.sqrt(),
            Func::Floor => v.floor(),
        })
    }
}

/// Expression tree in the single variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Const(Constant),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Domain faults raised during evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("DivideByZero")]
    DivideByZero,
    #[error("LogNonPositive")]
    LogNonPositive,
    #[error("SqrtNegative")]
    SqrtNegative,
    /// Any other operation whose IEEE result is NaN, e.g. `(-8)^0.5`.
    #[error("Undefined")]
    Undefined,
}

impl EvalError {
    pub fn name(&self) -> &'static str {
        match self {
            EvalError::DivideByZero => "DivideByZero",
            EvalError::LogNonPositive => "LogNonPositive",
            EvalError::SqrtNegative => "SqrtNegative",
            EvalError::Undefined => "Undefined",
        }
    }
}

impl Expr {
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Num(v) => *v,
            Expr::Var => x,
            Expr::Const(c) => c.value(),
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Call(func, arg) => func.apply(arg.eval(x)?)?,
            Expr::Binary(op, l, r) => {
                let (a, b) = (l.eval(x)?, r.eval(x)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div if b == 0.0 => return Err(EvalError::DivideByZero),
                    BinOp::Div => a / b,
                    BinOp::Pow if a == 0.0 && b < 0.0 => return Err(EvalError::DivideByZero),
                    BinOp::Pow => a.powf(b),
                }
            }
        };
        if v.is_nan() {
            Err(EvalError::Undefined)
        } else {
            Ok(v)
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Var | Expr::Const(_) => 1,
            Expr::Neg(e) | Expr::Call(_, e) => 1 + e.size(),
            Expr::Binary(_, l, r) => 1 + l.size() + r.size(),
        }
    }
}

/// Prints a fully parenthesized form that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) if *v < 0.0 || (*v == 0.0 && v.is_sign_negative()) => {
                write!(f, "(-{})", -v)
            }
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var => f.write_str("x"),
            Expr::Const(c) => f.write_str(c.name()),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}

/// Wraps an expression as a real function; evaluation faults surface as
/// [`crate::CalcError::Eval`].
pub fn to_realfn(e: &Expr) -> RealFn {
    let e = e.clone();
    RealFn::try_new(move |x| Ok(e.eval(x)?))
}
