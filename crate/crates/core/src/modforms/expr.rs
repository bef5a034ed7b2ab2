use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::chargeom::{Char, Sextuple};

/// Named modular forms that can appear in a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    Theta(Char),
    /// Second-kind theta `f₁..f₄`, stored by zero-based index.
    F(usize),
    /// `y₀..y₅`.
    Y(usize),
    /// `F₁..F₆`, stored by one-based index.
    BigF(usize),
    /// The product of the four thetas with `a = 0`.
    BigTheta,
    T(Sextuple),
    Chi5,
}

impl Form {
    /// Weight in half-integral units (a theta constant has weight 1/2).
    pub fn half_weight(&self) -> u32 {
        match self {
            Form::Theta(_) | Form::F(_) => 1,
            Form::Y(_) | Form::BigF(_) | Form::BigTheta => 4,
            Form::T(_) => 6,
            Form::Chi5 => 10,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form::Theta(m) => write!(f, "θ{m}"),
            Form::F(i) => write!(f, "f{}", i + 1),
            Form::Y(i) => write!(f, "y{i}"),
            Form::BigF(i) => write!(f, "F{i}"),
            Form::BigTheta => write!(f, "Θ"),
            Form::T(s) => write!(f, "T{s}"),
            Form::Chi5 => write!(f, "χ5"),
        }
    }
}

/// Polynomial expression in named forms with integer coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Form(Form),
    Int(i64),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn pow(self, e: u32) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    pub fn sum<I: IntoIterator<Item = Expr>>(it: I) -> Expr {
        Expr::Add(it.into_iter().collect())
    }

    pub fn product<I: IntoIterator<Item = Expr>>(it: I) -> Expr {
        Expr::Mul(it.into_iter().collect())
    }

    /// Half-weight of a homogeneous expression; `None` if a sum mixes weights.
    /// Integer constants carry weight zero.
    pub fn half_weight(&self) -> Option<u32> {
        match self {
            Expr::Form(f) => Some(f.half_weight()),
            Expr::Int(_) => Some(0),
            Expr::Neg(e) => e.half_weight(),
            Expr::Pow(e, k) => e.half_weight().map(|w| w * k),
            Expr::Mul(es) => es.iter().map(Expr::half_weight).sum(),
            Expr::Add(es) => {
                let ws: Option<Vec<u32>> = es.iter().map(Expr::half_weight).collect();
                let ws = ws?;
                match ws.first() {
                    None => Some(0),
                    Some(&w) => ws.iter().all(|&x| x == w).then_some(w),
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Form(x) => write!(f, "{x}"),
            Expr::Int(k) => write!(f, "{k}"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Pow(e, k) => write!(f, "({e})^{k}"),
            Expr::Mul(es) => {
                let s: Vec<String> = es.iter().map(|e| e.to_string()).collect();
                write!(f, "{}", s.join("*"))
            }
            Expr::Add(es) => {
                let s: Vec<String> = es.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", s.join(" + "))
            }
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        match self {
            Expr::Add(mut v) => {
                v.push(rhs);
                Expr::Add(v)
            }
            e => Expr::Add(vec![e, rhs]),
        }
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        match self {
            Expr::Mul(mut v) => {
                v.push(rhs);
                Expr::Mul(v)
            }
            e => Expr::Mul(vec![e, rhs]),
        }
    }
}

impl Mul<Expr> for i64 {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(vec![Expr::Int(self), rhs])
    }
}

pub fn theta(code: &str) -> Expr {
    Expr::Form(Form::Theta(Char::parse(code).expect("four bits")))
}

pub fn f(i: usize) -> Expr {
    Expr::Form(Form::F(i - 1))
}

pub fn y(i: usize) -> Expr {
    Expr::Form(Form::Y(i))
}

pub fn big_f(i: usize) -> Expr {
    Expr::Form(Form::BigF(i))
}

pub fn big_theta() -> Expr {
    Expr::Form(Form::BigTheta)
}
