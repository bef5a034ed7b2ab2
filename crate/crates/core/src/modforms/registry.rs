use std::collections::BTreeMap;

use crate::chargeom::{all_sextuples, enumerate_even, Char, Sextuple};
use crate::error::{Error, Result};
use crate::qseries::cache::SeriesCache;
use crate::qseries::{second_kind_qexp, theta_qexp, QSeries};

use super::expr::{Expr, Form};

/// Every named form of the suite, expanded to a common truncation.
#[derive(Clone, Debug)]
pub struct FormRegistry {
    n: u32,
    thetas: BTreeMap<Char, QSeries>,
    f: [QSeries; 4],
    y: [QSeries; 6],
    big_f: [QSeries; 6],
    f_half: [QSeries; 4],
    big_f_half: [QSeries; 5],
    big_theta: QSeries,
    t: BTreeMap<Sextuple, QSeries>,
    chi5: QSeries,
}

fn ch(code: &str) -> Char {
    Char::parse(code).expect("four bits")
}

/// `θ[a;b]` indices of the second-kind thetas in the order `(00),(10),(01),(11)`.
pub const F_ORDER: [[u8; 2]; 4] = [[0, 0], [1, 0], [0, 1], [1, 1]];

pub fn f_index(a: [u8; 2]) -> usize {
    (a[0] + 2 * a[1]) as usize
}

fn product<'a>(it: impl IntoIterator<Item = &'a QSeries>, n: u32) -> QSeries {
    it.into_iter().fold(QSeries::one(n), |acc, s| &acc * s)
}

/// `F₁..F₅` as polynomials in four second-kind thetas.
fn runge_forms(f: &[QSeries; 4], n: u32) -> [QSeries; 5] {
    let sq: Vec<QSeries> = f.iter().map(|s| s.pow(2)).collect();
    [
        f.iter().map(|s| s.pow(4)).fold(QSeries::zero(n), |a, b| a + b),
        &sq[0] * &sq[1] + &sq[2] * &sq[3],
        &sq[0] * &sq[2] + &sq[1] * &sq[3],
        &sq[0] * &sq[3] + &sq[1] * &sq[2],
        product(f.iter(), n),
    ]
}

impl FormRegistry {
    pub fn build(n: u32) -> Result<Self> {
        FormRegistry::build_with(n, None)
    }

    pub fn build_with(n: u32, cache: Option<&SeriesCache>) -> Result<Self> {
        if n < 4 {
            return Err(Error::Precondition(format!("truncation {n} is below 4")));
        }
        let mut thetas = BTreeMap::new();
        for m in enumerate_even() {
            let s = match cache {
                Some(c) => c.theta(m, n)?,
                None => theta_qexp(m, n),
            };
            thetas.insert(m, s);
        }
        let th = |code: &str| &thetas[&ch(code)];
        let f: [QSeries; 4] = F_ORDER.map(|a| second_kind_qexp(a, n));

        let y = [
            th("0011").pow(4),
            th("0001").pow(4),
            th("0000").pow(4),
            -&(th("1000").pow(4) + th("0011").pow(4)),
            -&(th("1001").pow(4) + th("0011").pow(4)),
            product([th("0001"), th("0000"), th("0010"), th("0011")], n),
        ];
        let big_theta = y[5].clone();

        let [g1, g2, g3, g4, g5] = runge_forms(&f, n);
        let big_f = [g1, g2, g3, g4, g5, big_theta.clone()];
        let f_half: [QSeries; 4] = F_ORDER.map(|a| thetas[&Char::from_ab(a, [0, 0])].clone());
        let big_f_half = runge_forms(&f_half, n);

        let mut t = BTreeMap::new();
        for s in all_sextuples() {
            t.insert(s, product(s.chars().iter().map(|m| &thetas[m]), n));
        }
        let chi5 = product(thetas.values(), n);
        Ok(FormRegistry { n, thetas, f, y, big_f, f_half, big_f_half, big_theta, t, chi5 })
    }

    pub fn truncation(&self) -> u32 {
        self.n
    }

    pub fn theta(&self, m: Char) -> QSeries {
        self.thetas.get(&m).cloned().unwrap_or_else(|| QSeries::zero(self.n))
    }

    pub fn f(&self, i: usize) -> &QSeries {
        &self.f[i]
    }

    pub fn y(&self, i: usize) -> &QSeries {
        &self.y[i]
    }

    /// `F₁..F₆`, one-based.
    pub fn big_f(&self, i: usize) -> &QSeries {
        &self.big_f[i - 1]
    }

    /// `F₁..F₅` as functions of `W = 2Z`, one-based.
    pub fn big_f_in_2z(&self, i: usize) -> &QSeries {
        &self.big_f_half[i - 1]
    }

    pub fn big_theta(&self) -> &QSeries {
        &self.big_theta
    }

    pub fn sextuple_form(&self, s: &Sextuple) -> &QSeries {
        &self.t[s]
    }

    pub fn t_std(&self) -> &QSeries {
        &self.t[&Sextuple::standard()]
    }

    pub fn chi5(&self) -> &QSeries {
        &self.chi5
    }

    pub fn form(&self, f: &Form) -> QSeries {
        match f {
            Form::Theta(m) => self.theta(*m),
            Form::F(i) => self.f[*i].clone(),
            Form::Y(i) => self.y[*i].clone(),
            Form::BigF(i) => self.big_f[*i - 1].clone(),
            Form::BigTheta => self.big_theta.clone(),
            Form::T(s) => self.t[s].clone(),
            Form::Chi5 => self.chi5.clone(),
        }
    }

    /// The same form as a function of `W = 2Z`. Only the second-kind thetas
    /// and `F₁..F₅` have such an expansion; every exponent is halved, so the
    /// truncation covers twice the degree in `Z`.
    pub fn form_in_2z(&self, f: &Form) -> Result<QSeries> {
        match f {
            Form::F(i) => Ok(self.f_half[*i].clone()),
            Form::BigF(i) if (1..=5).contains(i) => Ok(self.big_f_half[*i - 1].clone()),
            other => Err(Error::Precondition(format!("{other} is not a function of 2Z"))),
        }
    }

    pub fn eval(&self, e: &Expr) -> QSeries {
        self.eval_with(e, &|f| Ok(self.form(f))).expect("every form has a Z-expansion")
    }

    pub fn eval_in_2z(&self, e: &Expr) -> Result<QSeries> {
        self.eval_with(e, &|f| self.form_in_2z(f))
    }

    fn eval_with(&self, e: &Expr, leaf: &dyn Fn(&Form) -> Result<QSeries>) -> Result<QSeries> {
        Ok(match e {
            Expr::Form(f) => leaf(f)?,
            Expr::Int(k) => QSeries::one(self.n).scale(*k),
            Expr::Neg(x) => -&self.eval_with(x, leaf)?,
            Expr::Pow(x, k) => self.eval_with(x, leaf)?.pow(*k),
            Expr::Add(xs) => {
                let mut acc = QSeries::zero(self.n);
                for x in xs {
                    acc = acc + self.eval_with(x, leaf)?;
                }
                acc
            }
            Expr::Mul(xs) => {
                let mut scalar = 1i64;
                let mut acc: Option<QSeries> = None;
                for x in xs {
                    if let Expr::Int(k) = x {
                        scalar *= k;
                        continue;
                    }
                    let v = self.eval_with(x, leaf)?;
                    acc = Some(match acc {
                        None => v,
                        Some(a) => &a * &v,
                    });
                }
                acc.unwrap_or_else(|| QSeries::one(self.n)).scale(scalar)
            }
        })
    }
}

/// Product of the six theta expansions of a sextuple.
pub fn sextuple_form(s: &Sextuple, n: u32) -> Result<QSeries> {
    s.complement()?;
    Ok(product(&s.chars().map(|m| theta_qexp(m, n)), n))
}

pub fn build_generators(n: u32) -> Result<FormRegistry> {
    FormRegistry::build(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::CycInt8;

    #[test]
    fn constant_terms() {
        let r = FormRegistry::build(6).unwrap();
        let ys: Vec<i64> = (0..6).map(|i| r.y(i).constant_term().as_integer().unwrap()).collect();
        assert_eq!(ys, vec![1, 1, 1, -1, -1, 1]);
        let fs: Vec<i64> = (1..=6).map(|i| r.big_f(i).constant_term().as_integer().unwrap()).collect();
        assert_eq!(fs, vec![1, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn cross_links() {
        let r = FormRegistry::build(8).unwrap();
        assert_eq!(r.y(5), r.big_f(6));
        assert_eq!(r.y(5), r.big_theta());
        assert!((r.t_std() * r.big_theta()).agrees_with(r.chi5()));
        assert_eq!(r.chi5().constant_term(), CycInt8::ZERO);
    }

    #[test]
    fn small_truncation_rejected() {
        assert!(matches!(FormRegistry::build(3), Err(Error::Precondition(_))));
    }
}
