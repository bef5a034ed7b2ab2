use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::mpoly::{MPoly, Monomial, Symbol, Q};
use crate::error::{Error, Result};

/// Quotient of two polynomials. Not kept in lowest terms; only common
/// monomial factors and the scalar normalisation of the denominator are removed.
#[derive(Clone)]
pub struct RatFn {
    num: MPoly,
    den: MPoly,
}

impl RatFn {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFn { num, den }.normalized())
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFn { num: p, den: MPoly::one() }
    }

    pub fn zero() -> Self {
        RatFn::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        RatFn::from_poly(MPoly::one())
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            return RatFn::zero();
        }
        let g = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !g.is_one() {
            self.num = self.num.div_monomial(&g).expect("content divides");
            self.den = self.den.div_monomial(&g).expect("content divides");
        }
        let lc = self.den.leading_coeff().cloned().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = Q::one() / lc;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    pub fn inv(&self) -> Result<RatFn> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &Q) -> RatFn {
        RatFn { num: self.num.scale(c), den: self.den.clone() }.normalized()
    }

    pub fn pow(&self, e: u32) -> RatFn {
        RatFn { num: self.num.pow(e), den: self.den.pow(e) }.normalized()
    }

    pub fn derivative(&self, s: &Symbol) -> RatFn {
        let dn = self.num.derivative(s);
        let dd = self.den.derivative(s);
        if dd.is_zero() {
            return RatFn { num: dn, den: self.den.clone() }.normalized();
        }
        RatFn { num: &(&dn * &self.den) - &(&self.num * &dd), den: self.den.pow(2) }.normalized()
    }

    /// The polynomial this function equals, when the denominator is a constant.
    pub fn as_poly(&self) -> Option<MPoly> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&(Q::one() / c)))
    }

    pub fn variables(&self) -> std::collections::BTreeSet<Symbol> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v
    }

    /// Substitute rational functions for every variable.
    pub fn substitute(&self, assignment: &BTreeMap<Symbol, RatFn>) -> Result<RatFn> {
        let n = compose(&self.num, assignment)?;
        let d = compose(&self.den, assignment)?;
        n.div(&d)
    }

    pub fn eval(&self, point: &BTreeMap<Symbol, Q>) -> Result<Q> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval(point)? / d)
    }
}

/// `P(r₁,…,r_k)` with all denominators cleared at once: each `rᵢ = nᵢ/dᵢ` raised
/// to `e` contributes `nᵢ^e dᵢ^{Dᵢ−e}` over the common `Π dᵢ^{Dᵢ}`.
fn compose(p: &MPoly, assignment: &BTreeMap<Symbol, RatFn>) -> Result<RatFn> {
    let vars = p.variables();
    let mut max_deg: BTreeMap<Symbol, u32> = BTreeMap::new();
    for (m, _) in p.terms() {
        for (s, e) in m.powers() {
            let d = max_deg.entry(s.clone()).or_default();
            *d = (*d).max(*e);
        }
    }
    let mut parts = BTreeMap::new();
    for s in &vars {
        let r = assignment.get(s).ok_or_else(|| Error::UnassignedVariable(s.to_string()))?;
        parts.insert(s.clone(), r);
    }
    let mut num = MPoly::zero();
    let mut npow: BTreeMap<(Symbol, u32), MPoly> = BTreeMap::new();
    let mut dpow: BTreeMap<(Symbol, u32), MPoly> = BTreeMap::new();
    let cached = |cache: &mut BTreeMap<(Symbol, u32), MPoly>, base: &MPoly, s: &Symbol, e: u32| {
        cache.entry((s.clone(), e)).or_insert_with(|| base.pow(e)).clone()
    };
    for (m, c) in p.terms() {
        let mut term = MPoly::constant(c.clone());
        for s in &vars {
            let r = parts[s];
            let e = m.exponent(s);
            let d = max_deg[s];
            if e > 0 {
                term = &term * &cached(&mut npow, &r.num, s, e);
            }
            if d > e && r.den.as_constant().map_or(true, |c| !c.is_one()) {
                term = &term * &cached(&mut dpow, &r.den, s, d - e);
            }
        }
        num = &num + &term;
    }
    let mut den = MPoly::one();
    for s in &vars {
        let r = parts[s];
        if r.den.as_constant().map_or(true, |c| !c.is_one()) {
            den = &den * &r.den.pow(max_deg[s]);
        }
    }
    RatFn::new(num, den)
}

fn monomial_den(p: &MPoly) -> Option<(Monomial, Q)> {
    p.as_term().map(|(m, c)| (m.clone(), c.clone()))
}

impl PartialEq for RatFn {
    fn eq(&self, other: &RatFn) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFn {}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add<&RatFn> for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn { num: &self.num + &rhs.num, den: self.den.clone() }.normalized();
        }
        if let (Some((m1, c1)), Some((m2, c2))) = (monomial_den(&self.den), monomial_den(&rhs.den)) {
            let l = m1.lcm(&m2);
            let f1 = MPoly::monomial(l.div(&m1).expect("lcm"), Q::one() / c1);
            let f2 = MPoly::monomial(l.div(&m2).expect("lcm"), Q::one() / c2);
            return RatFn { num: &(&self.num * &f1) + &(&rhs.num * &f2), den: MPoly::monomial(l, Q::one()) }
                .normalized();
        }
        RatFn { num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den), den: &self.den * &rhs.den }.normalized()
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub<&RatFn> for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul<&RatFn> for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn { num: &self.num * &rhs.num, den: &self.den * &rhs.den }.normalized()
    }
}

impl From<MPoly> for RatFn {
    fn from(p: MPoly) -> Self {
        RatFn::from_poly(p)
    }
}

/// Determinant of a square matrix of rational functions by cofactor expansion.
pub fn det(m: &[Vec<RatFn>]) -> RatFn {
    let n = m.len();
    match n {
        0 => RatFn::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = RatFn::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<RatFn>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = &m[0][j] * &det(&minor);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// `det(∂ mapᵢ / ∂ varⱼ)` for three functions of three variables.
pub fn rational_jacobian(maps: &[RatFn; 3], vars: &[Symbol; 3]) -> RatFn {
    let m: Vec<Vec<RatFn>> = maps.iter().map(|f| vars.iter().map(|v| f.derivative(v)).collect()).collect();
    det(&m)
}
