//! Truncated Fourier expansions in the level-8 normal coordinates
//! `q₀ = e((z₀+z₁)/8)`, `q₁ = e(−z₁/8)`, `q₂ = e((z₂+z₁)/8)`.

pub mod cache;
pub mod theta;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact_arith::CycInt8;
use crate::symplectic::{det2, mul2, transpose2, Mat2};

pub use theta::{second_kind_qexp, theta_order_formula, theta_qexp};

/// Exponents of `q₀ⁿ⁰ q₁ⁿ¹ q₂ⁿ²`. The index matrix is `T = (n₀ k/2; k/2 n₂)/8`
/// with `k = n₀ + n₂ − n₁`.
///
/// Ordered by total degree `n₀ + n₂` first, so truncation is a prefix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ExpTriple {
    pub n0: u32,
    pub n1: u32,
    pub n2: u32,
}

impl ExpTriple {
    pub fn new(n0: u32, n1: u32, n2: u32) -> Self {
        ExpTriple { n0, n1, n2 }
    }

    /// From the index `(n₀, k, n₂)`; fails when `n₁` would be negative.
    pub fn from_index(n0: i64, k: i64, n2: i64) -> Option<Self> {
        let n1 = n0 + n2 - k;
        (n0 >= 0 && n2 >= 0 && n1 >= 0).then(|| ExpTriple::new(n0 as u32, n1 as u32, n2 as u32))
    }

    pub fn degree(&self) -> u32 {
        self.n0 + self.n2
    }

    /// Off-diagonal index `k = n₀ + n₂ − n₁`, i.e. `16 t₁`.
    pub fn k(&self) -> i64 {
        self.n0 as i64 + self.n2 as i64 - self.n1 as i64
    }

    pub fn is_koecher(&self) -> bool {
        4 * self.n0 as i64 * self.n2 as i64 >= self.k() * self.k()
    }

    pub fn axis(&self, axis: usize) -> u32 {
        match axis {
            0 => self.n0,
            1 => self.n1,
            2 => self.n2,
            _ => panic!("axis must be 0, 1 or 2"),
        }
    }

    fn key(&self) -> (u32, u32, u32, u32) {
        (self.degree(), self.n0, self.n1, self.n2)
    }
}

impl PartialOrd for ExpTriple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExpTriple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl Add for ExpTriple {
    type Output = ExpTriple;
    fn add(self, o: ExpTriple) -> ExpTriple {
        ExpTriple::new(self.n0 + o.n0, self.n1 + o.n1, self.n2 + o.n2)
    }
}

/// A power series in `q₀, q₁, q₂` with coefficients in `Z[ζ₈]`, known for
/// every term with `n₀ + n₂ ≤ truncation`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    terms: BTreeMap<ExpTriple, CycInt8>,
    truncation: u32,
}

impl QSeries {
    pub fn zero(truncation: u32) -> Self {
        QSeries { terms: BTreeMap::new(), truncation }
    }

    pub fn constant(c: CycInt8, truncation: u32) -> Self {
        QSeries::from_terms([(ExpTriple::new(0, 0, 0), c)], truncation)
    }

    pub fn one(truncation: u32) -> Self {
        QSeries::constant(CycInt8::ONE, truncation)
    }

    /// Terms beyond the truncation are discarded; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (ExpTriple, CycInt8)>>(it: I, truncation: u32) -> Self {
        let mut s = QSeries::zero(truncation);
        for (e, c) in it {
            s.add_term(e, c);
        }
        s
    }

    fn add_term(&mut self, e: ExpTriple, c: CycInt8) {
        if e.degree() > self.truncation || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert(CycInt8::ZERO);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpTriple, &CycInt8)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Identically zero up to the truncation.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: ExpTriple) -> CycInt8 {
        self.terms.get(&e).copied().unwrap_or(CycInt8::ZERO)
    }

    pub fn constant_term(&self) -> CycInt8 {
        self.coeff(ExpTriple::new(0, 0, 0))
    }

    pub fn truncate(&self, n: u32) -> QSeries {
        let n = n.min(self.truncation);
        QSeries {
            terms: self.terms.iter().filter(|(e, _)| e.degree() <= n).map(|(e, c)| (*e, *c)).collect(),
            truncation: n,
        }
    }

    /// Equality up to the smaller of the two truncations.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        (self - other).is_zero()
    }

    pub fn scale(&self, k: i64) -> QSeries {
        self.scale_cyc(CycInt8::from_int(k))
    }

    pub fn scale_cyc(&self, c: CycInt8) -> QSeries {
        QSeries::from_terms(self.terms.iter().map(|(e, a)| (*e, *a * c)), self.truncation)
    }

    pub fn pow(&self, mut e: u32) -> QSeries {
        let mut base = self.clone();
        let mut acc = QSeries::one(self.truncation);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest absolute integer coordinate over all coefficients.
    pub fn max_coeff(&self) -> i64 {
        self.terms.values().flat_map(|c| c.0.iter().map(|x| x.abs())).max().unwrap_or(0)
    }

    /// Smallest exponent of `q_axis` over the support.
    pub fn vanishing_order(&self, axis: usize) -> Result<u32> {
        self.terms.keys().map(|e| e.axis(axis)).min().ok_or(Error::ZeroSeries(self.truncation))
    }

    /// Every stored term satisfies `4 n₀ n₂ ≥ (n₀ + n₂ − n₁)²`.
    pub fn koecher_check(&self) -> bool {
        self.terms.keys().all(ExpTriple::is_koecher)
    }

    /// `Z ↦ Z + S`: each term picks up `ζ₈^{n₀s₀ + k s₁ + n₂s₂}`.
    pub fn translate_action(&self, s: &Mat2) -> Result<QSeries> {
        if s[0][1] != s[1][0] {
            return Err(Error::Precondition("translation matrix must be symmetric".into()));
        }
        let (s0, s1, s2) = (s[0][0], s[0][1], s[1][1]);
        Ok(QSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let phase = e.n0 as i64 * s0 + e.k() * s1 + e.n2 as i64 * s2;
                    (*e, c.mul_zeta_pow(phase))
                })
                .collect(),
            truncation: self.truncation,
        })
    }

    /// `f(Z) ↦ f(ᵗU Z U)`: the index matrix becomes `U T ᵗU`.
    ///
    /// The image is only complete up to a smaller truncation: the largest `N'`
    /// such that every Koecher index of degree `≤ N'` comes from one of degree
    /// `≤ N`. Terms beyond `N'` are dropped.
    pub fn unimodular_action(&self, u: &Mat2) -> Result<QSeries> {
        let d = det2(u);
        if d.abs() != 1 {
            return Err(Error::NotUnimodular(d));
        }
        let inv = [[u[1][1] * d, -u[0][1] * d], [-u[1][0] * d, u[0][0] * d]];
        let n = self.truncation;
        let mut n_new = n;
        'deg: for s in 0..=n {
            for t in koecher_triples_of_degree(s) {
                let pre = remap(&t, &inv).expect("Koecher index maps to Koecher index");
                if pre.degree() > n {
                    // degree 0 is fixed, so s ≥ 1 here
                    n_new = s - 1;
                    break 'deg;
                }
            }
        }
        let mut out = QSeries::zero(n_new);
        for (e, c) in &self.terms {
            let img = remap(e, u).ok_or_else(|| Error::Precondition(format!("term {e:?} is not semi-positive")))?;
            out.add_term(img, *c);
        }
        Ok(out)
    }

    /// `z₁ ↦ −z₁`: `(n₀, n₁, n₂) ↦ (n₀, 2(n₀+n₂) − n₁, n₂)`.
    pub fn negate_offdiag(&self) -> QSeries {
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (ExpTriple::new(e.n0, 2 * e.degree() - e.n1, e.n2), *c)).collect(),
            truncation: self.truncation,
        }
    }

    /// Replace every exponent triple by its double (`Z ↦ 2Z`).
    pub fn double_exponents(&self) -> QSeries {
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (ExpTriple::new(2 * e.n0, 2 * e.n1, 2 * e.n2), *c)).collect(),
            truncation: 2 * self.truncation,
        }
    }

    /// Whether all coefficients lie in `Z`.
    pub fn is_rational_integral(&self) -> bool {
        self.terms.values().all(|c| c.as_integer().is_some())
    }
}

fn remap(e: &ExpTriple, u: &Mat2) -> Option<ExpTriple> {
    let p2 = [[2 * e.n0 as i64, e.k()], [e.k(), 2 * e.n2 as i64]];
    let q = mul2(&mul2(u, &p2), &transpose2(u));
    debug_assert!(q[0][0] % 2 == 0 && q[1][1] % 2 == 0);
    ExpTriple::from_index(q[0][0] / 2, q[0][1], q[1][1] / 2)
}

/// All semi-positive exponent triples of total degree `s`.
pub fn koecher_triples_of_degree(s: u32) -> Vec<ExpTriple> {
    let mut out = Vec::new();
    for n0 in 0..=s {
        let n2 = s - n0;
        for n1 in 0..=2 * s {
            let t = ExpTriple::new(n0, n1, n2);
            if t.is_koecher() {
                out.push(t);
            }
        }
    }
    out
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "O(N>{})", self.truncation);
        }
        for (e, c) in self.terms.iter().take(12) {
            write!(f, "({c})q0^{}q1^{}q2^{} + ", e.n0, e.n1, e.n2)?;
        }
        if self.terms.len() > 12 {
            write!(f, "… ({} terms) + ", self.terms.len())?;
        }
        write!(f, "O(N>{})", self.truncation)
    }
}

impl Add<&QSeries> for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.truncation.min(rhs.truncation);
        let mut out = self.truncate(n);
        for (e, c) in &rhs.terms {
            out.add_term(*e, *c);
        }
        out
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { terms: self.terms.iter().map(|(e, c)| (*e, -*c)).collect(), truncation: self.truncation }
    }
}

impl Sub<&QSeries> for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Mul<&QSeries> for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.truncation.min(rhs.truncation);
        let a: Vec<(ExpTriple, CycInt8)> = self.terms.iter().map(|(e, c)| (*e, *c)).collect();
        let b: Vec<(ExpTriple, CycInt8)> = rhs.terms.iter().map(|(e, c)| (*e, *c)).collect();
        // Dense accumulator over n₀ ≤ N, n₂ ≤ N, n₁ ≤ 2N.
        let w1 = 2 * n as usize + 1;
        let w2 = (n as usize + 1) * w1;
        let mut acc = vec![CycInt8::ZERO; (n as usize + 1) * w2];
        let mut any = false;
        for (ea, ca) in &a {
            if ea.degree() > n {
                break;
            }
            for (eb, cb) in &b {
                if ea.degree() + eb.degree() > n {
                    break;
                }
                let e = *ea + *eb;
                if e.n1 as usize >= w1 {
                    continue;
                }
                acc[e.n0 as usize * w2 + e.n2 as usize * w1 + e.n1 as usize] += *ca * *cb;
                any = true;
            }
        }
        let mut terms = BTreeMap::new();
        if any {
            for (i, c) in acc.into_iter().enumerate() {
                if !c.is_zero() {
                    let n0 = (i / w2) as u32;
                    let n2 = ((i % w2) / w1) as u32;
                    let n1 = (i % w1) as u32;
                    terms.insert(ExpTriple::new(n0, n1, n2), c);
                }
            }
        }
        QSeries { terms, truncation: n }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<QSeries> for QSeries {
            type Output = QSeries;
            fn $f(self, rhs: QSeries) -> QSeries {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $f(self, rhs: &QSeries) -> QSeries {
                (&self).$f(rhs)
            }
        }
        impl $tr<QSeries> for &QSeries {
            type Output = QSeries;
            fn $f(self, rhs: QSeries) -> QSeries {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}
