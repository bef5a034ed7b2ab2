use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

use crate::exact_arith::CycInt8;

/// Mantissa bits of every intermediate value.
pub const PRECISION: usize = 128;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocates"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

pub fn real(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PRECISION)
}

pub fn pi() -> BigFloat {
    with_consts(|cc| cc.pi(PRECISION, RM))
}

/// Nearest `f64`, truncating the mantissa to its leading word.
pub fn to_f64(x: &BigFloat) -> f64 {
    match x.as_raw_parts() {
        Some((words, _, sign, exp, _)) => {
            let Some(&top) = words.last() else { return 0.0 };
            let e = exp as i32 - 64;
            let mag = if e < -1000 {
                (top as f64) * 2f64.powi(-1000) * 2f64.powi(e + 1000)
            } else {
                (top as f64) * 2f64.powi(e)
            };
            if sign == Sign::Neg {
                -mag
            } else {
                mag
            }
        }
        None => f64::NAN,
    }
}

/// A complex number with `PRECISION`-bit real and imaginary parts.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Complex { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Complex::new(real(re), real(im))
    }

    pub fn zero() -> Self {
        Complex::from_f64(0.0, 0.0)
    }

    pub fn one() -> Self {
        Complex::from_f64(1.0, 0.0)
    }

    pub fn i() -> Self {
        Complex::from_f64(0.0, 1.0)
    }

    /// The value of an element of `Z[ζ₈]`.
    pub fn from_cyc(c: &CycInt8) -> Self {
        let h = real(0.5).sqrt(PRECISION, RM);
        let zeta = Complex::new(h.clone(), h);
        let mut out = Complex::zero();
        let mut p = Complex::one();
        for &k in &c.0 {
            if k != 0 {
                out = &out + &p.scale(&real(k as f64));
            }
            p = &p * &zeta;
        }
        out
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        Complex::new(self.re.mul(k, PRECISION, RM), self.im.mul(k, PRECISION, RM))
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), self.im.clone().neg())
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let a = self.re.mul(&self.re, PRECISION, RM);
        let b = self.im.mul(&self.im, PRECISION, RM);
        a.add(&b, PRECISION, RM)
    }

    pub fn abs(&self) -> f64 {
        to_f64(&self.norm_sqr().sqrt(PRECISION, RM))
    }

    /// `i^k · self`, exact.
    pub fn mul_i_pow(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => Complex::new(self.im.clone().neg(), self.re.clone()),
            2 => -self,
            _ => Complex::new(self.im.clone(), self.re.clone().neg()),
        }
    }

    pub fn exp(&self) -> Self {
        with_consts(|cc| {
            let r = self.re.exp(PRECISION, RM, cc);
            let c = self.im.cos(PRECISION, RM, cc);
            let s = self.im.sin(PRECISION, RM, cc);
            Complex::new(r.mul(&c, PRECISION, RM), r.mul(&s, PRECISION, RM))
        })
    }

    /// `e^{π i · self}`.
    pub fn exp_pi_i(&self) -> Self {
        Complex::i().scale(&pi()).mul(self).exp()
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let c = self.conj();
        Complex::new(c.re.div(&n, PRECISION, RM), c.im.div(&n, PRECISION, RM))
    }

    pub fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Complex::one();
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

    /// `|self − other|`.
    pub fn distance(&self, other: &Complex) -> f64 {
        (self - other).abs()
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        Complex::new(self.re.add(&o.re, PRECISION, RM), self.im.add(&o.im, PRECISION, RM))
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        Complex::new(self.re.sub(&o.re, PRECISION, RM), self.im.sub(&o.im, PRECISION, RM))
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        let ac = self.re.mul(&o.re, PRECISION, RM);
        let bd = self.im.mul(&o.im, PRECISION, RM);
        let ad = self.re.mul(&o.im, PRECISION, RM);
        let bc = self.im.mul(&o.re, PRECISION, RM);
        Complex::new(ac.sub(&bd, PRECISION, RM), ad.add(&bc, PRECISION, RM))
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, o: &Complex) -> Complex {
        self * &o.recip()
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(self.re.clone().neg(), self.im.clone().neg())
    }
}

impl Complex {
    pub fn mul(&self, o: &Complex) -> Complex {
        self * o
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "{re:.12e}{im:+.12e}i")
    }
}
