use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// An element `c0 + c1·ζ + c2·ζ² + c3·ζ³` of `Z[ζ]`, `ζ = e^{2πi/8}`.
///
/// The basis `1, ζ, ζ², ζ³` is reduced with `ζ⁴ = −1`, so equality of values
/// is equality of the four coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt8(pub [i64; 4]);

impl CycInt8 {
    pub const ZERO: CycInt8 = CycInt8([0; 4]);
    pub const ONE: CycInt8 = CycInt8([1, 0, 0, 0]);

    pub fn from_int(c: i64) -> Self {
        CycInt8([c, 0, 0, 0])
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        CycInt8(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// The integer value, when the element lies in `Z`.
    pub fn as_integer(&self) -> Option<i64> {
        (self.0[1] == 0 && self.0[2] == 0 && self.0[3] == 0).then_some(self.0[0])
    }

    pub fn scale(&self, k: i64) -> Self {
        CycInt8(self.0.map(|c| c * k))
    }

    /// Multiplication by `ζ^k`, a signed rotation of the coordinates.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut out = [0i64; 4];
        for (i, &c) in self.0.iter().enumerate() {
            let e = i + k;
            let (slot, sign) = ((e % 4), if (e / 4) % 2 == 0 { 1 } else { -1 });
            out[slot] += sign * c;
        }
        CycInt8(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = *self;
        let mut acc = CycInt8::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Complex value as `(re, im)` in double precision.
    pub fn to_complex(&self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [c0, c1, c2, c3] = self.0.map(|c| c as f64);
        (c0 + h * (c1 - c3), c2 + h * (c1 + c3))
    }
}

impl Add for CycInt8 {
    type Output = CycInt8;
    fn add(self, rhs: CycInt8) -> CycInt8 {
        CycInt8([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2], self.0[3] + rhs.0[3]])
    }
}

impl AddAssign for CycInt8 {
    fn add_assign(&mut self, rhs: CycInt8) {
        *self = *self + rhs;
    }
}

impl Sub for CycInt8 {
    type Output = CycInt8;
    fn sub(self, rhs: CycInt8) -> CycInt8 {
        self + (-rhs)
    }
}

impl SubAssign for CycInt8 {
    fn sub_assign(&mut self, rhs: CycInt8) {
        *self = *self - rhs;
    }
}

impl Neg for CycInt8 {
    type Output = CycInt8;
    fn neg(self) -> CycInt8 {
        CycInt8(self.0.map(|c| -c))
    }
}

impl Mul for CycInt8 {
    type Output = CycInt8;
    fn mul(self, rhs: CycInt8) -> CycInt8 {
        let a = self.0;
        let b = rhs.0;
        let mut out = [0i64; 4];
        for i in 0..4 {
            if a[i] == 0 {
                continue;
            }
            for j in 0..4 {
                let p = a[i] * b[j];
                if i + j < 4 {
                    out[i + j] += p;
                } else {
                    out[i + j - 4] -= p;
                }
            }
        }
        CycInt8(out)
    }
}

impl fmt::Display for CycInt8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let names = ["", "ζ", "ζ^2", "ζ^3"];
        let mut first = true;
        for (c, name) in self.0.iter().zip(names) {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if *c < 0 { " - " } else { " + " })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            match (a, name) {
                (_, "") => write!(f, "{a}")?,
                (1, _) => write!(f, "{name}")?,
                _ => write!(f, "{a}{name}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta() -> CycInt8 {
        CycInt8([0, 1, 0, 0])
    }

    #[test]
    fn zeta_times_zeta_cubed_is_minus_one() {
        assert_eq!(zeta() * CycInt8([0, 0, 0, 1]), CycInt8::from_int(-1));
    }

    #[test]
    fn one_plus_i_times_one_minus_i() {
        let a = CycInt8([1, 0, 1, 0]);
        let b = CycInt8([1, 0, -1, 0]);
        assert_eq!(a * b, CycInt8::from_int(2));
    }

    #[test]
    fn zeta_has_order_eight() {
        let mut z = zeta();
        for _ in 0..3 {
            z = z * z;
        }
        assert_eq!(z, CycInt8::ONE);
        assert_eq!(zeta().pow(4), CycInt8::from_int(-1));
        for k in -16..16 {
            assert_eq!(CycInt8::zeta_pow(k), zeta().pow(k.rem_euclid(8) as u32));
            assert_eq!(CycInt8::ONE.mul_zeta_pow(k), CycInt8::zeta_pow(k));
        }
    }

    #[test]
    fn complex_embedding() {
        let (re, im) = CycInt8::zeta_pow(1).to_complex();
        assert!((re - im).abs() < 1e-15 && (re * re + im * im - 1.0).abs() < 1e-15);
        assert_eq!(CycInt8::zeta_pow(2).to_complex(), (0.0, 1.0));
    }

    fn small() -> impl Strategy<Value = CycInt8> {
        prop::array::uniform4(-20i64..20).prop_map(CycInt8)
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 100, rng_seed: proptest::test_runner::RngSeed::Fixed(8), ..ProptestConfig::default() })]
        #[test]
        fn ring_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a - a, CycInt8::ZERO);
        }

        #[test]
        fn zeta_rotation_matches_product(a in small(), k in -20i64..20) {
            prop_assert_eq!(a.mul_zeta_pow(k), a * CycInt8::zeta_pow(k));
        }
    }
}
