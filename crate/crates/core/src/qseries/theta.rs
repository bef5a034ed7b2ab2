use crate::chargeom::Char;
use crate::exact_arith::CycInt8;

use super::{ExpTriple, QSeries};

/// `θ[m]` up to `n₀ + n₂ ≤ N`.
///
/// The term of `g ∈ Z²` has `(n₀, n₁, n₂) = (x₁², (x₁ − x₂)², x₂²)` with
/// `xᵢ = 2gᵢ + aᵢ` and coefficient `i^{b₁x₁ + b₂x₂}`.
pub fn theta_qexp(m: Char, n: u32) -> QSeries {
    let [a1, a2] = m.a().map(i64::from);
    let [b1, b2] = m.b().map(i64::from);
    let r = (n as f64).sqrt().floor() as i64 + 1;
    let mut terms = Vec::new();
    for g1 in -r..=r {
        let x1 = 2 * g1 + a1;
        if x1 * x1 > n as i64 {
            continue;
        }
        for g2 in -r..=r {
            let x2 = 2 * g2 + a2;
            if x1 * x1 + x2 * x2 > n as i64 {
                continue;
            }
            let e = ExpTriple::new((x1 * x1) as u32, ((x1 - x2) * (x1 - x2)) as u32, (x2 * x2) as u32);
            terms.push((e, CycInt8::zeta_pow(2 * (b1 * x1 + b2 * x2))));
        }
    }
    QSeries::from_terms(terms, n)
}

/// Orders of `θ[m]` along `q₀, q₁, q₂`: `(a₁, a₁ + a₂ − 2a₁a₂, a₂)`, the minima
/// of `x₁²`, `(x₁ − x₂)²` and `x₂²` over `x ≡ a mod 2`.
pub fn theta_order_formula(m: Char) -> [u32; 3] {
    let [a1, a2] = m.a().map(u32::from);
    [a1, a1 + a2 - 2 * a1 * a2, a2]
}

/// `f_a(Z) = θ[a;0](2Z)` up to `n₀ + n₂ ≤ N`.
pub fn second_kind_qexp(a: [u8; 2], n: u32) -> QSeries {
    let half = theta_qexp(Char::from_ab(a, [0, 0]), n / 2).double_exponents();
    QSeries::from_terms(half.terms().map(|(e, c)| (*e, *c)), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chargeom::{enumerate_even, enumerate_odd};

    fn c(s: &str) -> Char {
        Char::parse(s).unwrap()
    }

    #[test]
    fn constant_term_of_null_characteristic() {
        assert_eq!(theta_qexp(c("0000"), 8).constant_term(), CycInt8::ONE);
    }

    #[test]
    fn leading_term_of_1100() {
        let t = theta_qexp(c("1100"), 8);
        let (e, v) = t.terms().next().unwrap();
        assert_eq!((*e, *v), (ExpTriple::new(1, 0, 1), CycInt8::from_int(2)));
    }

    #[test]
    fn orders_match_formula() {
        for m in enumerate_even() {
            let t = theta_qexp(m, 12);
            let measured: Vec<u32> = (0..3).map(|axis| t.vanishing_order(axis).unwrap()).collect();
            assert_eq!(measured, theta_order_formula(m).to_vec(), "{m}");
        }
        assert_eq!(theta_order_formula(c("1001")), [1, 1, 0]);
    }

    #[test]
    fn odd_thetas_vanish() {
        for m in enumerate_odd() {
            assert!(theta_qexp(m, 16).is_zero(), "{m}");
        }
    }

    #[test]
    fn even_thetas_are_integral_and_semipositive() {
        for m in enumerate_even() {
            let t = theta_qexp(m, 16);
            assert!(!t.is_zero());
            assert!(t.is_rational_integral(), "{m}");
            assert!(t.koecher_check(), "{m}");
        }
    }

    #[test]
    fn second_kind_examples() {
        assert_eq!(second_kind_qexp([0, 0], 8).constant_term(), CycInt8::ONE);
        let f = second_kind_qexp([1, 1], 8);
        let (e, v) = f.terms().next().unwrap();
        assert_eq!((*e, *v), (ExpTriple::new(2, 0, 2), CycInt8::from_int(2)));
        for a in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            let f = second_kind_qexp(a, 12);
            assert_eq!(f.truncation(), 12);
            assert!(f.terms().all(|(e, _)| e.n0 % 2 == 0 && e.n1 % 2 == 0 && e.n2 % 2 == 0));
        }
    }

    #[test]
    fn direct_lattice_oracle() {
        // θ[1100] term by term from h = g + a/2 for |g| ≤ 2.
        let mut expected = std::collections::BTreeMap::new();
        for g1 in -2i64..=2 {
            for g2 in -2i64..=2 {
                let (h1, h2) = (g1 as f64 + 0.5, g2 as f64 + 0.5);
                let n0 = (4.0 * h1 * h1) as u32;
                let n2 = (4.0 * h2 * h2) as u32;
                let n1 = (4.0 * (h1 - h2) * (h1 - h2)) as u32;
                if n0 + n2 <= 8 {
                    *expected.entry(ExpTriple::new(n0, n1, n2)).or_insert(0i64) += 1;
                }
            }
        }
        let t = theta_qexp(c("1100"), 8);
        let got: std::collections::BTreeMap<_, _> = t.terms().map(|(e, v)| (*e, v.as_integer().unwrap())).collect();
        assert_eq!(got, expected);
    }
}
