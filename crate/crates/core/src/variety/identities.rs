use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exact_arith::ratfn::det;
use crate::exact_arith::{q, rational_jacobian, MPoly, RatFn, Symbol, Q};

fn r(p: MPoly) -> RatFn {
    RatFn::from_poly(p)
}

fn g_syms() -> [Symbol; 3] {
    ["g1", "g2", "g3"].map(Symbol::new)
}

/// `(G₁, G₂, G₃)` as rational functions of `g₁, g₂, g₃`.
pub fn g_map() -> [RatFn; 3] {
    let g = g_syms().map(|s| r(MPoly::sym(&s)));
    let term = |a: &RatFn, b: &RatFn, c: &RatFn| {
        let ab = a * b;
        &ab.div(c).expect("nonzero") + &c.div(&ab).expect("nonzero")
    };
    [term(&g[0], &g[1], &g[2]), term(&g[0], &g[2], &g[1]), term(&g[1], &g[2], &g[0])]
}

/// `c (g₃²−g₁²g₂²)(g₂²−g₁²g₃²)(g₁²−g₂²g₃²) / (g₁⁴g₂⁴g₃⁴)`.
pub fn printed_jacobian(c: i64) -> RatFn {
    let g = g_syms().map(|s| MPoly::sym(&s));
    let sq = g.clone().map(|x| x.pow(2));
    let num = c * (&sq[2] - &sq[0] * &sq[1]) * (&sq[1] - &sq[0] * &sq[2]) * (&sq[0] - &sq[1] * &sq[2]);
    let den = (&g[0] * &g[1] * &g[2]).pow(4);
    RatFn::new(num, den).expect("nonzero denominator")
}

pub fn jacobian_matches(c: i64) -> bool {
    rational_jacobian(&g_map(), &g_syms()) == printed_jacobian(c)
}

/// The Jacobian of `(G₁, G₂, G₃)` equals the closed form with factor 4.
pub fn jacobian_identity_check() -> bool {
    jacobian_matches(4)
}

fn f_sym(j: usize) -> Symbol {
    Symbol::new(&format!("f{j}"))
}

fn d_sym(i: usize, j: usize) -> Symbol {
    Symbol::new(&format!("d{i}f{j}"))
}

/// `W(f₁..f₄)` and `f₄⁴ J(f₁/f₄, f₂/f₄, f₃/f₄)` with the values and the
/// partials `∂ᵢf_j` as sixteen independent symbols.
pub fn homogeneous_jacobian_sides() -> (RatFn, RatFn) {
    let f = |j| MPoly::sym(&f_sym(j));
    let d = |i, j| MPoly::sym(&d_sym(i, j));
    let mut w = vec![(1..=4).map(|j| r(f(j))).collect::<Vec<_>>()];
    for i in 0..3 {
        w.push((1..=4).map(|j| r(d(i, j))).collect());
    }
    let f4_sq = f(4).pow(2);
    let quotient_rule = |i, j| RatFn::new(d(i, j) * f(4) - f(j) * d(i, 4), f4_sq.clone()).expect("nonzero");
    let jm: Vec<Vec<RatFn>> = (0..3).map(|i| (1..=3).map(|j| quotient_rule(i, j)).collect()).collect();
    (det(&w), &r(f(4).pow(4)) * &det(&jm))
}

/// `s` with `W = s · f₄⁴ J` as rational functions, if `s = ±1` works.
pub fn homogeneous_jacobian_sign() -> Option<i64> {
    let (w, j) = homogeneous_jacobian_sides();
    if w == j {
        Some(1)
    } else if w == -&j {
        Some(-1)
    } else {
        None
    }
}

/// `W = f₄⁴ J` exactly as displayed, with the row of values first.
pub fn homogeneous_jacobian_identity() -> bool {
    homogeneous_jacobian_sign() == Some(1)
}

/// The sign `W / (f₄⁴ J)` measured at `n` seeded integer points with `f₄ ≠ 0`;
/// `None` if the ratio is not one fixed sign.
pub fn homogeneous_jacobian_evaluations(seed: u64, n: usize) -> Result<Option<i64>> {
    let (w, j) = homogeneous_jacobian_sides();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sign = None;
    for _ in 0..n {
        let mut at: BTreeMap<Symbol, Q> = BTreeMap::new();
        for k in 1..=4 {
            at.insert(f_sym(k), q(rng.gen_range(-9..=9)));
            for i in 0..3 {
                at.insert(d_sym(i, k), q(rng.gen_range(-9..=9)));
            }
        }
        at.insert(f_sym(4), q(rng.gen_range(1..=9)));
        let (a, b) = (w.eval(&at)?, j.eval(&at)?);
        if b.is_zero() {
            if !a.is_zero() {
                return Ok(None);
            }
            continue;
        }
        let s = if a == b {
            1
        } else if a == -b {
            -1
        } else {
            return Ok(None);
        };
        if *sign.get_or_insert(s) != s {
            return Ok(None);
        }
    }
    Ok(sign)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OmegaChainReport {
    /// `G_i = F_{i+1}/F₅` agrees with the printed expression in `gᵢ = fᵢ/f₄`.
    pub g_expressions_match: bool,
    /// The `g`- and `f`-forms of the Jacobian agree.
    pub jacobian_forms_agree: bool,
    /// `s` with `Π(f²f² − f²f²) = s · (F₂F₃F₄ − 2F₁F₅²)`, if such a sign exists.
    pub denominator_sign: Option<i64>,
}

fn runge_in_f() -> [MPoly; 5] {
    let f: Vec<MPoly> = (1..=4).map(|j| MPoly::sym(&f_sym(j))).collect();
    let sq: Vec<MPoly> = f.iter().map(|x| x.pow(2)).collect();
    [
        f.iter().map(|x| x.pow(4)).fold(MPoly::zero(), |a, b| a + b),
        &sq[0] * &sq[1] + &sq[2] * &sq[3],
        &sq[0] * &sq[2] + &sq[1] * &sq[3],
        &sq[0] * &sq[3] + &sq[1] * &sq[2],
        &f[0] * &f[1] * &f[2] * &f[3],
    ]
}

/// The steps turning `f₄⁴/Θ d(f₁/f₄)∧d(f₂/f₄)∧d(f₃/f₄)` into the closed form in `F₁..F₆`.
pub fn omega_chain_check() -> OmegaChainReport {
    let big = runge_in_f();
    let f = |j| MPoly::sym(&f_sym(j));
    let to_f: BTreeMap<Symbol, RatFn> =
        g_syms().into_iter().enumerate().map(|(i, s)| (s, RatFn::new(f(i + 1), f(4)).expect("nonzero"))).collect();
    let g_in_f: Vec<RatFn> = g_map().iter().map(|e| e.substitute(&to_f).expect("all assigned")).collect();
    let g_expressions_match =
        (0..3).all(|i| g_in_f[i] == RatFn::new(big[i + 1].clone(), big[4].clone()).expect("nonzero"));

    let sq: Vec<MPoly> = (1..=4).map(|j| f(j).pow(2)).collect();
    let prod =
        (&sq[0] * &sq[1] - &sq[2] * &sq[3]) * (&sq[0] * &sq[2] - &sq[1] * &sq[3]) * (&sq[0] * &sq[3] - &sq[1] * &sq[2]);
    let f_form = RatFn::new(4 * &prod, (f(1) * f(2) * f(3)).pow(4)).expect("nonzero");
    let jacobian_forms_agree = printed_jacobian(4).substitute(&to_f).expect("all assigned") == f_form;

    let closed = &big[1] * &big[2] * &big[3] - 2 * &big[0] * big[4].pow(2);
    let denominator_sign = if prod == closed {
        Some(1)
    } else if prod == -&closed {
        Some(-1)
    } else {
        None
    };
    OmegaChainReport { g_expressions_match, jacobian_forms_agree, denominator_sign }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_map_jacobian() {
        assert!(jacobian_identity_check());
        assert!(!jacobian_matches(1));
        assert!(!jacobian_matches(-4));
    }

    #[test]
    fn both_sides_vanish_at_ones() {
        let at: BTreeMap<Symbol, Q> = g_syms().into_iter().map(|s| (s, q(1))).collect();
        assert_eq!(printed_jacobian(4).eval(&at).unwrap(), q(0));
        assert_eq!(rational_jacobian(&g_map(), &g_syms()).eval(&at).unwrap(), q(0));
    }

    #[test]
    fn homogeneous_identity_holds_up_to_sign() {
        // with the values in the first row, the f₄ cofactor carries (−1)³
        assert_eq!(homogeneous_jacobian_sign(), Some(-1));
        assert!(!homogeneous_jacobian_identity());
        assert_eq!(homogeneous_jacobian_evaluations(0, 20).unwrap(), Some(-1));
    }

    #[test]
    fn homogeneous_identity_at_unit_f4() {
        // f₄ = 1 and ∂f₄ = 0 reduce W to the plain 3×3 Jacobian of f₁, f₂, f₃
        let (w, _) = homogeneous_jacobian_sides();
        let mut sub: BTreeMap<Symbol, RatFn> = BTreeMap::new();
        for s in w.variables() {
            sub.insert(s.clone(), RatFn::from_poly(MPoly::sym(&s)));
        }
        sub.insert(f_sym(4), RatFn::one());
        for i in 0..3 {
            sub.insert(d_sym(i, 4), RatFn::zero());
        }
        let reduced = w.substitute(&sub).unwrap();
        let plain: Vec<Vec<RatFn>> = (0..3).map(|i| (1..=3).map(|j| r(MPoly::sym(&d_sym(i, j)))).collect()).collect();
        // the bordered expansion picks up (−1)³ from moving the f₄ column first
        assert_eq!(reduced, -&det(&plain));
    }

    #[test]
    fn omega_chain() {
        let rep = omega_chain_check();
        assert!(rep.g_expressions_match);
        assert!(rep.jacobian_forms_agree);
        assert_eq!(rep.denominator_sign, Some(-1));
    }
}
