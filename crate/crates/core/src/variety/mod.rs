//! The threefold `X ⊂ P⁵` in two coordinate systems, its symmetries, its
//! singular curves, the Calabi-Yau form and a handful of symbolic identities.

pub mod blowup;
pub mod curves;
pub mod group;
pub mod identities;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Result;
use crate::exact_arith::linalg;
use crate::exact_arith::{graded_membership, q, Certificate, MPoly, Symbol, Q};

pub use blowup::{blowup_chart_check, BlowupChart, BlowupReport};
pub use curves::{curve_checks, curve_orbits, orbit_report, representatives, CurveRep, CurveReport, OrbitReport};
pub use group::{
    equation_invariance, group_closure, omega_pullback_sign, omega_stabilizer, symmetry_generators, SignedMonomialMap,
    StabilizerReport,
};
pub use identities::{
    homogeneous_jacobian_identity, homogeneous_jacobian_sign, jacobian_identity_check, omega_chain_check,
    OmegaChainReport,
};

/// Two defining equations of `X`, written as `quartic = 0` and `quadric = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub names: [Symbol; 6],
    pub quartic: MPoly,
    pub quadric: MPoly,
}

impl Presentation {
    pub fn vars(&self) -> Vec<MPoly> {
        self.names.iter().map(MPoly::sym).collect()
    }

    pub fn equations(&self) -> [MPoly; 2] {
        [self.quartic.clone(), self.quadric.clone()]
    }

    /// Both equations vanish at the rational point.
    pub fn contains(&self, point: &[Q; 6]) -> Result<bool> {
        let at: BTreeMap<Symbol, Q> = self.names.iter().cloned().zip(point.iter().cloned()).collect();
        Ok(self.quartic.eval(&at)?.is_zero() && self.quadric.eval(&at)?.is_zero())
    }
}

fn names(prefix: &str) -> [Symbol; 6] {
    std::array::from_fn(|i| Symbol::new(&format!("{prefix}{i}")))
}

pub fn y_presentation() -> Presentation {
    let names = names("y");
    let y: Vec<MPoly> = names.iter().map(MPoly::sym).collect();
    let sum = y[..5].iter().fold(MPoly::zero(), |a, b| a + b);
    let quartic = y[5].pow(4) - &y[0] * &y[1] * &y[2] * sum;
    let quadric = 2 * y[5].pow(2) - (&y[0] * &y[1] + &y[0] * &y[2] + &y[1] * &y[2] - &y[3] * &y[4]);
    Presentation { names, quartic, quadric }
}

pub fn x_presentation() -> Presentation {
    let names = names("x");
    let x: Vec<MPoly> = names.iter().map(MPoly::sym).collect();
    let sq: Vec<MPoly> = x.iter().map(|v| v.pow(2)).collect();
    let lhs = 16 * x[4].pow(4) + &sq[0] * &sq[4] + &sq[1] * &sq[2] + &sq[1] * &sq[3] + &sq[2] * &sq[3];
    let rhs = &x[0] * &x[1] * &x[2] * &x[3] + 4 * &sq[4] * (&sq[1] + &sq[2] + &sq[3]);
    let quadric = sq[5].clone() - (sq[0].clone() - 4 * &sq[1] - 4 * &sq[2] - 4 * &sq[3] + 32 * &sq[4]);
    Presentation { names, quartic: lhs - rhs, quadric }
}

/// `(y₀..y₄) = M (x₀..x₄)` and `y₅ = x₅`.
pub const COORDINATE_MATRIX: [[i64; 5]; 5] =
    [[1, -2, -2, 2, 0], [1, -2, 2, -2, 0], [1, 2, 2, 2, 0], [-1, 2, -2, -2, -8], [-1, 2, -2, -2, 8]];

pub fn presentations() -> (Presentation, Presentation, [[i64; 5]; 5]) {
    (y_presentation(), x_presentation(), COORDINATE_MATRIX)
}

fn matrix_q(m: &[[i64; 5]; 5]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&a| q(a)).collect()).collect()
}

pub fn coordinate_determinant() -> Q {
    linalg::det(&matrix_q(&COORDINATE_MATRIX))
}

/// The linear substitution `target ↦ m · source` with the sixth coordinate fixed.
pub fn linear_substitution(m: &[Vec<Q>], target: &[Symbol; 6], source: &[Symbol; 6]) -> BTreeMap<Symbol, MPoly> {
    let mut out = BTreeMap::new();
    for (i, t) in target.iter().enumerate().take(5) {
        let mut p = MPoly::zero();
        for (j, s) in source.iter().enumerate().take(5) {
            if !m[i][j].is_zero() {
                p = p + MPoly::sym(s).scale(&m[i][j]);
            }
        }
        out.insert(t.clone(), p);
    }
    out.insert(target[5].clone(), MPoly::sym(&source[5]));
    out
}

/// `y = M x` as a substitution for the `y` variables.
pub fn y_in_x() -> BTreeMap<Symbol, MPoly> {
    linear_substitution(&matrix_q(&COORDINATE_MATRIX), &names("y"), &names("x"))
}

/// `x = M⁻¹ y` as a substitution for the `x` variables.
pub fn x_in_y() -> BTreeMap<Symbol, MPoly> {
    let inv = linalg::inverse(&matrix_q(&COORDINATE_MATRIX)).expect("determinant is nonzero");
    linear_substitution(&inv, &names("x"), &names("y"))
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub label: &'static str,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug)]
pub struct CoordinateChangeReport {
    pub determinant: Q,
    /// `q` with `y-quadric(Mx) = q · x-quadric`, if such a scalar exists.
    pub quadric_scalar: Option<Q>,
    pub memberships: Vec<Membership>,
}

impl CoordinateChangeReport {
    pub fn passed(&self) -> bool {
        !self.determinant.is_zero()
            && self.quadric_scalar.as_ref().is_some_and(|c| !c.is_zero())
            && self.memberships.iter().all(|m| m.certificate.is_some())
    }
}

/// `p = c · base` for a rational `c`.
pub fn scalar_multiple(p: &MPoly, base: &MPoly) -> Option<Q> {
    let (m, c0) = base.terms().next()?;
    let c = p.coeff(m) / c0;
    (base.scale(&c) == *p).then_some(c)
}

pub fn coordinate_change_check() -> Result<CoordinateChangeReport> {
    let (py, px, _) = presentations();
    let to_x = y_in_x();
    let to_y = x_in_y();
    let y_quartic = py.quartic.substitute(&to_x)?;
    let y_quadric = py.quadric.substitute(&to_x)?;
    let x_quartic = px.quartic.substitute(&to_y)?;
    let x_quadric = px.quadric.substitute(&to_y)?;
    let xs = px.equations();
    let ys = py.equations();
    let memberships = vec![
        Membership { label: "y-quartic in x-ideal", certificate: graded_membership(&y_quartic, &xs)? },
        Membership { label: "y-quadric in x-ideal", certificate: graded_membership(&y_quadric, &xs)? },
        Membership { label: "x-quartic in y-ideal", certificate: graded_membership(&x_quartic, &ys)? },
        Membership { label: "x-quadric in y-ideal", certificate: graded_membership(&x_quadric, &ys)? },
    ];
    Ok(CoordinateChangeReport {
        determinant: coordinate_determinant(),
        quadric_scalar: scalar_multiple(&y_quadric, &px.quadric),
        memberships,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: [i64; 6]) -> [Q; 6] {
        v.map(q)
    }

    #[test]
    fn sample_points() {
        let (py, px, _) = presentations();
        assert!(px.contains(&pt([1, 0, 0, 0, 0, 1])).unwrap());
        assert!(py.contains(&pt([0, 1, 0, 0, 1, 0])).unwrap());
        assert!(!py.contains(&pt([1, 1, 1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn degrees() {
        for p in [y_presentation(), x_presentation()] {
            assert_eq!(p.quartic.homogeneous_degree(), Some(4));
            assert_eq!(p.quadric.homogeneous_degree(), Some(2));
        }
    }

    #[test]
    fn determinant() {
        assert_eq!(coordinate_determinant(), q(1024));
    }

    #[test]
    fn substitutions_are_inverse() {
        let to_x = y_in_x();
        let to_y = x_in_y();
        for (s, p) in &to_x {
            assert_eq!(p.substitute(&to_y).unwrap(), MPoly::sym(s));
        }
    }

    #[test]
    fn coordinate_change() {
        let r = coordinate_change_check().unwrap();
        assert!(r.passed(), "{r:?}");
        // the x₅² coefficient is 2 on the y side and 1 on the x side
        assert_eq!(r.quadric_scalar, Some(q(2)));
        let px = x_presentation();
        let c = r.memberships[0].certificate.as_ref().unwrap();
        let lhs = y_presentation().quartic.substitute(&y_in_x()).unwrap();
        assert_eq!(c.expand(&px.equations()), lhs);
        assert_eq!(c.multipliers[0], MPoly::int(64));
    }
}
