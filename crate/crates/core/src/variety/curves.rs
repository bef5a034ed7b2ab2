use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exact_arith::linalg;
use crate::exact_arith::mpoly::monomials_of_degree;
use crate::exact_arith::{graded_membership, q, MPoly, Symbol, Q};

use super::group::SignedMonomialMap;
use super::{x_in_y, y_in_x, y_presentation, Presentation};

/// A curve on `X` given by ideal generators and a polynomial parametrization.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRep {
    pub name: String,
    pub names: [Symbol; 6],
    pub ideal: Vec<MPoly>,
    pub params: [MPoly; 6],
}

impl CurveRep {
    fn at_params(&self) -> BTreeMap<Symbol, MPoly> {
        self.names.iter().cloned().zip(self.params.iter().cloned()).collect()
    }

    /// The same curve in `x`-coordinates, for a curve given in `y`-coordinates.
    pub fn to_x(&self) -> Result<CurveRep> {
        let to_x = y_in_x();
        let to_y = x_in_y();
        let ideal = self.ideal.iter().map(|f| f.substitute(&to_x)).collect::<Result<_>>()?;
        let at = self.at_params();
        let x_names: [Symbol; 6] = std::array::from_fn(|i| Symbol::new(&format!("x{i}")));
        let params = x_names
            .iter()
            .map(|s| to_y[s].substitute(&at))
            .collect::<Result<Vec<_>>>()?
            .try_into()
            .expect("six coordinates");
        Ok(CurveRep { name: self.name.clone(), names: x_names, ideal, params })
    }

    /// `g · C`: points `g(p)`, ideal `f ∘ g⁻¹`.
    pub fn image(&self, g: &SignedMonomialMap) -> CurveRep {
        let inv = g.inverse();
        CurveRep {
            name: self.name.clone(),
            names: self.names.clone(),
            ideal: self.ideal.iter().map(|f| inv.pull(f, &self.names)).collect(),
            params: g.apply(&self.params),
        }
    }

    /// Row-reduced basis of the degree-2 part of the ideal, which determines it.
    pub fn key(&self) -> Vec<Vec<Q>> {
        let basis = monomials_of_degree(&self.names, 2);
        let mut rows = Vec::new();
        for f in &self.ideal {
            let multipliers: Vec<MPoly> = match f.homogeneous_degree() {
                Some(1) => self.names.iter().map(MPoly::sym).collect(),
                Some(2) => vec![MPoly::one()],
                _ => continue,
            };
            for m in multipliers {
                let p = f * m;
                rows.push(basis.iter().map(|b| p.coeff(b)).collect::<Vec<Q>>());
            }
        }
        let pivots = linalg::rref(&mut rows);
        rows.truncate(pivots.len());
        rows
    }
}

fn ys() -> Vec<MPoly> {
    y_presentation().vars()
}

/// The two printed representatives in `y`-coordinates.
pub fn representatives() -> [CurveRep; 2] {
    let y = ys();
    let names = y_presentation().names;
    let (t, u, s) = (MPoly::var("t"), MPoly::var("u"), MPoly::var("s"));
    let conic = CurveRep {
        name: "conic".into(),
        names: names.clone(),
        ideal: vec![&y[0] + &y[4], &y[1] + &y[4], &y[3] - &y[4], &y[2] * &y[4] + y[5].pow(2)],
        params: [-t.pow(2), -t.pow(2), -u.pow(2), t.pow(2), t.pow(2), &t * &u],
    };
    let line = CurveRep {
        name: "line".into(),
        names,
        ideal: vec![y[0].clone(), y[2].clone(), y[3].clone(), y[5].clone()],
        params: [MPoly::zero(), s, MPoly::zero(), MPoly::zero(), MPoly::var("t"), MPoly::zero()],
    };
    [conic, line]
}

#[derive(Clone, Debug)]
pub struct CurveReport {
    pub name: String,
    pub parametrization_on_ideal: bool,
    pub equations_in_ideal: bool,
    pub minors_vanish: bool,
    /// First polynomial that failed, if any.
    pub offending: Option<String>,
}

impl CurveReport {
    pub fn passed(&self) -> bool {
        self.parametrization_on_ideal && self.equations_in_ideal && self.minors_vanish
    }
}

/// `2 × 6` Jacobian of `(quartic, quadric)`.
pub fn jacobian_rows(p: &Presentation) -> [Vec<MPoly>; 2] {
    [&p.quartic, &p.quadric].map(|f| p.names.iter().map(|s| f.derivative(s)).collect())
}

/// All fifteen `2 × 2` minors of a `2 × 6` matrix.
pub fn minors(rows: &[Vec<MPoly>; 2]) -> Vec<MPoly> {
    let mut out = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            out.push(&rows[0][i] * &rows[1][j] - &rows[0][j] * &rows[1][i]);
        }
    }
    out
}

pub fn curve_checks(c: &CurveRep, p: &Presentation) -> Result<CurveReport> {
    let mut offending = None;
    let at = c.at_params();
    let mut on_ideal = true;
    for f in &c.ideal {
        let r = f.substitute(&at)?;
        if !r.is_zero() {
            on_ideal = false;
            offending.get_or_insert_with(|| format!("ideal generator {f} gives {r}"));
        }
    }
    let mut contained = true;
    for f in p.equations() {
        if graded_membership(&f, &c.ideal)?.is_none() {
            contained = false;
            offending.get_or_insert_with(|| format!("equation {f} is not in the curve ideal"));
        }
    }
    let mut singular = true;
    for m in minors(&jacobian_rows(p)) {
        let r = m.substitute(&at)?;
        if !r.is_zero() {
            singular = false;
            offending.get_or_insert_with(|| format!("minor {m} gives {r}"));
        }
    }
    Ok(CurveReport {
        name: c.name.clone(),
        parametrization_on_ideal: on_ideal,
        equations_in_ideal: contained,
        minors_vanish: singular,
        offending,
    })
}

/// Rank of the Jacobian at a rational point.
pub fn jacobian_rank_at(p: &Presentation, point: &[Q; 6]) -> Result<usize> {
    let at: BTreeMap<Symbol, Q> = p.names.iter().cloned().zip(point.iter().cloned()).collect();
    let rows = jacobian_rows(p)
        .iter()
        .map(|r| r.iter().map(|f| f.eval(&at)).collect::<Result<Vec<Q>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(linalg::rank(&rows))
}

/// A rational point of `X` off the fifteen curves, in `y`-coordinates.
pub fn smooth_control_point() -> [Q; 6] {
    [0, 1, 1, 1, 1, 0].map(q)
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub curves: Vec<CurveRep>,
    /// Indices into `curves`, one list per orbit, conics first.
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitReport {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

/// The curves generated from the representatives by `generating`, split into `acting`-orbits.
pub fn orbit_report(generating: &[SignedMonomialMap], acting: &[SignedMonomialMap]) -> Result<OrbitReport> {
    let curves = all_curves(generating)?;
    let orbits = curve_orbits(acting, &curves)?;
    Ok(OrbitReport { curves, orbits })
}

/// The distinct images of the representatives under a group, in `x`-coordinates.
pub fn all_curves(group: &[SignedMonomialMap]) -> Result<Vec<CurveRep>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for rep in representatives() {
        let rep = rep.to_x()?;
        for g in group {
            let img = rep.image(g);
            if seen.insert(img.key()) {
                let name = format!("{}_{}", rep.name, out.len());
                out.push(CurveRep { name, ..img });
            }
        }
    }
    Ok(out)
}

/// Orbit decomposition of `curves` under `group`; every image must be in the list.
pub fn curve_orbits(group: &[SignedMonomialMap], curves: &[CurveRep]) -> Result<Vec<Vec<usize>>> {
    let index: BTreeMap<Vec<Vec<Q>>, usize> = curves.iter().enumerate().map(|(i, c)| (c.key(), i)).collect();
    let mut orbit_of = vec![None; curves.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..curves.len() {
        if orbit_of[start].is_some() {
            continue;
        }
        let mut orbit = Vec::new();
        for g in group {
            let j = *index.get(&curves[start].image(g).key()).ok_or(Error::UnknownCurve)?;
            if orbit_of[j].is_none() {
                orbit_of[j] = Some(orbits.len());
                orbit.push(j);
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::group::{group_closure, omega_stabilizer, symmetry_generators};
    use crate::variety::x_presentation;
    use num_traits::Zero;

    #[test]
    fn representatives_pass() {
        let py = y_presentation();
        for c in representatives() {
            let r = curve_checks(&c, &py).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn curve_off_x_fails() {
        // the quadric restricts to y₃y₄ on (y₀, y₁, y₂, y₅)
        let y = ys();
        let c = CurveRep {
            name: "off".into(),
            names: y_presentation().names,
            ideal: vec![y[0].clone(), y[1].clone(), y[2].clone(), y[5].clone()],
            params: [MPoly::zero(), MPoly::zero(), MPoly::zero(), MPoly::var("s"), MPoly::var("t"), MPoly::zero()],
        };
        let r = curve_checks(&c, &y_presentation()).unwrap();
        assert!(r.parametrization_on_ideal);
        assert!(!r.equations_in_ideal);
        assert!(!r.passed());
        assert!(r.offending.is_some());
    }

    #[test]
    fn smooth_control() {
        let py = y_presentation();
        let p = smooth_control_point();
        assert!(py.contains(&p).unwrap());
        assert_eq!(jacobian_rank_at(&py, &p).unwrap(), 2);
        let at: BTreeMap<Symbol, Q> = py.names.iter().cloned().zip(p.iter().cloned()).collect();
        for c in representatives() {
            assert!(c.ideal.iter().any(|f| !f.eval(&at).unwrap().is_zero()));
        }
        // a point on the line is singular
        assert_eq!(jacobian_rank_at(&py, &[0, 2, 0, 0, 3, 0].map(q)).unwrap(), 1);
    }

    #[test]
    fn transport_preserves_checks() {
        let px = x_presentation();
        for c in representatives() {
            let r = curve_checks(&c.to_x().unwrap(), &px).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn fifteen_curves_in_orbits_3_and_12() {
        let group = group_closure(&symmetry_generators()).unwrap();
        let curves = all_curves(&group).unwrap();
        assert_eq!(curves.len(), 15);
        let orbits = curve_orbits(&group, &curves).unwrap();
        let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 12]);
        // the first orbit holds the conics
        assert!(orbits[0].iter().all(|&i| curves[i].name.starts_with("conic")));
        let px = x_presentation();
        for c in &curves {
            assert!(curve_checks(c, &px).unwrap().passed(), "{}", c.name);
        }
    }

    #[test]
    fn stabilizer_orbits() {
        let group = group_closure(&symmetry_generators()).unwrap();
        let curves = all_curves(&group).unwrap();
        let stab = omega_stabilizer(&x_presentation()).unwrap().stabilizer;
        let mut sizes: Vec<usize> = curve_orbits(&stab, &curves).unwrap().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 12]);
    }

    #[test]
    fn foreign_image_is_reported() {
        let group = group_closure(&symmetry_generators()).unwrap();
        let curves = all_curves(&group).unwrap();
        let swap = [SignedMonomialMap::swap(0, 4)];
        assert_eq!(curve_orbits(&swap, &curves).unwrap_err(), Error::UnknownCurve);
    }
}
