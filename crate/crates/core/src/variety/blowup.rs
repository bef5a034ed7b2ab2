use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exact_arith::{MPoly, RatFn, Symbol, ThreeForm};

/// An affine chart of a blow-up of `C³`, with the local group acting by sign changes.
#[derive(Clone, Debug)]
pub struct BlowupChart {
    pub name: &'static str,
    /// `z₁, z₂, z₃` as rational functions of the chart coordinates.
    pub map: BTreeMap<Symbol, RatFn>,
    /// Chart coordinates as rational functions of `z`.
    pub coordinates: [(Symbol, RatFn); 3],
    /// Expected coefficient of the pulled-back `dz₁∧dz₂∧dz₃`.
    pub expected_coeff: MPoly,
    /// The group on `z` and its expected action on the chart, as sign vectors.
    pub group: Vec<[i8; 3]>,
    pub expected_action: Vec<[i8; 3]>,
}

fn z(i: usize) -> Symbol {
    Symbol::new(&format!("z{i}"))
}

fn zp(i: usize) -> MPoly {
    MPoly::sym(&z(i))
}

fn rf(p: MPoly) -> RatFn {
    RatFn::from_poly(p)
}

/// Case 1: blow up `z₁ = z₂ = 0`, chart `w₁ = z₁/z₂`; the group is `±(z₁, z₂)`.
pub fn case1() -> BlowupChart {
    let w1 = Symbol::new("w1");
    let map = BTreeMap::from([(z(1), rf(MPoly::sym(&w1) * zp(2))), (z(2), rf(zp(2))), (z(3), rf(zp(3)))]);
    BlowupChart {
        name: "case_1",
        map,
        coordinates: [(w1, RatFn::new(zp(1), zp(2)).expect("nonzero")), (z(2), rf(zp(2))), (z(3), rf(zp(3)))],
        expected_coeff: zp(2),
        group: vec![[1, 1, 1], [-1, -1, 1]],
        expected_action: vec![[1, -1, 1], [1, 1, 1]],
    }
}

/// Case 3: two blow-ups, chart `u₁ = z₁/(z₂z₃)`; the group is the even sign changes.
pub fn case3() -> BlowupChart {
    let u1 = Symbol::new("u1");
    let map = BTreeMap::from([(z(1), rf(MPoly::sym(&u1) * zp(2) * zp(3))), (z(2), rf(zp(2))), (z(3), rf(zp(3)))]);
    BlowupChart {
        name: "case_3",
        map,
        coordinates: [(u1, RatFn::new(zp(1), zp(2) * zp(3)).expect("nonzero")), (z(2), rf(zp(2))), (z(3), rf(zp(3)))],
        expected_coeff: zp(2) * zp(3),
        group: vec![[1, 1, 1], [-1, -1, 1], [-1, 1, -1], [1, -1, -1]],
        expected_action: vec![[1, -1, -1], [1, -1, 1], [1, 1, -1], [1, 1, 1]],
    }
}

#[derive(Clone, Debug)]
pub struct BlowupReport {
    pub name: &'static str,
    pub pulled_back: ThreeForm,
    pub form_matches: bool,
    /// Coefficient minus the expected one, zero on success.
    pub difference: RatFn,
    /// Chart coordinates along which the pulled-back form vanishes.
    pub zero_divisors: Vec<Symbol>,
    /// Induced sign changes on the chart coordinates, sorted.
    pub induced_action: Vec<[i8; 3]>,
    pub action_matches: bool,
}

impl BlowupReport {
    pub fn passed(&self) -> bool {
        self.form_matches && self.action_matches
    }
}

/// Sign `s` with `f = s · x`, if any.
fn signed_coordinate(f: &RatFn, x: &Symbol) -> Option<i8> {
    let x = rf(MPoly::sym(x));
    if *f == x {
        Some(1)
    } else if *f == -&x {
        Some(-1)
    } else {
        None
    }
}

pub fn blowup_chart_check(chart: &BlowupChart) -> Result<BlowupReport> {
    let source = vec![z(1), z(2), z(3)];
    let target: Vec<Symbol> = chart.coordinates.iter().map(|(s, _)| s.clone()).collect();
    let wedge: [Symbol; 3] = std::array::from_fn(|i| target[i].clone());
    let volume = ThreeForm::new(source.clone(), RatFn::one(), [z(1), z(2), z(3)])?;
    let back = volume.pullback(&chart.map, &target, wedge.clone())?;
    let expected = ThreeForm::new(target.clone(), rf(chart.expected_coeff.clone()), wedge)?;
    let difference = back.form.coeff() - expected.coeff();
    let form_matches = back.form == expected;
    let zero_divisors = back
        .form
        .coeff()
        .as_poly()
        .map(|p| p.monomial_content().powers().iter().map(|(s, _)| s.clone()).collect())
        .unwrap_or_default();

    let mut induced = BTreeSet::new();
    for signs in &chart.group {
        let act: BTreeMap<Symbol, RatFn> = (0..3).map(|i| (z(i + 1), rf(zp(i + 1) * i64::from(signs[i])))).collect();
        let mut out = [0i8; 3];
        for (k, (x, coord)) in chart.coordinates.iter().enumerate() {
            let moved = coord.substitute(&act)?.substitute(&chart.map)?;
            out[k] = signed_coordinate(&moved, x).ok_or(Error::NotProportional)?;
        }
        induced.insert(out);
    }
    let induced_action: Vec<[i8; 3]> = induced.into_iter().collect();
    let mut expected_action = chart.expected_action.clone();
    expected_action.sort();
    Ok(BlowupReport {
        name: chart.name,
        pulled_back: back.form,
        form_matches,
        difference,
        zero_divisors,
        action_matches: induced_action == expected_action,
        induced_action,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_1() {
        let r = blowup_chart_check(&case1()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.difference.is_zero());
        assert_eq!(r.zero_divisors, vec![z(2)]);
        // a single reflection in z₂
        assert_eq!(r.induced_action, vec![[1, -1, 1], [1, 1, 1]]);
    }

    #[test]
    fn case_3() {
        let r = blowup_chart_check(&case3()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.zero_divisors, vec![z(2), z(3)]);
        assert!(r.induced_action.iter().all(|s| s[0] == 1));
        assert_eq!(r.induced_action.len(), 4);
    }

    #[test]
    fn wrong_coefficient_detected() {
        let mut c = case1();
        c.expected_coeff = MPoly::one();
        let r = blowup_chart_check(&c).unwrap();
        assert!(!r.form_matches);
        assert_eq!(r.difference, rf(zp(2) - MPoly::one()));
    }

    #[test]
    fn odd_group_is_not_reflections_in_case_3() {
        let mut c = case3();
        c.group.push([-1, 1, 1]);
        let r = blowup_chart_check(&c).unwrap();
        assert!(!r.action_matches);
    }
}
