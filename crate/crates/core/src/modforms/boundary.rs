use std::collections::BTreeMap;

use crate::chargeom::{all_sextuples, Sextuple};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

use super::registry::sextuple_form;

/// Vanishing orders `(k₀, k₁, k₂)` of `T dz₀∧dz₁∧dz₂` along `q_ν = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryOrders {
    pub k: [i64; 3],
}

/// The truncation at which all minimal exponents of the sextuple products are visible.
pub const BOUNDARY_TRUNCATION: u32 = 12;

/// `(Σ a₁, Σ (a₁ + a₂ − 2a₁a₂), Σ a₂)` over the sextuple.
fn axis_sums(s: &Sextuple) -> [i64; 3] {
    let mut out = [0i64; 3];
    for m in s.chars() {
        let [a1, a2] = m.a().map(i64::from);
        out[0] += a1;
        out[1] += a1 + a2 - 2 * a1 * a2;
        out[2] += a2;
    }
    out
}

/// The orders from the characteristic sums, `Σ/2 − 1` per axis.
pub fn formula_orders(s: &Sextuple) -> BoundaryOrders {
    BoundaryOrders { k: axis_sums(s).map(|x| x / 2 - 1) }
}

/// Level-4 order of a level-8 series along an axis; the level-8 order must be even.
fn level4_order(t: &QSeries, axis: usize) -> Result<i64> {
    let o8 = t.vanishing_order(axis)? as i64;
    if o8 % 2 != 0 {
        return Err(Error::Precondition(format!("odd level-8 order {o8} on axis {axis}")));
    }
    Ok(o8 / 2)
}

/// Orders measured on the product series, cross-checked against the formula.
pub fn boundary_orders_from(s: &Sextuple, t: &QSeries) -> Result<BoundaryOrders> {
    let expected = formula_orders(s);
    let mut k = [0i64; 3];
    for axis in 0..3 {
        k[axis] = level4_order(t, axis)? - 1;
        if k[axis] != expected.k[axis] {
            return Err(Error::BoundaryMismatch { axis, formula: expected.k[axis], series: k[axis] });
        }
    }
    Ok(BoundaryOrders { k })
}

pub fn boundary_orders(s: &Sextuple) -> Result<BoundaryOrders> {
    let t = sextuple_form(s, BOUNDARY_TRUNCATION)?;
    boundary_orders_from(s, &t)
}

/// The multiset of orders over all 15 sextuples.
pub fn boundary_distribution() -> Result<BTreeMap<BoundaryOrders, usize>> {
    let mut out = BTreeMap::new();
    for s in all_sextuples() {
        *out.entry(boundary_orders(&s)?).or_insert(0) += 1;
    }
    Ok(out)
}

/// With `k_axis = 1`, the product only has even level-4 exponents on that axis.
pub fn q_parity_check_from(s: &Sextuple, t: &QSeries, axis: usize) -> Result<bool> {
    let k = formula_orders(s).k[axis];
    if k != 1 {
        return Err(Error::Precondition(format!("k{axis} = {k}, parity check needs k{axis} = 1")));
    }
    Ok(t.terms().all(|(e, _)| e.axis(axis) % 4 == 0))
}

pub fn q_parity_check(s: &Sextuple, axis: usize) -> Result<bool> {
    let t = sextuple_form(s, BOUNDARY_TRUNCATION)?;
    q_parity_check_from(s, &t, axis)
}

pub fn q0_parity_check(s: &Sextuple) -> Result<bool> {
    q_parity_check(s, 0)
}
