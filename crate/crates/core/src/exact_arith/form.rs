use std::collections::BTreeMap;
use std::fmt;

use super::mpoly::{MPoly, Symbol};
use super::ratfn::{rational_jacobian, RatFn};
use crate::error::{Error, Result};

/// A rational 3-form `c · dv₁∧dv₂∧dv₃` on an affine chart.
///
/// The wedge variables are stored sorted; construction absorbs the sign of the
/// sorting permutation into the coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeForm {
    chart: Vec<Symbol>,
    coeff: RatFn,
    wedge: [Symbol; 3],
}

/// Result of pulling a form back. `degenerate` marks an identically vanishing
/// Jacobian, in which case the form is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Pullback {
    pub form: ThreeForm,
    pub jacobian: RatFn,
    pub degenerate: bool,
}

fn sort3(w: [Symbol; 3]) -> ([Symbol; 3], i64) {
    let mut w = w;
    let mut sign = 1;
    for i in 0..3 {
        for j in 0..2 - i {
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (w, sign)
}

impl ThreeForm {
    pub fn new(chart: Vec<Symbol>, coeff: RatFn, wedge: [Symbol; 3]) -> Result<Self> {
        for s in &wedge {
            if !chart.contains(s) {
                return Err(Error::ForeignChartVariable(s.to_string()));
            }
        }
        if wedge[0] == wedge[1] || wedge[1] == wedge[2] || wedge[0] == wedge[2] {
            return Ok(ThreeForm { chart, coeff: RatFn::zero(), wedge: sort3(wedge).0 });
        }
        let (wedge, sign) = sort3(wedge);
        let coeff = if sign < 0 { -&coeff } else { coeff };
        Ok(ThreeForm { chart, coeff, wedge })
    }

    pub fn coeff(&self) -> &RatFn {
        &self.coeff
    }

    pub fn wedge(&self) -> &[Symbol; 3] {
        &self.wedge
    }

    pub fn chart(&self) -> &[Symbol] {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// `c` with `other = c · self`, when both use the same wedge.
    pub fn ratio(&self, other: &ThreeForm) -> Result<RatFn> {
        if self.wedge != other.wedge {
            return Err(Error::NotProportional);
        }
        other.coeff.div(&self.coeff)
    }

    /// Pull back along a chart map given as `source variable ↦ rational function
    /// of target variables`. The result lives on `target_chart` with
    /// `target_wedge` as its differentials.
    pub fn pullback(
        &self,
        map: &BTreeMap<Symbol, RatFn>,
        target_chart: &[Symbol],
        target_wedge: [Symbol; 3],
    ) -> Result<Pullback> {
        for s in &self.chart {
            if !map.contains_key(s) {
                return Err(Error::UnassignedVariable(s.to_string()));
            }
        }
        let images: [RatFn; 3] = std::array::from_fn(|i| map[&self.wedge[i]].clone());
        // The remaining chart coordinates are treated as constant along the
        // wedge, so the wedge images may only move with the target wedge.
        for img in &images {
            for s in img.variables() {
                if !target_wedge.contains(&s) {
                    return Err(Error::ForeignChartVariable(s.to_string()));
                }
            }
        }
        let jac = rational_jacobian(&images, &target_wedge);
        let coeff = &self.coeff.substitute(map)? * &jac;
        let degenerate = jac.is_zero();
        let form = ThreeForm::new(target_chart.to_vec(), coeff, target_wedge)?;
        Ok(Pullback { form, jacobian: jac, degenerate })
    }
}

impl fmt::Display for ThreeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] d{}∧d{}∧d{}", self.coeff, self.wedge[0], self.wedge[1], self.wedge[2])
    }
}

/// Convenience for maps whose images are polynomials.
pub fn poly_map(pairs: &[(&str, MPoly)]) -> BTreeMap<Symbol, RatFn> {
    pairs.iter().map(|(s, p)| (Symbol::new(s), RatFn::from_poly(p.clone()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::mpoly::v;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn syms(names: [&str; 3]) -> [Symbol; 3] {
        names.map(Symbol::new)
    }

    fn volume(names: [&str; 3]) -> ThreeForm {
        ThreeForm::new(syms(names).to_vec(), RatFn::one(), syms(names)).unwrap()
    }

    #[test]
    fn wedge_is_sorted_with_sign() {
        let f = ThreeForm::new(syms(["a", "b", "c"]).to_vec(), RatFn::one(), syms(["b", "a", "c"])).unwrap();
        assert_eq!(f.wedge(), &syms(["a", "b", "c"]));
        assert_eq!(f.coeff(), &RatFn::from_poly(MPoly::int(-1)));
        let g = ThreeForm::new(syms(["a", "b", "c"]).to_vec(), RatFn::one(), syms(["c", "a", "b"])).unwrap();
        assert_eq!(g.coeff(), &RatFn::one());
    }

    #[test]
    fn identity_pullback() {
        let w = volume(["z1", "z2", "z3"]);
        let map = poly_map(&[("z1", v("z1")), ("z2", v("z2")), ("z3", v("z3"))]);
        let p = w.pullback(&map, &syms(["z1", "z2", "z3"]), syms(["z1", "z2", "z3"])).unwrap();
        assert_eq!(p.form, w);
        assert!(!p.degenerate);
    }

    #[test]
    fn line_blowup_chart() {
        let w = volume(["z1", "z2", "z3"]);
        let map = poly_map(&[("z1", v("w1") * v("z2")), ("z2", v("z2")), ("z3", v("z3"))]);
        let tgt = syms(["w1", "z2", "z3"]);
        let p = w.pullback(&map, &tgt, tgt.clone()).unwrap();
        assert_eq!(p.form.coeff(), &RatFn::from_poly(v("z2")));
    }

    #[test]
    fn point_blowup_chart() {
        let w = volume(["z1", "z2", "z3"]);
        let map = poly_map(&[("z1", v("u1") * v("z2") * v("z3")), ("z2", v("z2")), ("z3", v("z3"))]);
        let tgt = syms(["u1", "z2", "z3"]);
        let p = w.pullback(&map, &tgt, tgt.clone()).unwrap();
        assert_eq!(p.form.coeff(), &RatFn::from_poly(v("z2") * v("z3")));
    }

    #[test]
    fn degenerate_map_is_flagged() {
        let w = volume(["z1", "z2", "z3"]);
        let map = poly_map(&[("z1", v("a")), ("z2", v("a")), ("z3", v("b"))]);
        let tgt = syms(["a", "b", "c"]);
        let p = w.pullback(&map, &tgt, tgt.clone()).unwrap();
        assert!(p.degenerate && p.form.is_zero());
    }

    #[test]
    fn unassigned_chart_variable() {
        let w = volume(["z1", "z2", "z3"]);
        let map = poly_map(&[("z1", v("a")), ("z2", v("b"))]);
        let tgt = syms(["a", "b", "c"]);
        assert!(matches!(w.pullback(&map, &tgt, tgt.clone()), Err(Error::UnassignedVariable(_))));
    }

    fn random_map(rng: &mut ChaCha8Rng, src: &[Symbol; 3], tgt: &[Symbol; 3]) -> BTreeMap<Symbol, RatFn> {
        src.iter()
            .enumerate()
            .map(|(i, s)| {
                let x = |k: usize| MPoly::sym(&tgt[(i + k) % 3]);
                let p = x(0) + rng.gen_range(-2..3) * x(1) * x(2) + rng.gen_range(-2..3);
                let f = if rng.gen_bool(0.3) {
                    RatFn::new(p, x(rng.gen_range(1..3))).unwrap()
                } else {
                    RatFn::from_poly(p)
                };
                (s.clone(), f)
            })
            .collect()
    }

    #[test]
    fn pullback_is_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = syms(["a1", "a2", "a3"]);
        let b = syms(["b1", "b2", "b3"]);
        let c = syms(["c1", "c2", "c3"]);
        for _ in 0..20 {
            let coeff = RatFn::new(v("a1") + 2 * v("a2"), v("a3") + 1).unwrap();
            let w = ThreeForm::new(a.to_vec(), coeff, a.clone()).unwrap();
            let f = random_map(&mut rng, &a, &b);
            let g = random_map(&mut rng, &b, &c);
            let two_step = w.pullback(&f, &b, b.clone()).unwrap().form.pullback(&g, &c, c.clone()).unwrap().form;
            let fg: BTreeMap<Symbol, RatFn> = f.iter().map(|(s, r)| (s.clone(), r.substitute(&g).unwrap())).collect();
            let one_step = w.pullback(&fg, &c, c.clone()).unwrap().form;
            assert_eq!(two_step, one_step);
        }
    }
}
