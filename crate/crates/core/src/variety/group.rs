use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_arith::{MPoly, RatFn, Symbol, ThreeForm};

use super::Presentation;

/// `xᵢ ↦ signᵢ · x_{perm(i)}` on six coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedMonomialMap {
    pub perm: [usize; 6],
    pub signs: [i8; 6],
}

impl SignedMonomialMap {
    pub fn identity() -> Self {
        SignedMonomialMap { perm: [0, 1, 2, 3, 4, 5], signs: [1; 6] }
    }

    pub fn new(perm: [usize; 6], signs: [i8; 6]) -> Result<Self> {
        let mut seen = [false; 6];
        for &p in &perm {
            if p >= 6 || seen[p] {
                return Err(Error::Precondition(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::Precondition(format!("signs {signs:?} are not ±1")));
        }
        Ok(SignedMonomialMap { perm, signs })
    }

    pub fn sign_change(coords: &[usize]) -> Self {
        let mut g = SignedMonomialMap::identity();
        for &i in coords {
            g.signs[i] = -g.signs[i];
        }
        g
    }

    pub fn swap(i: usize, j: usize) -> Self {
        let mut g = SignedMonomialMap::identity();
        g.perm.swap(i, j);
        g
    }

    /// `self ∘ other`, i.e. substitute `other` first.
    pub fn compose(&self, other: &SignedMonomialMap) -> SignedMonomialMap {
        SignedMonomialMap {
            perm: std::array::from_fn(|i| other.perm[self.perm[i]]),
            signs: std::array::from_fn(|i| self.signs[i] * other.signs[self.perm[i]]),
        }
    }

    pub fn inverse(&self) -> SignedMonomialMap {
        let mut out = SignedMonomialMap::identity();
        for i in 0..6 {
            out.perm[self.perm[i]] = i;
            out.signs[self.perm[i]] = self.signs[i];
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == SignedMonomialMap::identity()
    }

    /// Apply to a point: `(g p)ᵢ = signᵢ · p_{perm(i)}`.
    pub fn apply<T: Clone + std::ops::Neg<Output = T>>(&self, p: &[T; 6]) -> [T; 6] {
        std::array::from_fn(|i| {
            let v = p[self.perm[i]].clone();
            if self.signs[i] < 0 {
                -v
            } else {
                v
            }
        })
    }

    /// The substitution `xᵢ ↦ signᵢ x_{perm(i)}` on the given names.
    pub fn substitution(&self, names: &[Symbol; 6]) -> BTreeMap<Symbol, MPoly> {
        (0..6).map(|i| (names[i].clone(), MPoly::sym(&names[self.perm[i]]) * i64::from(self.signs[i]))).collect()
    }

    /// `f ∘ g`.
    pub fn pull(&self, f: &MPoly, names: &[Symbol; 6]) -> MPoly {
        f.substitute_partial(&self.substitution(names))
    }

    /// `−g`, which induces the same projective transformation as `g`.
    pub fn negated(&self) -> SignedMonomialMap {
        SignedMonomialMap { perm: self.perm, signs: self.signs.map(|s| -s) }
    }

    pub fn permutation_sign(&self) -> i8 {
        let mut sign = 1;
        let mut seen = [false; 6];
        for start in 0..6 {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.perm[i];
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

impl fmt::Display for SignedMonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            (0..6).map(|i| format!("{}x{}", if self.signs[i] < 0 { "-" } else { "" }, self.perm[i])).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Generators of the symmetry group in `x`-coordinates: the two transpositions
/// of `x₁,x₂,x₃` with the compensating `x₅` flip, the paired sign changes of
/// `x₁,x₂,x₃`, and the sign change of `x₄`.
pub fn symmetry_generators() -> Vec<SignedMonomialMap> {
    let odd = |i, j| SignedMonomialMap::swap(i, j).compose(&SignedMonomialMap::sign_change(&[5]));
    vec![
        odd(1, 2),
        odd(2, 3),
        SignedMonomialMap::sign_change(&[1, 2]),
        SignedMonomialMap::sign_change(&[2, 3]),
        SignedMonomialMap::sign_change(&[4]),
    ]
}

pub const CLOSURE_BOUND: usize = 10_000;

/// Closure under composition, sorted.
pub fn group_closure(generators: &[SignedMonomialMap]) -> Result<Vec<SignedMonomialMap>> {
    let mut group = BTreeSet::from([SignedMonomialMap::identity()]);
    let mut frontier = vec![SignedMonomialMap::identity()];
    while let Some(h) = frontier.pop() {
        for g in generators {
            let gh = g.compose(&h);
            if group.insert(gh) {
                if group.len() > CLOSURE_BOUND {
                    return Err(Error::ClosureTooLarge(CLOSURE_BOUND));
                }
                frontier.push(gh);
            }
        }
    }
    Ok(group.into_iter().collect())
}

/// Signs `(ε₄, ε₂)` with `quartic∘g = ε₄ quartic` and `quadric∘g = ε₂ quadric`, if any.
pub fn equation_signs(g: &SignedMonomialMap, p: &Presentation) -> Option<(i8, i8)> {
    let sign = |f: &MPoly| {
        let img = g.pull(f, &p.names);
        if img == *f {
            Some(1)
        } else if img == -f {
            Some(-1)
        } else {
            None
        }
    };
    Some((sign(&p.quartic)?, sign(&p.quadric)?))
}

/// `g` maps each defining polynomial to `±` itself.
pub fn equation_invariance(g: &SignedMonomialMap, p: &Presentation) -> bool {
    equation_signs(g, p).is_some()
}

fn u(i: usize) -> Symbol {
    Symbol::new(&format!("u{i}"))
}

/// Chart `x₄ = 1`, coordinates `uᵢ = xᵢ/x₄` for `i ≠ 4`.
pub fn omega_chart() -> Vec<Symbol> {
    [0, 1, 2, 3, 5].into_iter().map(u).collect()
}

/// `ω = 1/((u₁u₂u₃ − 2u₀)u₅) du₁∧du₂∧du₃`.
pub fn omega() -> ThreeForm {
    let uv = |i| MPoly::sym(&u(i));
    let den = (uv(1) * uv(2) * uv(3) - 2 * uv(0)) * uv(5);
    let coeff = RatFn::new(MPoly::one(), den).expect("nonzero denominator");
    ThreeForm::new(omega_chart(), coeff, [u(1), u(2), u(3)]).expect("wedge lies in the chart")
}

/// `g*ω = ±ω` computed in the chart `x₄ = 1`; `g` must fix `x₄` up to sign.
pub fn omega_pullback_sign(g: &SignedMonomialMap) -> Result<i64> {
    if g.perm[4] != 4 {
        return Err(Error::Precondition(format!("{g} moves x4 and leaves the chart")));
    }
    let s4 = i64::from(g.signs[4]);
    let map: BTreeMap<Symbol, RatFn> = [0, 1, 2, 3, 5]
        .into_iter()
        .map(|i| {
            let image = MPoly::sym(&u(g.perm[i])) * (i64::from(g.signs[i]) * s4);
            (u(i), RatFn::from_poly(image))
        })
        .collect();
    let wedge: [Symbol; 3] = [1, 2, 3].map(|i| u(g.perm[i]));
    let w = omega();
    let back = w.pullback(&map, &omega_chart(), wedge)?.form;
    let minus = ThreeForm::new(omega_chart(), -w.coeff(), w.wedge().clone())?;
    if back == w {
        Ok(1)
    } else if back == minus {
        Ok(-1)
    } else {
        Err(Error::NotProportional)
    }
}

#[derive(Clone, Debug)]
pub struct StabilizerReport {
    /// `S₃` on `x₁,x₂,x₃` times all sign changes of `x₁..x₅`.
    pub candidates: usize,
    /// Candidates fixing both equations up to sign.
    pub equation_preserving: usize,
    /// Equation-preserving candidates with `g*ω = ω`.
    pub stabilizer: Vec<SignedMonomialMap>,
    pub contains_type_1_and_2: bool,
    /// Stabilizer elements that flip `x₄`.
    pub x4_coset: Vec<SignedMonomialMap>,
    /// Generators of the symmetry group with `g*ω = −ω`.
    pub sign_reversing_generators: Vec<SignedMonomialMap>,
    /// Order of the symmetry group modulo the global sign.
    pub projective_order: usize,
    /// Size of the intersection of the stabilizer with the symmetry group.
    pub intersection_with_group: usize,
}

/// All `S₃ × (Z/2)⁵` candidates, filtered by equations and `ω`.
pub fn omega_stabilizer(p: &Presentation) -> Result<StabilizerReport> {
    let perms: Vec<[usize; 3]> = vec![[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
    let mut candidates = Vec::new();
    for p3 in &perms {
        for bits in 0u32..32 {
            let mut signs = [1i8; 6];
            for k in 0..5 {
                if bits >> k & 1 == 1 {
                    signs[k + 1] = -1;
                }
            }
            let perm = [0, p3[0], p3[1], p3[2], 4, 5];
            candidates.push(SignedMonomialMap::new(perm, signs)?);
        }
    }
    let mut preserving = Vec::new();
    for g in &candidates {
        if equation_invariance(g, p) {
            preserving.push(*g);
        }
    }
    let mut stabilizer = Vec::new();
    for g in &preserving {
        if omega_pullback_sign(g)? == 1 {
            stabilizer.push(*g);
        }
    }
    stabilizer.sort();
    let gens = symmetry_generators();
    let contains_type_1_and_2 = gens[..4].iter().all(|g| stabilizer.contains(g));
    let x4_coset = stabilizer.iter().copied().filter(|g| g.signs[4] < 0).collect();
    let mut sign_reversing_generators = Vec::new();
    for g in &gens {
        if omega_pullback_sign(g)? == -1 {
            sign_reversing_generators.push(*g);
        }
    }
    let group = group_closure(&gens)?;
    let projective_order = projective_image_order(&group);
    let intersection_with_group = group.iter().filter(|g| stabilizer.contains(g)).count();
    Ok(StabilizerReport {
        candidates: candidates.len(),
        equation_preserving: preserving.len(),
        stabilizer,
        contains_type_1_and_2,
        x4_coset,
        sign_reversing_generators,
        projective_order,
        intersection_with_group,
    })
}

/// Order of the image in the projective linear group: `g` and `−g` are identified.
pub fn projective_image_order(group: &[SignedMonomialMap]) -> usize {
    group.iter().map(|g| *g.min(&g.negated())).collect::<BTreeSet<_>>().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::x_presentation;

    #[test]
    fn composition_and_inverse() {
        let gens = symmetry_generators();
        for g in &gens {
            assert!(g.compose(&g.inverse()).is_identity());
            for h in &gens {
                let p = [1i64, 2, 3, 4, 5, 6];
                assert_eq!(g.compose(h).apply(&p), g.apply(&h.apply(&p)));
            }
        }
    }

    #[test]
    fn pull_matches_apply() {
        let px = x_presentation();
        let g = symmetry_generators()[0].compose(&symmetry_generators()[2]);
        let p = [3i64, -1, 2, 5, 7, 4].map(crate::exact_arith::q);
        let at = |pt: &[crate::exact_arith::Q; 6]| -> BTreeMap<Symbol, crate::exact_arith::Q> {
            px.names.iter().cloned().zip(pt.iter().cloned()).collect()
        };
        let f = &px.quartic + &MPoly::var("x0") * MPoly::var("x1").pow(3);
        let lhs = g.pull(&f, &px.names).eval(&at(&p)).unwrap();
        assert_eq!(lhs, f.eval(&at(&g.apply(&p))).unwrap());
    }

    #[test]
    fn closure_order_48() {
        let g = group_closure(&symmetry_generators()).unwrap();
        assert_eq!(g.len(), 48);
        assert!(g.contains(&SignedMonomialMap::identity()));
        let px = x_presentation();
        for h in &g {
            assert_eq!(equation_signs(h, &px), Some((1, 1)), "{h}");
        }
    }

    #[test]
    fn invariance_examples() {
        let px = x_presentation();
        assert!(equation_invariance(&SignedMonomialMap::sign_change(&[5]), &px));
        assert!(!equation_invariance(&SignedMonomialMap::swap(0, 1), &px));
    }

    #[test]
    fn closure_bound() {
        // all of S₆ with signs has 46080 elements
        let gens = [
            SignedMonomialMap::swap(0, 1),
            SignedMonomialMap::new([1, 2, 3, 4, 5, 0], [1; 6]).unwrap(),
            SignedMonomialMap::sign_change(&[0]),
        ];
        assert_eq!(group_closure(&gens).unwrap_err(), Error::ClosureTooLarge(CLOSURE_BOUND));
    }

    #[test]
    fn omega_signs() {
        let flip = |c: &[usize]| SignedMonomialMap::sign_change(c);
        let odd12 = SignedMonomialMap::swap(1, 2).compose(&flip(&[5]));
        assert_eq!(omega_pullback_sign(&odd12).unwrap(), 1);
        assert_eq!(omega_pullback_sign(&SignedMonomialMap::swap(1, 2)).unwrap(), -1);
        assert_eq!(omega_pullback_sign(&flip(&[1, 2])).unwrap(), 1);
        assert_eq!(omega_pullback_sign(&flip(&[4, 5])).unwrap(), 1);
        assert_eq!(omega_pullback_sign(&flip(&[4])).unwrap(), -1);
        assert_eq!(omega_pullback_sign(&flip(&[5])).unwrap(), -1);
        assert!(omega_pullback_sign(&SignedMonomialMap::swap(0, 4)).is_err());
    }

    #[test]
    fn omega_sign_closed_form() {
        // g*ω = sgn(σ)·ε₄·ε₅ ω on equation-preserving candidates
        let r = omega_stabilizer(&x_presentation()).unwrap();
        for g in &r.stabilizer {
            assert_eq!(g.permutation_sign() * g.signs[4] * g.signs[5], 1);
        }
    }

    #[test]
    fn stabilizer() {
        let r = omega_stabilizer(&x_presentation()).unwrap();
        assert_eq!(r.candidates, 192);
        assert_eq!(r.equation_preserving, 96);
        assert_eq!(r.stabilizer.len(), 48);
        assert!(r.contains_type_1_and_2);
        assert_eq!(r.sign_reversing_generators, vec![SignedMonomialMap::sign_change(&[4])]);
        assert_eq!(r.x4_coset.len(), 24);
        assert!(r.x4_coset.iter().all(|g| g.permutation_sign() * g.signs[5] == -1));
        assert_eq!(r.intersection_with_group, 24);
        // −1 is not in the group, since no element flips x₀
        assert_eq!(r.projective_order, 48);
        let closed = group_closure(&r.stabilizer).unwrap();
        assert_eq!(closed, r.stabilizer);
    }
}
