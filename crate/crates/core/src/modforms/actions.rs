use crate::error::Result;
use crate::qseries::QSeries;
use crate::symplectic::Mat2;

use super::registry::FormRegistry;

/// A substitution acting on `F₁..F₅`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// `Z ↦ Z + S`.
    Translate(Mat2),
    /// `Z ↦ ᵗU Z U`.
    Unimodular(Mat2),
}

/// Image `F_i ↦ sign · F_j`, stored as `(j, sign)` with one-based `j`.
pub type SignedPerm = [(usize, i64); 5];

#[derive(Clone, Debug)]
pub struct ActionCheck {
    pub name: &'static str,
    pub substitution: Substitution,
    pub expected: SignedPerm,
    /// `None` where an image is not `±F_j` for any `j`.
    pub measured: [Option<(usize, i64)>; 5],
    /// Truncation up to which the images were compared.
    pub compared_to: u32,
}

impl ActionCheck {
    pub fn passed(&self) -> bool {
        self.measured.iter().zip(&self.expected).all(|(m, e)| *m == Some(*e))
    }
}

const ID: SignedPerm = [(1, 1), (2, 1), (3, 1), (4, 1), (5, 1)];

/// The five substitutions of `Γ₂,₀[2]` with their expected signed permutations.
pub fn runge_substitutions() -> Vec<(&'static str, Substitution, SignedPerm)> {
    let with = |changes: &[(usize, usize, i64)]| {
        let mut p = ID;
        for &(i, j, s) in changes {
            p[i - 1] = (j, s);
        }
        p
    };
    vec![
        ("translate_e11", Substitution::Translate([[1, 0], [0, 0]]), with(&[(2, 2, -1), (4, 4, -1)])),
        ("translate_e12", Substitution::Translate([[0, 1], [1, 0]]), with(&[(5, 5, -1)])),
        ("translate_e22", Substitution::Translate([[0, 0], [0, 1]]), with(&[(3, 3, -1), (4, 4, -1)])),
        ("unimodular_swap", Substitution::Unimodular([[0, 1], [1, 0]]), with(&[(2, 3, 1), (3, 2, 1)])),
        ("unimodular_shear", Substitution::Unimodular([[1, 1], [0, 1]]), with(&[(3, 4, 1), (4, 3, 1)])),
    ]
}

pub fn apply(s: &QSeries, sub: &Substitution) -> Result<QSeries> {
    match sub {
        Substitution::Translate(m) => s.translate_action(m),
        Substitution::Unimodular(u) => s.unimodular_action(u),
    }
}

/// The substitution seen in `W = 2Z`.
fn in_2z(sub: &Substitution) -> Substitution {
    match sub {
        Substitution::Translate(m) => Substitution::Translate(m.map(|r| r.map(|x| 2 * x))),
        u => *u,
    }
}

/// Identify the image of each `F_i` as a signed `F_j`. The comparison runs in
/// `W = 2Z`, so `compared_to` is a truncation in `W`.
pub fn measure(reg: &FormRegistry, sub: &Substitution) -> Result<([Option<(usize, i64)>; 5], u32)> {
    let sub = in_2z(sub);
    let images: Vec<QSeries> = (1..=5).map(|i| apply(reg.big_f_in_2z(i), &sub)).collect::<Result<_>>()?;
    let n = images.iter().map(QSeries::truncation).min().unwrap_or(0);
    let mut out = [None; 5];
    for (slot, img) in out.iter_mut().zip(&images) {
        let img = img.truncate(n);
        let hits: Vec<(usize, i64)> = (1..=5)
            .filter_map(|j| {
                let fj = reg.big_f_in_2z(j).truncate(n);
                if img == fj {
                    Some((j, 1))
                } else if img == -&fj {
                    Some((j, -1))
                } else {
                    None
                }
            })
            .collect();
        // an image that matches two generators is undecided at this truncation
        *slot = match hits[..] {
            [one] => Some(one),
            _ => None,
        };
    }
    Ok((out, n))
}

pub fn runge_action_checks(reg: &FormRegistry) -> Result<Vec<ActionCheck>> {
    runge_substitutions()
        .into_iter()
        .map(|(name, substitution, expected)| {
            let (measured, compared_to) = measure(reg, &substitution)?;
            Ok(ActionCheck { name, substitution, expected, measured, compared_to })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_image_is_a_signed_generator() {
        let reg = FormRegistry::build(16).unwrap();
        for c in runge_action_checks(&reg).unwrap() {
            assert!(c.measured.iter().all(Option::is_some), "{}: {:?}", c.name, c.measured);
            assert!(c.compared_to >= 6, "{}", c.name);
        }
    }

    #[test]
    fn measured_actions() {
        let reg = FormRegistry::build(12).unwrap();
        let checks = runge_action_checks(&reg).unwrap();
        let by_name = |n: &str| checks.iter().find(|c| c.name == n).unwrap();
        for n in ["translate_e12", "unimodular_swap", "unimodular_shear"] {
            assert!(by_name(n).passed(), "{n}: {:?}", by_name(n).measured);
        }
        // f_a(Z + e11) = i^{a1} f_a(Z), so F5 picks up i·i = −1; likewise for e22.
        for n in ["translate_e11", "translate_e22"] {
            let c = by_name(n);
            assert_eq!(c.measured[4], Some((5, -1)), "{n}");
            assert_eq!(&c.measured[..4], &c.expected[..4].iter().map(|e| Some(*e)).collect::<Vec<_>>()[..]);
        }
    }

    #[test]
    fn translation_is_involutive_on_f() {
        let reg = FormRegistry::build(10).unwrap();
        let sub = Substitution::Translate([[0, 1], [1, 0]]);
        let once = apply(reg.big_f(5), &sub).unwrap();
        let twice = apply(&once, &sub).unwrap();
        assert_eq!(twice, reg.big_f(5).truncate(twice.truncation()));
    }
}
