use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chargeom::{Char, Quadruple, Sextuple};
use crate::error::{Error, Result};
use crate::symplectic::{sample_element, sextuple_character, subgroup_membership, theta_character, SpMat, SubgroupTag};

use super::complex::Complex;
use super::siegel::SiegelPoint;
use super::theta::{radius_for, theta_eval, theta_product};

/// Lattice-sum tolerance used by every law check.
pub const EVAL_TOL: f64 = 1e-20;
/// Distance from `±1` a measured character value may have.
pub const CHARACTER_TOL: f64 = 1e-6;
/// Smallest eigenvalue of `Im Z` required of sampled points.
pub const MIN_EIGENVALUE: f64 = 0.5;

#[derive(Clone, Debug)]
pub struct ModulusCheck {
    pub image: Char,
    /// `|θ[M{m}](MZ)|`
    pub lhs: f64,
    /// `|det(CZ+D)|^{1/2} |θ[m](Z)|`
    pub rhs: f64,
    /// `|lhs − rhs| / max(1, rhs)`
    pub deviation: f64,
}

impl ModulusCheck {
    pub fn passed(&self, tol: f64) -> bool {
        self.deviation < tol
    }
}

/// Compares `|θ[M{m}](MZ)|` with `|det(CZ+D)|^{1/2} |θ[m](Z)|`.
pub fn transform_modulus_check(m: &SpMat, ch: Char, z: &SiegelPoint) -> Result<ModulusCheck> {
    let image = m.mod2().act(ch)?;
    let mz = z.act(m)?;
    let lhs = theta_eval(image, &mz, EVAL_TOL)?.value.abs();
    let rhs = z.automorphy(m).abs().sqrt() * theta_eval(ch, z, EVAL_TOL)?.value.abs();
    Ok(ModulusCheck { image, lhs, rhs, deviation: (lhs - rhs).abs() / rhs.max(1.0) })
}

/// Theta products with a character on `Γ₂,₀[2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// `Θ`, the product over the standard syzygetic quadruple, weight 2.
    Theta,
    /// `T`, the product over the standard sextuple, weight 3.
    T,
}

impl FormKind {
    pub fn weight(self) -> i64 {
        match self {
            FormKind::Theta => 2,
            FormKind::T => 3,
        }
    }

    pub fn chars(self) -> Vec<Char> {
        match self {
            FormKind::Theta => Quadruple::standard().chars().to_vec(),
            FormKind::T => Sextuple::standard().chars().to_vec(),
        }
    }

    pub fn domain(self) -> SubgroupTag {
        SubgroupTag::Hecke(2)
    }

    /// The character value given by the closed formulas.
    pub fn predicted(self, m: &SpMat) -> Result<i64> {
        match self {
            FormKind::Theta => theta_character(m),
            FormKind::T => sextuple_character(m),
        }
    }

    pub fn eval(self, z: &SiegelPoint) -> Result<Complex> {
        Ok(theta_product(&self.chars(), z, EVAL_TOL)?.value)
    }
}

#[derive(Clone, Debug)]
pub struct CharacterMeasurement {
    /// `form(MZ) / (det(CZ+D)^k form(Z))`
    pub ratio: (f64, f64),
    pub measured: i64,
    pub predicted: i64,
}

impl CharacterMeasurement {
    pub fn matches(&self) -> bool {
        self.measured == self.predicted
    }
}

pub fn character_law_check(kind: FormKind, m: &SpMat, z: &SiegelPoint) -> Result<CharacterMeasurement> {
    if !subgroup_membership(m, kind.domain()) {
        return Err(Error::NotInSubgroup(kind.domain().to_string()));
    }
    let lhs = kind.eval(&z.act(m)?)?;
    let rhs = &z.automorphy(m).powi(kind.weight()) * &kind.eval(z)?;
    let (re, im) = (&lhs / &rhs).to_f64();
    let measured = if re > 0.0 { 1 } else { -1 };
    if (re - measured as f64).abs() > CHARACTER_TOL || im.abs() > CHARACTER_TOL {
        return Err(Error::NotACharacter { re, im, tol: CHARACTER_TOL });
    }
    Ok(CharacterMeasurement { ratio: (re, im), measured, predicted: kind.predicted(m)? })
}

#[derive(Clone, Debug)]
pub struct DiagonalReport {
    /// `|T(diag(τ₁, τ₂))|`
    pub t_value: f64,
    /// `|θ[1111](diag(τ₁, τ₂))|`
    pub odd_pair_value: f64,
    /// `|θ[0000](diag(τ₁, τ₂))|`, a nonvanishing control.
    pub control: f64,
}

impl DiagonalReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.t_value < tol && self.odd_pair_value < tol && self.control > tol
    }
}

pub fn diagonal_vanishing_check(t1: (f64, f64), t2: (f64, f64)) -> Result<DiagonalReport> {
    let z = SiegelPoint::diagonal(t1, t2)?;
    let ev = |s: &str| theta_eval(Char::parse(s).expect("valid"), &z, EVAL_TOL).map(|e| e.value.abs());
    Ok(DiagonalReport { t_value: FormKind::T.eval(&z)?.abs(), odd_pair_value: ev("1111")?, control: ev("0000")? })
}

/// `|T(z₀, −z₁, z₂) + T(z₀, z₁, z₂)|`.
pub fn t_antisymmetry_defect(z: &SiegelPoint) -> Result<f64> {
    let a = FormKind::T.eval(z)?;
    let b = FormKind::T.eval(&z.negate_offdiag())?;
    Ok((&a + &b).abs())
}

/// Smallest eigenvalue of `Im Z` for sampled points in modulus checks.
pub const SAMPLE_FLOOR: f64 = 0.5;
/// Smallest eigenvalue of `Im Z` and `Im MZ` accepted by character checks.
/// Some elements of `Γ₂,₀[2]` admit no `Z` with both at least ½; this floor
/// still keeps the lattice radius within budget.
pub const LAW_FLOOR: f64 = 0.2;

/// Largest eigenvalue of `Im Z` and `Im MZ` accepted by sampling; it keeps
/// theta values far above the absolute lattice tolerance.
pub const CEILING: f64 = 4.0;

fn balance(m: &SpMat, z: &SiegelPoint) -> Option<f64> {
    let mz = z.act(m).ok()?;
    (z.max_eigenvalue() <= CEILING && mz.max_eigenvalue() <= CEILING)
        .then(|| z.min_eigenvalue().min(mz.min_eigenvalue()))
}

/// Among seeded candidates `Z` (direct samples, preimages of samples and
/// wider samples) refined by a seeded local search, the one maximizing
/// `min(λ_min(Im Z), λ_min(Im MZ))` under the ceiling, if that minimum is at
/// least `floor`.
pub fn point_for(m: &SpMat, seed: u64, floor: f64) -> Option<SiegelPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inv = m.inverse();
    let mut best: Option<(f64, SiegelPoint)> = None;
    for attempt in 0..96 {
        let z = match attempt % 3 {
            0 => Some(SiegelPoint::sample(&mut rng)),
            1 => SiegelPoint::sample(&mut rng).act(&inv).ok(),
            _ => Some(SiegelPoint::random(&mut rng, 0.2, 3.0, 0.2)),
        };
        let Some((score, z)) = z.and_then(|z| balance(m, &z).map(|s| (s, z))) else {
            continue;
        };
        if best.as_ref().map_or(true, |(b, _)| score > *b) {
            best = Some((score, z));
        }
    }
    let (mut score, mut z) = best?;
    let mut step = 0.25;
    let mut misses = 0;
    while step > 1e-3 {
        let e = z.entries();
        let mut jitter = || Complex::from_f64(rng.gen_range(-step..=step), rng.gen_range(-step..=step));
        let cand = SiegelPoint::new(&e[0] + &jitter(), &e[1] + &jitter(), &e[2] + &jitter())
            .ok()
            .and_then(|c| balance(m, &c).map(|s| (s, c)));
        match cand {
            Some((s, c)) if s > score => {
                (score, z) = (s, c);
                misses = 0;
            }
            _ => {
                misses += 1;
                if misses == 12 {
                    step *= 0.6;
                    misses = 0;
                }
            }
        }
    }
    Some((score, z)).filter(|(s, _)| *s >= floor && radius_for(*s, EVAL_TOL).is_ok()).map(|(_, z)| z)
}

/// `n` seeded pairs `(M, Z)` with `M ∈ tag`, skipping matrices for which no
/// admissible point is found.
pub fn sample_cases(
    tag: SubgroupTag,
    word_length: usize,
    seed: u64,
    n: usize,
    floor: f64,
) -> Result<Vec<(SpMat, SiegelPoint)>> {
    let mut out = Vec::with_capacity(n);
    let mut i = 0u64;
    while out.len() < n {
        if i > 200 * n as u64 {
            return Err(Error::SamplingExhausted { tag: tag.to_string(), attempts: i as usize, word_length });
        }
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
        let m = sample_element(tag, word_length, s)?;
        if let Some(z) = point_for(&m, s, floor) {
            out.push((m, z));
        }
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chargeom::enumerate_even;
    use crate::symplectic::Mat2;

    #[test]
    fn identity_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let z = SiegelPoint::sample(&mut rng);
        for m in enumerate_even() {
            let r = transform_modulus_check(&SpMat::identity(), m, &z).unwrap();
            assert_eq!(r.image, m);
            assert!(r.deviation < 1e-30);
        }
    }

    #[test]
    fn inversion_moduli() {
        let j = SpMat::inversion();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in enumerate_even() {
            let z = SiegelPoint::sample(&mut rng);
            let r = transform_modulus_check(&j, m, &z).unwrap();
            assert!(r.passed(1e-8), "{m}: {r:?}");
        }
    }

    #[test]
    fn lower_block_flips_theta() {
        let c: Mat2 = [[2, 2], [2, 2]];
        let m = SpMat::lower(c).unwrap();
        let z = point_for(&m, 4, LAW_FLOOR).unwrap();
        let r = character_law_check(FormKind::Theta, &m, &z).unwrap();
        assert_eq!(r.measured, -1);
        assert!(r.matches());
    }

    #[test]
    fn sampled_laws() {
        for (m, z) in sample_cases(SubgroupTag::Full, 4, 1, 3, SAMPLE_FLOOR).unwrap() {
            for ch in enumerate_even().into_iter().take(3) {
                let r = transform_modulus_check(&m, ch, &z).unwrap();
                assert!(r.passed(1e-8), "{m} {ch}: {r:?}");
            }
        }
        for (m, z) in sample_cases(SubgroupTag::Hecke(2), 4, 2, 3, LAW_FLOOR).unwrap() {
            for kind in [FormKind::Theta, FormKind::T] {
                let r = character_law_check(kind, &m, &z).unwrap();
                assert!(r.matches(), "{kind:?} {m}: {r:?}");
            }
        }
    }

    #[test]
    fn identity_character() {
        let z = SiegelPoint::scalar(1.0);
        let r = character_law_check(FormKind::Theta, &SpMat::identity(), &z).unwrap();
        assert_eq!((r.measured, r.predicted), (1, 1));
    }

    #[test]
    fn outside_domain() {
        let z = SiegelPoint::scalar(1.0);
        assert!(matches!(character_law_check(FormKind::T, &SpMat::inversion(), &z), Err(Error::NotInSubgroup(_))));
    }

    #[test]
    fn diagonal() {
        for (t1, t2) in [((0.0, 1.0), (0.0, 2.0)), ((0.5, 1.0), (0.0, 3.0))] {
            let r = diagonal_vanishing_check(t1, t2).unwrap();
            assert!(r.passed(1e-10), "{r:?}");
        }
    }

    #[test]
    fn antisymmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..3 {
            let z = SiegelPoint::sample(&mut rng);
            let t = FormKind::T.eval(&z).unwrap().abs();
            assert!(t_antisymmetry_defect(&z).unwrap() < 1e-25 * t.max(1.0));
        }
    }
}
