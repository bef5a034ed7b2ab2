use std::time::Instant;

use siegel_cy::chargeom::enumerate_even;
use siegel_cy::numeric::laws::{point_for, LAW_FLOOR, SAMPLE_FLOOR};
use siegel_cy::numeric::{
    character_law_check, sample_cases, series_numeric_consistency, t_antisymmetry_defect, transform_modulus_check,
    FormKind, SiegelPoint, DROPPED_LIMIT,
};
use siegel_cy::symplectic::{sample_element, SubgroupTag};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn modulus_law_on_sampled_full_group() {
    let t = Instant::now();
    let evens = enumerate_even();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (m, z) in sample_cases(SubgroupTag::Full, 5, 11, 20, SAMPLE_FLOOR).unwrap() {
        assert!(z.min_eigenvalue() >= SAMPLE_FLOOR);
        let ch = evens[rng.gen_range(0..evens.len())];
        let r = transform_modulus_check(&m, ch, &z).unwrap();
        assert!(r.passed(1e-8), "{m} {ch}: {r:?}");
    }
    eprintln!("modulus law: {:?}", t.elapsed());
}

#[test]
fn theta_character_on_hecke_subgroup() {
    let t = Instant::now();
    let mut flips = 0;
    for (m, z) in sample_cases(SubgroupTag::Hecke(2), 10, 12, 20, LAW_FLOOR).unwrap() {
        let r = character_law_check(FormKind::Theta, &m, &z).unwrap();
        assert!(r.matches(), "{m}: {r:?}");
        flips += (r.measured == -1) as usize;
        let r = character_law_check(FormKind::T, &m, &z).unwrap();
        assert!(r.matches(), "T {m}: {r:?}");
    }
    assert!(flips > 0, "sample never exercises the nontrivial value");
    eprintln!("theta character: {:?}", t.elapsed());
}

#[test]
fn weight_three_law_is_trivial_on_theta_kernel() {
    let t = Instant::now();
    for (m, z) in sample_cases(SubgroupTag::ThetaKernel, 6, 13, 20, LAW_FLOOR).unwrap() {
        let r = character_law_check(FormKind::T, &m, &z).unwrap();
        assert_eq!(r.measured, 1, "{m}: {r:?}");
    }
    eprintln!("weight three: {:?}", t.elapsed());
}

#[test]
fn measured_characters_are_multiplicative() {
    let t = Instant::now();
    let mut pairs = 0;
    for i in 0..200u64 {
        if pairs == 30 {
            break;
        }
        let seed = 14_000 + 3 * i;
        let a = sample_element(SubgroupTag::Hecke(2), 10, seed).unwrap();
        let b = sample_element(SubgroupTag::Hecke(2), 10, seed + 1).unwrap();
        let ab = &a * &b;
        let (Some(za), Some(zb), Some(zab)) =
            (point_for(&a, seed, LAW_FLOOR), point_for(&b, seed + 1, LAW_FLOOR), point_for(&ab, seed + 2, LAW_FLOOR))
        else {
            continue;
        };
        for kind in [FormKind::Theta, FormKind::T] {
            let va = character_law_check(kind, &a, &za).unwrap().measured;
            let vb = character_law_check(kind, &b, &zb).unwrap().measured;
            let vab = character_law_check(kind, &ab, &zab).unwrap().measured;
            assert_eq!(vab, va * vb, "{kind:?} {a} {b}");
        }
        pairs += 1;
    }
    assert_eq!(pairs, 30);
    eprintln!("multiplicativity: {:?}", t.elapsed());
}

#[test]
fn antisymmetry_at_seeded_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..10 {
        let z = SiegelPoint::sample(&mut rng);
        let scale = FormKind::T.eval(&z).unwrap().abs().max(1.0);
        assert!(t_antisymmetry_defect(&z).unwrap() < 1e-25 * scale);
    }
}

#[test]
fn dual_engine_agreement_at_seeded_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..10 {
        let z = SiegelPoint::random(&mut rng, 3.0, 4.0, 0.3);
        for m in enumerate_even() {
            let r = series_numeric_consistency(m, &z, 16, DROPPED_LIMIT).unwrap();
            assert!(r.consistent(), "{m}: {r:?}");
            assert!(r.deviation < 1e-8);
        }
    }
}
