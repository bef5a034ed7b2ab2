//! The acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use siegel_cy::chargeom::{
    all_sextuples, enumerate_even, quadruple_orbit, sp4f2_elements, syzygetic_quadruples, Quadruple,
};
use siegel_cy::modforms::boundary::{boundary_orders_from, q_parity_check_from, BOUNDARY_TRUNCATION};
use siegel_cy::modforms::{mutations, relations, runge_action_checks, sextuple_form, FormRegistry};
use siegel_cy::numeric::laws::{point_for, LAW_FLOOR, SAMPLE_FLOOR};
use siegel_cy::numeric::{
    character_law_check, diagonal_vanishing_check, sample_cases, series_numeric_consistency, transform_modulus_check,
    FormKind, SiegelPoint,
};
use siegel_cy::qseries::{theta_order_formula, theta_qexp};
use siegel_cy::symplectic::{SpMat, SubgroupTag};
use siegel_cy::variety::curves::all_curves;
use siegel_cy::variety::{
    blowup, blowup_chart_check, coordinate_change_check, curve_checks, curve_orbits, equation_invariance,
    group_closure, homogeneous_jacobian_identity, jacobian_identity_check, omega_pullback_sign, symmetry_generators,
    x_presentation, SignedMonomialMap,
};
use siegel_cy::Result;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok, detail: detail.into() })
}

fn characteristics() -> Result<Outcome> {
    let even = enumerate_even().len();
    let quads = syzygetic_quadruples().len();
    let orbit = quadruple_orbit(&Quadruple::standard())?.len();
    let order = sp4f2_elements().len();
    outcome(
        even == 10 && quads == 15 && orbit == 15 && order == 720,
        format!("even {even}, quadruples {quads}, orbit {orbit}, |Sp(4,F2)| {order}"),
    )
}

fn theta_orders() -> Result<Outcome> {
    let mut bad = Vec::new();
    for m in enumerate_even() {
        let t = theta_qexp(m, 12);
        let measured = [t.vanishing_order(0)?, t.vanishing_order(1)?, t.vanishing_order(2)?];
        if measured != theta_order_formula(m) {
            bad.push(m.to_string());
        }
    }
    outcome(bad.is_empty(), format!("30 orders checked, mismatches {bad:?}"))
}

fn boundary() -> Result<Outcome> {
    let mut counts: BTreeMap<[i64; 3], usize> = BTreeMap::new();
    let mut in_range = true;
    let mut parity = true;
    for s in all_sextuples() {
        let t = sextuple_form(&s, BOUNDARY_TRUNCATION)?;
        let k = boundary_orders_from(&s, &t)?.k;
        in_range &= k.iter().all(|x| (0..=1).contains(x));
        for axis in (0..3).filter(|&a| k[a] == 1) {
            parity &= q_parity_check_from(&s, &t, axis)?;
        }
        *counts.entry(k).or_default() += 1;
    }
    let expected: BTreeMap<[i64; 3], usize> =
        [([0, 0, 0], 8), ([1, 1, 1], 1), ([0, 0, 1], 2), ([0, 1, 0], 2), ([1, 0, 0], 2)].into_iter().collect();
    outcome(counts == expected && in_range && parity, format!("{counts:?}, k in {{0,1}} {in_range}, parity {parity}"))
}

fn ring_relations() -> Result<Outcome> {
    let reg = FormRegistry::build(16)?;
    let rels = relations();
    let failed: Vec<&str> = rels.iter().filter(|r| !r.residual(&reg).is_zero()).map(|r| r.id.as_str()).collect();
    outcome(failed.is_empty(), format!("{} relations at N=16, nonzero residuals {failed:?}", rels.len()))
}

fn substitution_actions() -> Result<Outcome> {
    let reg = FormRegistry::build(12)?;
    let checks = runge_action_checks(&reg)?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    outcome(checks.len() == 5 && failed.is_empty(), format!("{} substitutions, mismatched {failed:?}", checks.len()))
}

fn numeric_laws() -> Result<Outcome> {
    let evens = enumerate_even();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut modulus: f64 = 0.0;
    for (m, z) in sample_cases(SubgroupTag::Full, 5, 11, 20, SAMPLE_FLOOR)? {
        let ch = evens[rng.gen_range(0..evens.len())];
        modulus = modulus.max(transform_modulus_check(&m, ch, &z)?.deviation);
    }
    let mut theta_ok = 0;
    for (m, z) in sample_cases(SubgroupTag::Hecke(2), 10, 12, 20, LAW_FLOOR)? {
        theta_ok += character_law_check(FormKind::Theta, &m, &z)?.matches() as usize;
    }
    let mut trivial = 0;
    for (m, z) in sample_cases(SubgroupTag::ThetaKernel, 6, 13, 20, LAW_FLOOR)? {
        trivial += (character_law_check(FormKind::T, &m, &z)?.measured == 1) as usize;
    }
    let lower = SpMat::lower([[2, 2], [2, 2]])?;
    let z = point_for(&lower, 4, LAW_FLOOR).expect("admissible point");
    let sign = character_law_check(FormKind::Theta, &lower, &z)?.measured;
    let mut diagonal = true;
    for (t1, t2) in [
        ((0.0, 1.0), (0.0, 2.0)),
        ((0.5, 1.0), (0.0, 3.0)),
        ((0.1, 1.3), (-0.2, 0.9)),
        ((-0.4, 0.8), (0.3, 1.7)),
        ((0.25, 2.0), (0.25, 2.0)),
    ] {
        diagonal &= diagonal_vanishing_check(t1, t2)?.passed(1e-10);
    }
    let mut dual: f64 = 0.0;
    let mut points = vec![SiegelPoint::scalar(3.0)];
    for _ in 0..10 {
        points.push(SiegelPoint::random(&mut rng, 3.0, 4.0, 0.3));
    }
    for z in &points {
        for &m in &evens {
            dual = dual.max(series_numeric_consistency(m, z, 16, 1e-8)?.deviation);
        }
    }
    outcome(
        modulus < 1e-8 && theta_ok == 20 && trivial == 20 && sign == -1 && diagonal && dual < 1e-8,
        format!(
            "modulus {modulus:.1e}, character {theta_ok}/20, weight 3 trivial {trivial}/20, lower block {sign}, diagonal {diagonal}, dual engine {dual:.1e}"
        ),
    )
}

fn variety() -> Result<Outcome> {
    let cc = coordinate_change_check()?.passed();
    let px = x_presentation();
    let g = group_closure(&symmetry_generators())?;
    let fixes = g.iter().all(|h| equation_invariance(h, &px));
    let mut omega = true;
    for h in symmetry_generators().iter().take(4) {
        omega &= omega_pullback_sign(h)? == 1;
    }
    omega &= omega_pullback_sign(&SignedMonomialMap::sign_change(&[4, 5]))? == 1;
    let curves = all_curves(&g)?;
    let mut curves_ok = curves.len() == 15;
    for c in &curves {
        curves_ok &= curve_checks(c, &px)?.passed();
    }
    let mut sizes: Vec<usize> = curve_orbits(&g, &curves)?.iter().map(Vec::len).collect();
    sizes.sort();
    outcome(
        cc && g.len() == 48 && fixes && omega && curves_ok && sizes == [3, 12],
        format!(
            "memberships {cc}, |G| {} fixing equations {fixes}, omega signs {omega}, curves {} ok {curves_ok}, orbits {sizes:?}",
            g.len(),
            curves.len()
        ),
    )
}

fn symbolic_identities() -> Result<Outcome> {
    let rational = jacobian_identity_check();
    let homogeneous = homogeneous_jacobian_identity();
    outcome(rational && homogeneous, format!("rational Jacobian {rational}, homogeneous Jacobian {homogeneous}"))
}

fn blowups() -> Result<Outcome> {
    let a = blowup_chart_check(&blowup::case1())?.passed();
    let b = blowup_chart_check(&blowup::case3())?.passed();
    outcome(a && b, format!("first chart {a}, second chart {b}"))
}

fn falsification() -> Result<Outcome> {
    let reg = FormRegistry::build(16)?;
    let muts = mutations();
    let missed: Vec<&str> = muts.iter().filter(|r| r.residual(&reg).is_zero()).map(|r| r.id.as_str()).collect();
    outcome(muts.len() == 8 && missed.is_empty(), format!("{} mutations, undetected {missed:?}", muts.len()))
}

type Criterion = (&'static str, fn() -> Result<Outcome>, Duration);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 10] = [
        ("characteristic combinatorics", characteristics, secs(1)),
        ("theta vanishing orders", theta_orders, secs(5)),
        ("boundary orders of the sextuple forms", boundary, secs(30)),
        ("ring relations at N=16", ring_relations, secs(120)),
        ("substitution actions on F1..F5", substitution_actions, secs(10)),
        ("numeric transformation laws", numeric_laws, secs(60)),
        ("threefold: ideals, symmetries, curves", variety, secs(30)),
        ("symbolic Jacobian identities", symbolic_identities, secs(10)),
        ("blow-up charts", blowups, secs(1)),
        ("falsification controls", falsification, secs(120)),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(o) => (o.ok, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = elapsed <= *budget;
        let pass = ok && in_time;
        failures += !pass as usize;
        println!(
            "criterion {:>2} {}: {name} ({:.2}s of {}s) {detail}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
