use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use siegel_cy::chargeom::{
    all_sextuples, enumerate_even, enumerate_odd, quadruple_orbit, quadruple_stabilizer, sp4f2_elements,
    syzygetic_quadruples, Quadruple, Sextuple,
};
use siegel_cy::modforms::boundary::{boundary_orders_from, formula_orders, q_parity_check_from, BOUNDARY_TRUNCATION};
use siegel_cy::modforms::{mutations, relations, runge_action_checks, sextuple_form, FormRegistry};
use siegel_cy::numeric::laws::{point_for, LAW_FLOOR, SAMPLE_FLOOR};
use siegel_cy::numeric::{
    character_law_check, diagonal_vanishing_check, sample_cases, series_numeric_consistency, t_antisymmetry_defect,
    theta_eval, transform_modulus_check, FormKind, SiegelPoint,
};
use siegel_cy::qseries::cache::SeriesCache;
use siegel_cy::qseries::{theta_order_formula, theta_qexp};
use siegel_cy::symplectic::{is_symplectic, sample_element, sample_many, subgroup_membership, SpMat, SubgroupTag};
use siegel_cy::variety::curves::{all_curves, jacobian_rank_at, smooth_control_point};
use siegel_cy::variety::group::projective_image_order;
use siegel_cy::variety::identities::homogeneous_jacobian_evaluations;
use siegel_cy::variety::{
    blowup, blowup_chart_check, coordinate_change_check, curve_checks, curve_orbits, equation_invariance,
    group_closure, homogeneous_jacobian_sign, jacobian_identity_check, omega_chain_check, omega_pullback_sign,
    omega_stabilizer, symmetry_generators, x_presentation, y_presentation, SignedMonomialMap,
};
use siegel_cy::Result;

use crate::{CheckRecord, Params, Selector, Status};

/// A unit of work producing one or more records.
pub type Job = fn(&Params) -> Vec<CheckRecord>;

pub fn jobs(selector: Selector) -> Vec<Job> {
    let chars: Vec<Job> = vec![char_counts, char_orbits, sampler];
    let series: Vec<Job> = vec![series_basics, theta_orders, series_antisymmetry];
    let relations: Vec<Job> = vec![ring_relations];
    let boundary: Vec<Job> = vec![boundary];
    let variety: Vec<Job> =
        vec![coordinate_change, symmetry_group, omega_stabilizer_report, curves, symbolic_identities, blowup_charts];
    let numeric: Vec<Job> = vec![
        theta_values,
        modulus_laws,
        theta_character,
        weight_three_law,
        character_multiplicativity,
        diagonal_and_antisymmetry,
        dual_engine,
    ];
    match selector {
        Selector::Chars => chars,
        Selector::Series => series,
        Selector::Relations => relations,
        Selector::Boundary => boundary,
        Selector::Variety => variety,
        Selector::Numeric => numeric,
        Selector::All => [chars, series, relations, boundary, variety, numeric].concat(),
    }
}

fn check(id: &str, label: &str, ok: bool, data: Value) -> CheckRecord {
    CheckRecord::new(id, label, Status::from_bool(ok), data)
}

fn report(id: &str, label: &str, data: Value) -> CheckRecord {
    CheckRecord::new(id, label, Status::Report, data)
}

/// Unwraps a fallible record builder into a failing record on error.
fn guarded(id: &str, label: &str, f: impl FnOnce() -> Result<CheckRecord>) -> CheckRecord {
    f().unwrap_or_else(|e| CheckRecord::error(id, label, e))
}

fn chars_of(cs: &[siegel_cy::chargeom::Char]) -> Vec<String> {
    cs.iter().map(ToString::to_string).collect()
}

// ---- chars ----

fn char_counts(_: &Params) -> Vec<CheckRecord> {
    let even = enumerate_even().len();
    let odd = enumerate_odd().len();
    let quads = syzygetic_quadruples().len();
    let sext = all_sextuples();
    let complements_ok = sext.iter().all(|s| s.complement().is_ok());
    vec![
        check(
            "chars.parity_counts",
            "even and odd characteristics",
            even == 10 && odd == 6,
            json!({"even": even, "odd": odd}),
        ),
        check("chars.syzygetic_quadruples", "syzygetic quadruples", quads == 15, json!({"count": quads})),
        check(
            "chars.sextuples",
            "complementary sextuples",
            sext.len() == 15 && complements_ok,
            json!({"count": sext.len(), "complements_ok": complements_ok}),
        ),
    ]
}

fn char_orbits(_: &Params) -> Vec<CheckRecord> {
    let order = sp4f2_elements().len();
    let std = Quadruple::standard();
    let stab = quadruple_stabilizer(&std).len();
    let orbit = guarded("chars.standard_orbit", "transitivity on quadruples", || {
        let orbit = quadruple_orbit(&std)?;
        let all: BTreeSet<Quadruple> = syzygetic_quadruples().into_iter().collect();
        Ok(check(
            "chars.standard_orbit",
            "transitivity on quadruples",
            orbit.len() == 15 && orbit == all,
            json!({"orbit_size": orbit.len()}),
        ))
    });
    vec![
        check("chars.group_order", "order of Sp(4, F2)", order == 720, json!({"order": order})),
        check("chars.quadruple_stabilizer", "stabilizer of the standard quadruple", stab == 48, json!({"order": stab})),
        orbit,
    ]
}

fn sampler(p: &Params) -> Vec<CheckRecord> {
    let tags = [
        ("full", SubgroupTag::Full),
        ("principal_2", SubgroupTag::Principal(2)),
        ("hecke_2", SubgroupTag::Hecke(2)),
        ("theta_kernel", SubgroupTag::ThetaKernel),
    ];
    tags.iter()
        .map(|(name, tag)| {
            let id = format!("chars.sampler.{name}");
            guarded(&id, "congruence subgroup sampling", || {
                let ms = sample_many(*tag, 6, p.seed, 10)?;
                let ok = ms.iter().all(|m| is_symplectic(m.entries()) && subgroup_membership(m, *tag));
                Ok(check(&id, "congruence subgroup sampling", ok, json!({"samples": ms.len()})))
            })
        })
        .collect()
}

// ---- series ----

fn series_basics(p: &Params) -> Vec<CheckRecord> {
    let n = p.truncation;
    let odd_zero = enumerate_odd().iter().all(|&m| theta_qexp(m, n).is_zero());
    let bad: Vec<String> = enumerate_even()
        .into_iter()
        .filter(|&m| {
            let t = theta_qexp(m, n);
            t.is_zero() || !t.koecher_check() || !t.is_rational_integral()
        })
        .map(|m| m.to_string())
        .collect();
    vec![
        check("series.odd_vanishing", "odd theta constants vanish", odd_zero, json!({"truncation": n})),
        check(
            "series.koecher_integrality",
            "semi-positive exponents, rational integral coefficients",
            bad.is_empty(),
            json!({"truncation": n, "offending": bad}),
        ),
    ]
}

fn theta_orders(p: &Params) -> Vec<CheckRecord> {
    let id = "series.theta_orders";
    let label = "theta vanishing orders (a1, a1+a2-2a1a2, a2)";
    vec![guarded(id, label, || {
        let mut rows = Vec::new();
        let mut ok = true;
        for m in enumerate_even() {
            let t = theta_qexp(m, p.truncation);
            let measured = (0..3).map(|a| t.vanishing_order(a)).collect::<Result<Vec<u32>>>()?;
            let expected = theta_order_formula(m).to_vec();
            ok &= measured == expected;
            rows.push(json!({"char": m.to_string(), "measured": measured, "expected": expected}));
        }
        Ok(check(id, label, ok, json!({"truncation": p.truncation, "orders": rows})))
    })]
}

fn series_antisymmetry(p: &Params) -> Vec<CheckRecord> {
    let id = "series.t_antisymmetry";
    let label = "T(z0, -z1, z2) = -T(z0, z1, z2)";
    vec![guarded(id, label, || {
        let t = sextuple_form(&Sextuple::standard(), p.truncation)?;
        let ok = t.negate_offdiag() == t.scale(-1);
        Ok(check(id, label, ok, json!({"truncation": p.truncation, "terms": t.len()})))
    })]
}

// ---- relations ----

fn registry(p: &Params) -> Result<FormRegistry> {
    match &p.cache {
        Some(dir) => FormRegistry::build_with(p.truncation, Some(&SeriesCache::new(dir)?)),
        None => FormRegistry::build(p.truncation),
    }
}

/// Truncation at which every mutation leaves a nonzero residual.
const MUTATION_TRUNCATION: u32 = 16;

fn ring_relations(p: &Params) -> Vec<CheckRecord> {
    let reg = match registry(p) {
        Ok(r) => r,
        Err(e) => return vec![CheckRecord::error("relations.registry", "generator expansions", e)],
    };
    let mut out: Vec<CheckRecord> = relations()
        .par_iter()
        .map(|r| {
            let res = r.residual(&reg);
            check(
                &format!("relations.{}", r.id),
                &r.label,
                res.is_zero(),
                json!({"truncation": p.truncation, "in_2z": r.in_2z, "residual_terms": res.len()}),
            )
        })
        .collect();
    let deep = if p.truncation >= MUTATION_TRUNCATION {
        Ok(reg.clone())
    } else {
        registry(&Params { truncation: MUTATION_TRUNCATION, ..p.clone() })
    };
    match deep {
        Ok(deep) => out.extend(
            mutations()
                .par_iter()
                .map(|r| {
                    let res = r.residual(&deep);
                    check(
                        &format!("relations.mutation.{}", r.id),
                        &format!("falsification control: {}", r.label),
                        !res.is_zero(),
                        json!({"truncation": deep.truncation(), "residual_terms": res.len()}),
                    )
                })
                .collect::<Vec<_>>(),
        ),
        Err(e) => out.push(CheckRecord::error("relations.mutation", "falsification controls", e)),
    }
    match runge_action_checks(&reg) {
        Ok(checks) => out.extend(checks.into_iter().map(|c| {
            let fmt = |v: &[Option<(usize, i64)>]| -> Vec<String> {
                v.iter()
                    .map(|x| match x {
                        Some((j, s)) => format!("{}F{j}", if *s < 0 { "-" } else { "+" }),
                        None => "?".into(),
                    })
                    .collect()
            };
            let expected: Vec<Option<(usize, i64)>> = c.expected.iter().copied().map(Some).collect();
            check(
                &format!("relations.action.{}", c.name),
                "action of level-two substitutions on F1..F5",
                c.passed(),
                json!({
                    "expected": fmt(&expected),
                    "measured": fmt(&c.measured),
                    "compared_to": c.compared_to,
                }),
            )
        })),
        Err(e) => out.push(CheckRecord::error("relations.action", "action on F1..F5", e)),
    }
    out
}

// ---- boundary ----

fn boundary(_: &Params) -> Vec<CheckRecord> {
    let label = "boundary orders of a sextuple product";
    let sextuples = all_sextuples();
    let per: Vec<(CheckRecord, Option<[i64; 3]>)> = sextuples
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let id = format!("boundary.sextuple_{i:02}");
            let measured = sextuple_form(s, BOUNDARY_TRUNCATION).and_then(|t| {
                let k = boundary_orders_from(s, &t)?.k;
                let parity = (0..3)
                    .filter(|&a| k[a] == 1)
                    .map(|a| q_parity_check_from(s, &t, a))
                    .collect::<Result<Vec<bool>>>()?;
                Ok((k, parity))
            });
            match measured {
                Ok((k, parity)) => {
                    let ok = k.iter().all(|x| (0..=1).contains(x)) && parity.iter().all(|b| *b);
                    let data = json!({"chars": chars_of(s.chars()), "k": k, "parity_on_order_one_axes": parity});
                    (check(&id, label, ok, data), Some(k))
                }
                Err(e) => (CheckRecord::error(&id, label, e), None),
            }
        })
        .collect();
    let mut counts = std::collections::BTreeMap::new();
    for (_, k) in &per {
        if let Some(k) = k {
            *counts.entry(format!("{:?}", k)).or_insert(0usize) += 1;
        }
    }
    let expected = [("[0, 0, 0]", 8), ("[0, 0, 1]", 2), ("[0, 1, 0]", 2), ("[1, 0, 0]", 2), ("[1, 1, 1]", 1)];
    let ok = counts.len() == expected.len() && expected.iter().all(|(k, n)| counts.get(*k) == Some(n));
    let formula_agrees = sextuples.iter().zip(&per).all(|(s, (_, k))| k.as_ref() == Some(&formula_orders(s).k));
    let mut out: Vec<CheckRecord> = per.into_iter().map(|(r, _)| r).collect();
    out.push(check(
        "boundary.distribution",
        "distribution of boundary orders",
        ok && formula_agrees,
        json!({"counts": counts, "formula_agrees": formula_agrees}),
    ));
    out
}

// ---- variety ----

fn coordinate_change(_: &Params) -> Vec<CheckRecord> {
    let id = "variety.coordinate_change";
    let label = "coordinate change between the two models";
    vec![guarded(id, label, || {
        let r = coordinate_change_check()?;
        let found: Vec<Value> =
            r.memberships.iter().map(|m| json!({"label": m.label, "certified": m.certificate.is_some()})).collect();
        Ok(check(
            id,
            label,
            r.passed(),
            json!({
                "determinant": r.determinant.to_string(),
                "quadric_scalar": r.quadric_scalar.map(|q| q.to_string()),
                "memberships": found,
            }),
        ))
    })]
}

fn sign_change(idx: &[usize]) -> SignedMonomialMap {
    SignedMonomialMap::sign_change(idx)
}

fn symmetry_group(_: &Params) -> Vec<CheckRecord> {
    let px = x_presentation();
    let gens = symmetry_generators();
    let mut out = vec![guarded("variety.symmetry_group", "symmetry group of X", || {
        let g = group_closure(&gens)?;
        let fixes = g.iter().all(|h| equation_invariance(h, &px));
        Ok(check(
            "variety.symmetry_group",
            "symmetry group of X",
            g.len() == 48 && fixes,
            json!({"order": g.len(), "fixes_equations": fixes}),
        ))
    })];
    out.push(guarded("variety.omega_generators", "generators fixing the Calabi-Yau form", || {
        let type_12 = &gens[..4];
        let mut signs = Vec::new();
        for g in type_12 {
            signs.push(json!({"map": g.to_string(), "sign": omega_pullback_sign(g)?}));
        }
        let pair = omega_pullback_sign(&sign_change(&[4, 5]))?;
        let ok = signs.iter().all(|s| s["sign"] == 1) && pair == 1;
        Ok(check(
            "variety.omega_generators",
            "generators fixing the Calabi-Yau form",
            ok,
            json!({"type_1_and_2": signs, "x4_x5_sign_change": pair}),
        ))
    }));
    out.push(guarded("variety.omega_x4_sign_change", "sign change of x4 on the Calabi-Yau form", || {
        let s = omega_pullback_sign(&sign_change(&[4]))?;
        Ok(report("variety.omega_x4_sign_change", "sign change of x4 on the Calabi-Yau form", json!({"sign": s})))
    }));
    out
}

fn omega_stabilizer_report(_: &Params) -> Vec<CheckRecord> {
    let px = x_presentation();
    let mut out = vec![guarded("variety.omega_stabilizer", "stabilizer of the Calabi-Yau form", || {
        let r = omega_stabilizer(&px)?;
        Ok(report(
            "variety.omega_stabilizer",
            "stabilizer of the Calabi-Yau form",
            json!({
                "candidates": r.candidates,
                "equation_preserving": r.equation_preserving,
                "stabilizer_order": r.stabilizer.len(),
                "contains_type_1_and_2": r.contains_type_1_and_2,
                "x4_coset_size": r.x4_coset.len(),
                "sign_reversing_generators": r.sign_reversing_generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "intersection_with_group": r.intersection_with_group,
            }),
        ))
    })];
    out.push(guarded("variety.projective_order", "projective image of the symmetry group", || {
        let g = group_closure(&symmetry_generators())?;
        Ok(report(
            "variety.projective_order",
            "projective image of the symmetry group",
            json!({"order": projective_image_order(&g), "linear_order": g.len()}),
        ))
    }));
    out
}

fn curves(_: &Params) -> Vec<CheckRecord> {
    let px = x_presentation();
    let mut out = vec![guarded("variety.singular_curves", "fifteen singular curves", || {
        let g = group_closure(&symmetry_generators())?;
        let cs = all_curves(&g)?;
        let reports = cs.par_iter().map(|c| curve_checks(c, &px)).collect::<Result<Vec<_>>>()?;
        let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.name.clone()).collect();
        Ok(check(
            "variety.singular_curves",
            "fifteen singular curves",
            cs.len() == 15 && failed.is_empty(),
            json!({"curves": cs.len(), "failed": failed}),
        ))
    })];
    out.push(guarded("variety.curve_orbits", "orbits on the singular curves", || {
        let g = group_closure(&symmetry_generators())?;
        let cs = all_curves(&g)?;
        let mut sizes: Vec<usize> = curve_orbits(&g, &cs)?.iter().map(Vec::len).collect();
        sizes.sort();
        Ok(check("variety.curve_orbits", "orbits on the singular curves", sizes == [3, 12], json!({"sizes": sizes})))
    }));
    out.push(guarded("variety.smooth_control", "smooth point control", || {
        let py = y_presentation();
        let pt = smooth_control_point();
        let on = py.contains(&pt)?;
        let rank = jacobian_rank_at(&py, &pt)?;
        Ok(check(
            "variety.smooth_control",
            "smooth point control",
            on && rank == 2,
            json!({"point": pt.iter().map(ToString::to_string).collect::<Vec<_>>(), "rank": rank}),
        ))
    }));
    out
}

fn symbolic_identities(p: &Params) -> Vec<CheckRecord> {
    let jac = jacobian_identity_check();
    let sign = homogeneous_jacobian_sign();
    let chain = omega_chain_check();
    let mut out = vec![
        check("variety.rational_jacobian", "Jacobian of the rational transformation", jac, json!({"factor": 4})),
        check(
            "variety.homogeneous_jacobian",
            "W = f4^4 J(f1/f4, f2/f4, f3/f4)",
            sign == Some(1),
            json!({"measured_sign": sign}),
        ),
        check(
            "variety.omega_chain",
            "closed form of the Calabi-Yau form in F1..F6",
            chain.g_expressions_match && chain.jacobian_forms_agree && chain.denominator_sign == Some(1),
            json!({
                "g_expressions_match": chain.g_expressions_match,
                "jacobian_forms_agree": chain.jacobian_forms_agree,
                "denominator_sign": chain.denominator_sign,
            }),
        ),
    ];
    out.push(guarded("variety.homogeneous_jacobian_points", "W / (f4^4 J) at integer points", || {
        let s = homogeneous_jacobian_evaluations(p.seed, 20)?;
        Ok(report("variety.homogeneous_jacobian_points", "W / (f4^4 J) at integer points", json!({"sign": s})))
    }));
    out
}

fn blowup_charts(_: &Params) -> Vec<CheckRecord> {
    [blowup::case1(), blowup::case3()]
        .iter()
        .map(|chart| {
            let id = format!("variety.blowup_{}", chart.name);
            guarded(&id, "blow-up chart of a quotient singularity", || {
                let r = blowup_chart_check(chart)?;
                Ok(check(
                    &id,
                    "blow-up chart of a quotient singularity",
                    r.passed(),
                    json!({
                        "pulled_back": r.pulled_back.to_string(),
                        "zero_divisors": r.zero_divisors.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "induced_action": r.induced_action,
                    }),
                ))
            })
        })
        .collect()
}

// ---- numeric ----

fn jacobi(y: f64) -> f64 {
    (-40i32..=40).map(|n| (-std::f64::consts::PI * y * (n * n) as f64).exp()).sum()
}

fn theta_values(_: &Params) -> Vec<CheckRecord> {
    let id = "numeric.theta_values";
    let label = "theta constants by lattice summation";
    vec![guarded(id, label, || {
        let null = siegel_cy::chargeom::Char::new(0, 0, 0, 0);
        let mut rows = Vec::new();
        let mut ok = true;
        for y in [1.0, 2.0] {
            let v = theta_eval(null, &SiegelPoint::scalar(y), 1e-20)?;
            let (re, im) = v.value.to_f64();
            let dev = (re - jacobi(y).powi(2)).abs().max(im.abs());
            ok &= dev < 1e-12;
            rows.push(json!({"y": y, "value": re, "deviation": dev}));
        }
        let z = SiegelPoint::from_f64([(0.3, 1.1), (-0.2, 0.25), (0.1, 0.9)])?;
        let odd_max = enumerate_odd()
            .iter()
            .map(|&m| theta_eval(m, &z, 1e-20).map(|e| e.value.abs()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        ok &= odd_max < 1e-20;
        Ok(check(id, label, ok, json!({"null_at_scalar_points": rows, "odd_max": odd_max})))
    })]
}

fn modulus_laws(p: &Params) -> Vec<CheckRecord> {
    let evens = enumerate_even();
    let full = guarded("numeric.modulus_law", "modulus of the theta transformation law", || {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        let mut worst: f64 = 0.0;
        let cases = sample_cases(SubgroupTag::Full, 5, p.seed, 20, SAMPLE_FLOOR)?;
        for (m, z) in &cases {
            let ch = evens[rng.gen_range(0..evens.len())];
            worst = worst.max(transform_modulus_check(m, ch, z)?.deviation);
        }
        Ok(check(
            "numeric.modulus_law",
            "modulus of the theta transformation law",
            worst < p.tol,
            json!({"cases": cases.len(), "max_deviation": worst}),
        ))
    });
    let inv = guarded("numeric.inversion_modulus", "modulus law under the inversion", || {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed.wrapping_add(1));
        let j = SpMat::inversion();
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let ch = evens[rng.gen_range(0..evens.len())];
            let z = SiegelPoint::sample(&mut rng);
            worst = worst.max(transform_modulus_check(&j, ch, &z)?.deviation);
        }
        Ok(check(
            "numeric.inversion_modulus",
            "modulus law under the inversion",
            worst < p.tol,
            json!({"cases": 20, "max_deviation": worst}),
        ))
    });
    vec![full, inv]
}

fn theta_character(p: &Params) -> Vec<CheckRecord> {
    let label = "character of Theta on the Hecke subgroup";
    let sampled = guarded("numeric.theta_character", label, || {
        let cases = sample_cases(SubgroupTag::Hecke(2), 10, p.seed, 20, LAW_FLOOR)?;
        let mut matched = 0;
        let mut negative = 0;
        for (m, z) in &cases {
            let r = character_law_check(FormKind::Theta, m, z)?;
            matched += r.matches() as usize;
            negative += (r.measured == -1) as usize;
        }
        Ok(check(
            "numeric.theta_character",
            label,
            matched == cases.len(),
            json!({"cases": cases.len(), "matched": matched, "negative": negative}),
        ))
    });
    let lower = guarded("numeric.lower_block_sign", "F6 under (E 0; C E), C = (2 2; 2 2)", || {
        let m = SpMat::lower([[2, 2], [2, 2]])?;
        let z = point_for(&m, p.seed, LAW_FLOOR)
            .ok_or_else(|| siegel_cy::Error::Precondition("no admissible point".into()))?;
        let r = character_law_check(FormKind::Theta, &m, &z)?;
        Ok(check(
            "numeric.lower_block_sign",
            "F6 under (E 0; C E), C = (2 2; 2 2)",
            r.measured == -1 && r.matches(),
            json!({"measured": r.measured, "predicted": r.predicted}),
        ))
    });
    vec![sampled, lower]
}

fn weight_three_law(p: &Params) -> Vec<CheckRecord> {
    let id = "numeric.weight_three_law";
    let label = "T transforms with trivial character on the theta kernel";
    vec![guarded(id, label, || {
        let cases = sample_cases(SubgroupTag::ThetaKernel, 6, p.seed, 20, LAW_FLOOR)?;
        let mut trivial = 0;
        for (m, z) in &cases {
            trivial += (character_law_check(FormKind::T, m, z)?.measured == 1) as usize;
        }
        Ok(check(id, label, trivial == cases.len(), json!({"cases": cases.len(), "trivial": trivial})))
    })]
}

fn character_multiplicativity(p: &Params) -> Vec<CheckRecord> {
    let id = "numeric.character_multiplicativity";
    let label = "measured characters are multiplicative";
    vec![guarded(id, label, || {
        let mut pairs = 0;
        let mut ok = true;
        for i in 0..200u64 {
            if pairs == 30 {
                break;
            }
            let seed = p.seed.wrapping_mul(1_000_003).wrapping_add(3 * i);
            let a = sample_element(SubgroupTag::Hecke(2), 10, seed)?;
            let b = sample_element(SubgroupTag::Hecke(2), 10, seed + 1)?;
            let ab = &a * &b;
            let (Some(za), Some(zb), Some(zab)) = (
                point_for(&a, seed, LAW_FLOOR),
                point_for(&b, seed + 1, LAW_FLOOR),
                point_for(&ab, seed + 2, LAW_FLOOR),
            ) else {
                continue;
            };
            for kind in [FormKind::Theta, FormKind::T] {
                let va = character_law_check(kind, &a, &za)?.measured;
                let vb = character_law_check(kind, &b, &zb)?.measured;
                let vab = character_law_check(kind, &ab, &zab)?.measured;
                ok &= vab == va * vb;
            }
            pairs += 1;
        }
        Ok(check(id, label, ok && pairs == 30, json!({"pairs": pairs})))
    })]
}

fn diagonal_and_antisymmetry(p: &Params) -> Vec<CheckRecord> {
    let diag = guarded("numeric.diagonal_vanishing", "T and theta[1111] vanish on the diagonal", || {
        let mut pts = vec![((0.0, 1.0), (0.0, 2.0)), ((0.5, 1.0), (0.0, 3.0))];
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed.wrapping_add(2));
        for _ in 0..3 {
            pts.push((
                (rng.gen_range(-0.5..0.5), rng.gen_range(0.8..2.0)),
                (rng.gen_range(-0.5..0.5), rng.gen_range(0.8..2.0)),
            ));
        }
        let mut worst: f64 = 0.0;
        let mut ok = true;
        for (t1, t2) in &pts {
            let r = diagonal_vanishing_check(*t1, *t2)?;
            ok &= r.passed(1e-10);
            worst = worst.max(r.t_value).max(r.odd_pair_value);
        }
        Ok(check(
            "numeric.diagonal_vanishing",
            "T and theta[1111] vanish on the diagonal",
            ok,
            json!({"points": pts.len(), "max_value": worst}),
        ))
    });
    let anti = guarded("numeric.t_antisymmetry", "T(z0, -z1, z2) = -T(z0, z1, z2)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed.wrapping_add(3));
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let z = SiegelPoint::sample(&mut rng);
            worst = worst.max(t_antisymmetry_defect(&z)?);
        }
        Ok(check(
            "numeric.t_antisymmetry",
            "T(z0, -z1, z2) = -T(z0, z1, z2)",
            worst < 1e-20,
            json!({"points": 10, "max_defect": worst}),
        ))
    });
    vec![diag, anti]
}

fn dual_engine(p: &Params) -> Vec<CheckRecord> {
    let id = "numeric.dual_engine";
    let label = "q-expansion against lattice sum";
    vec![guarded(id, label, || {
        let n = p.truncation.max(12);
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed.wrapping_add(4));
        let mut points = vec![SiegelPoint::scalar(3.0)];
        for _ in 0..10 {
            points.push(SiegelPoint::random(&mut rng, 3.0, 4.0, 0.3));
        }
        let mut worst: f64 = 0.0;
        let mut ok = true;
        for z in &points {
            for m in enumerate_even() {
                let r = series_numeric_consistency(m, z, n, p.tol)?;
                ok &= r.consistent() && r.deviation < p.tol;
                worst = worst.max(r.deviation);
            }
        }
        Ok(check(id, label, ok, json!({"points": points.len(), "truncation": n, "max_deviation": worst})))
    })]
}
