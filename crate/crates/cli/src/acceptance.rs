//! The acceptance criteria as library functions, shared by `selftest --full`
//! and the `acceptance` test target. Details are deterministic in the seed.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use ramcoh_building::{build_ball, simplicial_cohomology, tree_ball_size};
use ramcoh_cyclotomic::verify_trace_bounds;
use ramcoh_homology::random::{random_complex, random_triple};
use ramcoh_homology::{decalage, triangle_composite_vanishing, FgModule};
use ramcoh_ledger::{full_registry, pipeline, Parity, PipelineParams};
use ramcoh_lie::{betti_numbers, exterior_poincare, lazard_check, theorem_a_series, LieAlgebraZ};
use ramcoh_ramification::{
    cyclic_quotient_profile, cyclic_subgroup_profile, cyclotomic_profile, different_lower, different_upper,
    FiltrationProfile,
};
use ramcoh_towers::{cyclotomic_jumps, step_different, sufficiency_report};
use ramcoh_valuation::{
    ball_restriction_image, factorial_valuation, frac, one_plus_p_power_paths, rat, unit_power_image,
    BallRestriction, BigInt, BigRational, ExtendedRational, Result, SeriesWindow,
};
use ramcoh_witt::{artin_schreier_solve, series_split_p_typical, FiniteField, PTypicalWitt, UnitSeries};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

impl Check {
    fn from(id: usize, name: &str, res: Result<(bool, Value)>) -> Check {
        let (pass, detail) = match res {
            Ok(v) => v,
            Err(e) => (false, json!({ "error": e.kind(), "message": e.to_string() })),
        };
        Check { id: id.to_string(), name: name.into(), pass, detail }
    }
}

pub const NAMES: [&str; 12] = [
    "different cross-check",
    "lower and upper differents on random profiles",
    "jump sequences and sufficient ramification",
    "trace lab",
    "ledger replay",
    "decalage and triangle vanishing",
    "lie cohomology",
    "exterior series",
    "witt suite",
    "building suite",
    "scalar identities",
    "determinism",
];

/// Wall-clock limits in seconds.
pub const LIMITS: [u64; 12] = [1, 5, 1, 60, 1, 10, 120, 1, 10, 30, 10, 300];

pub fn run(id: usize, seed: u64) -> Check {
    let name = NAMES[id - 1];
    let res = match id {
        1 => different_cross_check(),
        2 => random_profiles(seed),
        3 => jumps_and_sufficiency(),
        4 => trace_lab(seed),
        5 => ledger_replay(),
        6 => decalage_suite(seed, 100, 1, 100),
        7 => lie_suite(),
        8 => exterior_series(),
        9 => witt_suite(seed),
        10 => building_suite(),
        11 => scalar_identities(seed),
        _ => return Check { id: id.to_string(), name: name.into(), pass: false, detail: json!("no such criterion") },
    };
    Check::from(id, name, res)
}

fn q(n: i64) -> BigRational {
    rat(n)
}

pub fn different_cross_check() -> Result<(bool, Value)> {
    let (p, n) = (3u64, 2u32);
    let g = cyclotomic_profile(p, n)?;
    let lower = different_lower(&g);
    let upper = different_upper(&g);
    let disc = p.pow(n - 1) * (n as u64 * p - n as u64 - 1);
    let sub = cyclic_subgroup_profile(&g, 3)?;
    let quo = cyclic_quotient_profile(&g, 3)?;
    let (d_sub, d_quo, e_sub) = (different_lower(&sub), different_lower(&quo), sub.e());
    let pass = lower == 9 && upper == q(9) && disc == 9 && d_sub + e_sub * d_quo == 9;
    Ok((
        pass,
        json!({
            "lower": lower, "upper": upper.to_string(), "discriminant_exponent": disc,
            "over_q3_zeta3": d_sub, "e_over_q3_zeta3": e_sub, "q3_zeta3_over_q3": d_quo,
        }),
    ))
}

/// Divisor chains of at most four levels with breaks at small gaps.
pub fn random_profile<R: Rng>(rng: &mut R) -> Result<FiltrationProfile> {
    let primes = [2u64, 3, 5, 7];
    let levels = rng.gen_range(1..=4);
    let mut orders = vec![1u64];
    for _ in 0..levels {
        let f = primes[rng.gen_range(0..4)] * rng.gen_range(1..=2);
        orders.push(orders.last().unwrap() * f);
    }
    orders.reverse();
    let mut u = rng.gen_range(-1..=0);
    let mut breaks = Vec::new();
    for o in orders {
        breaks.push((u, o));
        u += rng.gen_range(1..=5);
    }
    FiltrationProfile::new(breaks)
}

pub fn random_profiles(seed: u64) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    let mut total = 0u64;
    for _ in 0..500 {
        let prof = random_profile(&mut rng)?;
        let lower = different_lower(&prof);
        total += lower;
        if q(lower as i64) != different_upper(&prof) {
            mismatches.push(json!(prof.breaks()));
        }
    }
    Ok((mismatches.is_empty(), json!({ "profiles": 500, "sum_of_differents": total, "mismatches": mismatches })))
}

pub fn jumps_and_sufficiency() -> Result<(bool, Value)> {
    let mut pass = true;
    let base = cyclotomic_jumps(3, 1)?.jumps(6);
    pass &= base == [-1, 1, 2, 3, 4, 5].map(q).to_vec();
    for (p, e_l) in [(3u64, 2u64), (5, 2), (5, 3), (7, 6)] {
        let js = cyclotomic_jumps(p, e_l)?.jumps(6);
        pass &= js.iter().enumerate().all(|(i, u)| *u == if i == 0 { q(-1) } else { q((i as u64 * e_l) as i64) });
    }
    let mut steps = Vec::new();
    let mut sufficiency = Vec::new();
    for p in [3u64, 5] {
        let s = cyclotomic_jumps(p, p - 1)?;
        for n in 1..=4usize {
            let d = step_different(&s, n)?;
            pass &= d == q(((p - 1) * p.pow(n as u32)) as i64);
            steps.push(json!({ "p": p, "n": n, "step_different": d.to_string() }));
        }
        let rep = sufficiency_report(&s, 4);
        let zero_slack = rep.levels.iter().all(|l| l.slack == rat(0))
            && rep.tail_slope_slack == rat(0)
            && rep.tail_constant_slack == rat(0);
        pass &= rep.holds && zero_slack;
        sufficiency.push(json!({ "p": p, "holds": rep.holds, "zero_slack": zero_slack }));
    }
    Ok((pass, json!({ "jumps_e1": base.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "steps": steps, "sufficiency": sufficiency })))
}

pub fn trace_lab(seed: u64) -> Result<(bool, Value)> {
    let a = verify_trace_bounds(3, 3, 200, 12, seed)?;
    let b = verify_trace_bounds(5, 2, 100, 12, seed)?;
    let pass = a.violations == 0 && b.violations == 0 && a.sufficiently_ramified && b.sufficiently_ramified;
    let summary = |r: &ramcoh_cyclotomic::TraceReport| {
        json!({ "p": r.p, "n_max": r.n_max, "samples": r.samples, "violations": r.violations,
                "checked": r.inequalities.iter().map(|i| i.checked).sum::<u64>() })
    };
    Ok((pass, json!([summary(&a), summary(&b)])))
}

pub fn ledger_replay() -> Result<(bool, Value)> {
    let mut failures = Vec::new();
    let mut count = 0;
    for parity in [Parity::Odd, Parity::Two] {
        for (id, tame) in full_registry() {
            let r = pipeline(id, &PipelineParams::new(parity).tame(tame))?;
            count += 1;
            if !r.matches {
                failures.push(format!("{id}{} p={}", if tame { " tame" } else { "" }, parity.label()));
            }
        }
    }
    Ok((failures.is_empty(), json!({ "pipelines": count, "failures": failures })))
}

pub fn decalage_suite(seed: u64, complexes: usize, a_max: u32, triples: usize) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dec_fail = Vec::new();
    for k in 0..complexes {
        let lo = rng.gen_range(-1..=1);
        let terms = rng.gen_range(1..=4);
        let c = random_complex(&mut rng, lo, terms, 4, 9);
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let a = rng.gen_range(1..=a_max.max(1));
        let eta = decalage(&c, p, a)?;
        let h = c.cohomology();
        let he = eta.cohomology();
        let agrees = c.degrees().chain(eta.degrees()).all(|i| {
            let lhs = he.get(&i).cloned().unwrap_or_else(FgModule::zero);
            let rhs = h.get(&i).map(|m| m.kill_p_torsion(p, a as u64)).unwrap_or_else(FgModule::zero);
            lhs == rhs
        });
        if !agrees {
            dec_fail.push(k);
        }
    }
    let mut tri_fail = Vec::new();
    for k in 0..triples {
        let (a1, a2, a3) = random_triple(&mut rng, 3, 2);
        if !triangle_composite_vanishing(&a1, &a2, &a3)? {
            tri_fail.push(k);
        }
    }
    Ok((
        dec_fail.is_empty() && tri_fail.is_empty(),
        json!({ "complexes": complexes, "decalage_failures": dec_fail, "triples": triples, "triangle_failures": tri_fail }),
    ))
}

pub fn lie_suite() -> Result<(bool, Value)> {
    let b2 = betti_numbers(&LieAlgebraZ::gl(2)?)?;
    let b3 = betti_numbers(&LieAlgebraZ::gl(3)?)?;
    let mut pass = b2 == [1, 1, 0, 1, 1] && b3 == [1, 1, 0, 1, 1, 1, 1, 0, 1, 1];
    let mut lazard = Vec::new();
    for n in [2usize, 3] {
        let r = lazard_check(n, 3, 2)?;
        pass &= r.ranks_match;
        lazard.push(json!({ "n": n, "p": 3, "scale_exp": 2, "ranks_match": r.ranks_match, "max_exponent": r.max_exponent }));
    }
    Ok((pass, json!({ "gl2": b2, "gl3": b3, "lazard": lazard })))
}

pub fn exterior_series() -> Result<(bool, Value)> {
    let mut pass = true;
    let mut out = Vec::new();
    for n in 1..=3usize {
        let s = theorem_a_series(n);
        let mut oracle = BTreeMap::new();
        for mask in 0u32..(1 << n) {
            let deg: i64 = (1..=n as i64).filter(|i| mask & (1 << (i - 1)) != 0).map(|i| 1 - 2 * i).sum();
            *oracle.entry(deg).or_insert(0u64) += 1;
        }
        let total: u64 = s.values().sum();
        pass &= s == oracle && total == 1 << n;
        out.push(json!({ "n": n, "total": total, "degrees": s.keys().collect::<Vec<_>>() }));
    }
    pass &= exterior_poincare(&[1]) == [(0, 1), (1, 1)].into_iter().collect();
    Ok((pass, json!(out)))
}

fn random_witt(rng: &mut ChaCha8Rng, p: u64, m: Option<u32>, len: usize) -> Result<PTypicalWitt> {
    let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
    PTypicalWitt::from_ints(p, m, &c)
}

pub fn witt_suite(seed: u64) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ghost_ok = true;
    for i in 0..200 {
        let p = [2, 3, 5][i % 3];
        let len = 1 + i % 3;
        let (u, v) = (random_witt(&mut rng, p, None, len)?, random_witt(&mut rng, p, None, len)?);
        let (gu, gv) = (u.ghost()?, v.ghost()?);
        let sum: Vec<BigInt> = gu.iter().zip(&gv).map(|(a, b)| a + b).collect();
        let prod: Vec<BigInt> = gu.iter().zip(&gv).map(|(a, b)| a * b).collect();
        ghost_ok &= u.add(&v)?.ghost()? == sum && u.mul(&v)?.ghost()? == prod;
    }
    let mut ring_ok = true;
    for i in 0..100 {
        let p = [2, 3][i % 2];
        let len = 1 + i % 3;
        let m = [None, Some(1), Some(2), Some(3)][i % 4];
        let (a, b, c) = (random_witt(&mut rng, p, m, len)?, random_witt(&mut rng, p, m, len)?, random_witt(&mut rng, p, m, len)?);
        let zero = PTypicalWitt::zero(p, m, len)?;
        let one = PTypicalWitt::one(p, m, len)?;
        ring_ok &= a.add(&b)?.add(&c)? == a.add(&b.add(&c)?)?
            && a.mul(&b)?.mul(&c)? == a.mul(&b.mul(&c)?)?
            && a.mul(&b.add(&c)?)? == a.mul(&b)?.add(&a.mul(&c)?)?
            && a.add(&b)? == b.add(&a)?
            && a.mul(&b)? == b.mul(&a)?
            && a.add(&zero)? == a
            && a.mul(&one)? == a
            && a.add(&a.neg()?)? == zero;
    }
    let mut split_ok = true;
    for f in [FiniteField::prime(2)?, FiniteField::new(3, 2)?, FiniteField::prime(5)?] {
        for _ in 0..5 {
            let mut c: Vec<u64> = (0..=64).map(|_| rng.gen_range(0..f.order())).collect();
            c[0] = 1;
            let s = UnitSeries::new(f.clone(), c)?;
            let split = series_split_p_typical(&s)?;
            split_ok &= split.p_part.is_p_typical() && split.reconstruct(64)? == s;
        }
    }
    let mut as_ok = true;
    let mut split_counts = Vec::new();
    for f in [FiniteField::new(3, 2)?, FiniteField::new(3, 3)?] {
        let mut in_base = 0;
        for _ in 0..100 {
            let a = rng.gen_range(0..f.order());
            let s = artin_schreier_solve(&f, a)?;
            as_ok &= s.verify(&f, a);
            in_base += usize::from(s.field_degree == f.degree());
        }
        split_counts.push(json!({ "q": f.order(), "inputs": 100, "root_in_base": in_base }));
    }
    Ok((
        ghost_ok && ring_ok && split_ok && as_ok,
        json!({ "ghost_homomorphism": ghost_ok, "ring_axioms": ring_ok, "split_order_64": split_ok,
                "artin_schreier": as_ok, "artin_schreier_fields": split_counts }),
    ))
}

pub fn building_suite() -> Result<(bool, Value)> {
    let mut pass = true;
    let mut balls = Vec::new();
    let mut cases: Vec<(usize, u64, u32)> = Vec::new();
    for p in [2u64, 3, 5] {
        for r in 0..=4 {
            cases.push((2, p, r));
        }
    }
    cases.extend([(3, 2, 1), (3, 3, 1)]);
    for (n, p, r) in cases {
        let ball = build_ball(n, p, r)?;
        let counts_ok = n != 2 || ball.vertices.len() as u64 == tree_ball_size(p, r);
        let mut coh = Vec::new();
        for qq in [2u64, 3] {
            let h: BTreeMap<usize, usize> =
                simplicial_cohomology(&ball, qq)?.into_iter().filter(|&(_, d)| d != 0).collect();
            pass &= h == BTreeMap::from([(0, 1)]);
            coh.push(h);
        }
        pass &= counts_ok;
        balls.push(json!({ "n": n, "p": p, "radius": r, "vertices": ball.vertices.len(), "counts_ok": counts_ok, "cohomology": coh }));
    }
    Ok((pass, json!(balls)))
}

fn random_window(rng: &mut ChaCha8Rng, p: u64, s: &BigRational, cutoff: u32) -> SeriesWindow {
    let mut w = SeriesWindow::zero(p, 1, cutoff, s.clone());
    for i in 0..=cutoff {
        if rng.gen_bool(0.2) {
            continue;
        }
        let floor = (-(s * BigInt::from(i))).ceil().to_integer();
        let extra: i64 = rng.gen_range(0..3);
        w.coeffs.insert(vec![i], ExtendedRational::Finite(BigRational::from_integer(floor + extra)));
    }
    w
}

pub fn scalar_identities(seed: u64) -> Result<(bool, Value)> {
    let mut paths_ok = true;
    for p in [3u64, 5, 7] {
        for t in (-64i64..=64).filter(|&t| t != 0) {
            let paths = one_plus_p_power_paths(p, t)?;
            paths_ok &= paths.direct == Some(paths.closed_form);
        }
    }
    let mut image_ok = true;
    for p in [3u64, 5, 7] {
        image_ok &= unit_power_image(p, 1, 4)?;
    }
    let mut fact_ok = true;
    for p in [2u64, 3, 5, 7] {
        for n in 1..=10_000u64 {
            fact_ok &= factorial_valuation(n, p)?.holds;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = frac(1, 2);
    let s = &r / rat(2);
    let mut ball_ok = true;
    for _ in 0..100 {
        let w = random_window(&mut rng, 3, &s, 40);
        ball_ok &= ball_restriction_image(3, 1, 2, &r, &w)? == BallRestriction { m: 4, verified: true };
    }
    Ok((
        paths_ok && image_ok && fact_ok && ball_ok,
        json!({ "one_plus_p_paths": paths_ok, "unit_power_image": image_ok, "factorial_bound": fact_ok, "ball_restriction": ball_ok }),
    ))
}

/// Criteria 1 to 11 followed by a determinism check that recomputes the
/// seeded criteria and compares their details.
pub fn full_suite(seed: u64) -> Vec<Check> {
    let mut checks: Vec<Check> = (1..=11).map(|id| run(id, seed)).collect();
    let seeded = [2usize, 4, 6, 9, 11];
    let differing: Vec<usize> =
        seeded.iter().copied().filter(|&id| run(id, seed).detail != checks[id - 1].detail).collect();
    checks.push(Check {
        id: "12".into(),
        name: NAMES[11].into(),
        pass: differing.is_empty(),
        detail: json!({ "recomputed": seeded, "differing": differing }),
    });
    checks
}
