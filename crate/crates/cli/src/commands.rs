use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use ramcoh_building::{build_ball, build_ball_any, simplicial_cohomology, tree_ball_size};
use ramcoh_cyclotomic::verify_trace_bounds;
use ramcoh_ledger::{
    default_values, full_registry, pipeline, rows, text_table, LinExpr, Mode, Parity, PipelineParams, Symbol,
    REGISTRY,
};
use ramcoh_lie::{exterior_poincare, lie_cohomology, reflect, theorem_a_series, LieAlgebraZ};
use ramcoh_ramification::{
    cyclotomic_profile, different_lower, different_upper, herbrand_phi, herbrand_psi, lower_to_upper,
    FiltrationProfile,
};
use ramcoh_towers::{cyclotomic_jumps, step_different, sufficiency_report};
use ramcoh_valuation::{parse_rational, rat, rational_to_string, Error, Result};
use ramcoh_witt::{
    artin_schreier_solve, series_split_p_typical, AsRoot, FiniteField, PTypicalWitt, UnitSeries,
};

use crate::acceptance::{self, Check};
use crate::args::*;
use crate::quick;
use crate::report::{Outcome, RunConfig};

fn profile_from(args: &ProfileArgs, p: u64) -> Result<FiltrationProfile> {
    match &args.profile {
        Some(s) => {
            let breaks: Vec<(i64, u64)> = serde_json::from_str(s)
                .map_err(|e| Error::InvalidArgument(format!("--profile must be a JSON list of [u, order]: {e}")))?;
            FiltrationProfile::new(breaks)
        }
        None => cyclotomic_profile(p, args.n),
    }
}

pub fn different(cfg: &RunConfig, args: &ProfileArgs) -> Result<Outcome> {
    let g = profile_from(args, cfg.p)?;
    let lower = different_lower(&g);
    let upper = different_upper(&g);
    let ok = rat(lower as i64) == upper;
    let upper_jumps: Vec<Value> =
        lower_to_upper(&g).iter().map(|s| json!({ "v": rational_to_string(&s.v), "order": s.order })).collect();
    let result = json!({
        "profile": g.breaks(),
        "order": g.total_order(),
        "e": g.e(),
        "different_lower": lower,
        "different_upper": rational_to_string(&upper),
        "upper_jumps": upper_jumps,
    });
    let text = format!("different: {lower}\nlower sum: {lower}\nupper integral: {}\n", rational_to_string(&upper));
    Ok(Outcome::new(ok, result, text))
}

pub fn herbrand(cfg: &RunConfig, args: &HerbrandArgs) -> Result<Outcome> {
    let g = profile_from(&args.profile, cfg.p)?;
    let (phi, psi) = (herbrand_phi(&g), herbrand_psi(&g));
    let mut points = Vec::new();
    for s in &args.at {
        let x = parse_rational(s).map_err(|e| Error::InvalidArgument(format!("--at {s}: {e}")))?;
        if x < rat(-1) {
            return Err(Error::InvalidArgument(format!("--at {s} is below -1")));
        }
        points.push(x);
    }
    let mut ok = phi.breakpoints.iter().all(|b| psi.eval(&phi.eval(b)) == *b);
    let mut evals = Vec::new();
    let mut text = String::new();
    for x in &points {
        let (fx, gx) = (phi.eval(x), psi.eval(x));
        ok &= psi.eval(&fx) == *x && phi.eval(&gx) == *x;
        let _ = writeln!(text, "phi({x}) = {fx}  psi({x}) = {gx}");
        evals.push(json!({ "x": rational_to_string(x), "phi": rational_to_string(&fx), "psi": rational_to_string(&gx) }));
    }
    let _ = writeln!(
        text,
        "phi breakpoints: {}",
        phi.breakpoints.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
    );
    let _ = writeln!(
        text,
        "psi breakpoints: {}",
        psi.breakpoints.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
    );
    let result = json!({ "profile": g.breaks(), "phi": phi, "psi": psi, "evaluations": evals, "inverse_check": ok });
    Ok(Outcome::new(ok, result, text))
}

pub fn jumps(cfg: &RunConfig, args: &JumpsArgs) -> Result<Outcome> {
    let s = cyclotomic_jumps(cfg.p, args.e_l)?;
    let js: Vec<String> = s.jumps(args.count).iter().map(rational_to_string).collect();
    let mut steps = Vec::new();
    let mut text = format!("jumps: ({}, ...)\n", js.join(", "));
    for n in 1..=args.levels {
        let d = step_different(&s, n)?;
        let _ = writeln!(text, "step different K_{n}/K_{}: {d}", n - 1);
        steps.push(json!({ "n": n, "step_different": rational_to_string(&d) }));
    }
    let result = json!({ "p": cfg.p, "e_l": args.e_l, "sequence": s, "jumps": js, "step_differents": steps });
    Ok(Outcome::new(true, result, text))
}

pub fn suffram(cfg: &RunConfig, args: &SufframArgs) -> Result<Outcome> {
    let e_l = args.e_l.unwrap_or(if cfg.p == 2 { 1 } else { cfg.p - 1 });
    let s = cyclotomic_jumps(cfg.p, e_l)?;
    let rep = sufficiency_report(&s, args.levels);
    let mut text = String::from("level  different  bound  slack\n");
    for l in &rep.levels {
        let _ = writeln!(text, "{:<5}  {:<9}  {:<5}  {}", l.n, l.different, l.bound, l.slack);
    }
    let _ = writeln!(
        text,
        "tail from level {}: slope slack {}, constant slack {}",
        rep.tail_from, rep.tail_slope_slack, rep.tail_constant_slack
    );
    let _ = writeln!(text, "sufficiently ramified: {}", rep.holds);
    if let Some(f) = &rep.failure {
        let _ = writeln!(text, "failure: {f}");
    }
    let ok = rep.holds;
    Ok(Outcome::new(ok, json!({ "p": cfg.p, "e_l": e_l, "report": rep }), text))
}

pub fn tracelab(cfg: &RunConfig, args: &TracelabArgs) -> Result<Outcome> {
    let r = verify_trace_bounds(cfg.p, args.n_max, args.samples, cfg.precision, cfg.seed)?;
    let mut text = format!(
        "p = {}, levels 1..={}, {} samples, precision {} (max used {})\n",
        r.p, r.n_max, r.samples, r.precision, r.max_precision_used
    );
    let v = serde_json::to_value(&r).expect("report serializes");
    if let Some(list) = v["inequalities"].as_array() {
        for i in list {
            let _ = writeln!(
                text,
                "{}: checked {}, violations {}, min slack {}",
                i["name"].as_str().unwrap_or("?"),
                i["checked"],
                i["violations"],
                i["min_slack"].as_str().unwrap_or("-")
            );
        }
    }
    let _ = writeln!(text, "violations: {}", r.violations);
    let ok = r.violations == 0 && r.sufficiently_ramified;
    Ok(Outcome::new(ok, v, text))
}

fn parse_assignment(s: &str) -> Result<(Symbol, &str)> {
    let (k, v) = s.split_once('=').ok_or_else(|| Error::InvalidArgument(format!("expected SYMBOL=VALUE, got {s:?}")))?;
    Ok((k.trim().parse()?, v.trim()))
}

pub fn ledger(_cfg: &RunConfig, args: &LedgerArgs) -> Result<Outcome> {
    let parities = match args.p_parity.as_str() {
        "both" => vec![Parity::Odd, Parity::Two],
        s => vec![Parity::parse(s)?],
    };
    let mode = match args.mode {
        ModeArg::Paper => Mode::Paper,
        ModeArg::Conservative => Mode::Conservative,
    };
    let mut values = default_values();
    for s in &args.set {
        let (sym, v) = parse_assignment(s)?;
        let n: u64 = v.parse().map_err(|_| Error::InvalidArgument(format!("--set {s}: not a nonnegative integer")))?;
        values.insert(sym, n);
    }
    let mut subst: Vec<(Symbol, LinExpr)> = Vec::new();
    for s in &args.subst {
        let (sym, v) = parse_assignment(s)?;
        subst.push((sym, LinExpr::parse(v)?));
    }
    let targets: Vec<(String, bool)> = match &args.theorem {
        Some(id) => {
            if !REGISTRY.iter().any(|(k, _)| k == id) {
                return Err(Error::InvalidArgument(format!("unknown theorem id {id:?}")));
            }
            vec![(id.clone(), args.tame)]
        }
        None => full_registry().into_iter().map(|(id, t)| (id.to_string(), t)).collect(),
    };
    let mut all_rows = Vec::new();
    let mut results = Vec::new();
    let mut ok = true;
    for parity in parities {
        for (id, tame) in &targets {
            let mut params = PipelineParams::new(parity).tame(*tame).mode(mode);
            for (sym, v) in &subst {
                params = params.with(*sym, v.clone());
            }
            let r = pipeline(id, &params)?;
            // conservative counts are a diagnostic; they must only dominate paper mode
            let dominates = match mode {
                Mode::Paper => None,
                Mode::Conservative => {
                    let mut base = params.clone();
                    base.mode = Mode::Paper;
                    Some(pipeline(id, &base)?.derived.dominated_by(&r.derived))
                }
            };
            ok &= dominates.unwrap_or(r.matches);
            let rs = rows(&r, &values)?;
            let mut applied = values.clone();
            applied.insert(Symbol::Ap, u64::from(parity == Parity::Two));
            results.push(json!({
                "theorem": r.id,
                "title": r.title,
                "parity": parity.label(),
                "tame": tame,
                "mode": mode,
                "substitution": r.params.substitution,
                "numeric_values": applied,
                "derived": r.derived.to_string(),
                "stated": r.paper_stated.to_string(),
                "comparison": r.comparison,
                "match": r.matches,
                "dominates_paper": dominates,
                "steps": r.steps,
                "rows": rs,
            }));
            all_rows.extend(rs);
        }
    }
    let mut text = text_table(&all_rows, "value");
    let vals: Vec<String> = values.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(text, "values: {} (a_p follows the parity)", vals.join(" "));
    if !subst.is_empty() {
        let s: Vec<String> = subst.iter().map(|(k, v)| format!("{k} := {v}")).collect();
        let _ = writeln!(text, "substitution: {}", s.join(", "));
    }
    Ok(Outcome::new(ok, json!({ "pipelines": results }), text))
}

fn algebra(name: &str) -> Result<LieAlgebraZ> {
    match name {
        "sl2" => LieAlgebraZ::sl2(),
        s if s.starts_with("gl") => LieAlgebraZ::gl(parse_suffix(s, "gl")?),
        s if s.starts_with("heisenberg") => {
            let d = parse_suffix(s, "heisenberg")?;
            if d % 2 == 0 {
                return Err(Error::InvalidArgument("Heisenberg algebras have odd dimension".into()));
            }
            LieAlgebraZ::heisenberg(d / 2)
        }
        s if s.starts_with("abelian") => LieAlgebraZ::abelian(parse_suffix(s, "abelian")?),
        _ => Err(Error::InvalidArgument(format!("unknown algebra {name:?}"))),
    }
}

fn parse_suffix(s: &str, prefix: &str) -> Result<usize> {
    s[prefix.len()..].parse().map_err(|_| Error::InvalidArgument(format!("cannot read a dimension from {s:?}")))
}

pub fn liecoh(cfg: &RunConfig, args: &LiecohArgs) -> Result<Outcome> {
    let mut l = algebra(&args.algebra)?;
    if args.scale_exp > 0 {
        l = l.scaled(cfg.p, args.scale_exp)?;
    }
    let h = lie_cohomology(&l)?;
    let mut degrees = Vec::new();
    let mut ranks = Vec::new();
    let mut max_exponent = 0;
    let mut text = format!("{} (dimension {})\n", l.name(), l.dim());
    for (k, m) in &h {
        let exp = m.p_exponent(cfg.p);
        max_exponent = max_exponent.max(exp);
        ranks.push(m.free_rank());
        let divs: Vec<String> = m.elementary_divisors().iter().map(|d| d.to_string()).collect();
        let _ = writeln!(text, "H^{k} = {m}  (p-exponent {exp})");
        degrees.push(json!({ "degree": k, "free_rank": m.free_rank(), "torsion": divs, "p_exponent": exp }));
    }
    let expected: Option<Vec<u64>> = args.algebra.strip_prefix("gl").and_then(|n| n.parse::<i64>().ok()).map(|n| {
        let gens: Vec<i64> = (1..=n).map(|i| 2 * i - 1).collect();
        let series = exterior_poincare(&gens);
        (0..=(n * n)).map(|k| series.get(&k).copied().unwrap_or(0)).collect()
    });
    let ranks_match = expected.as_ref().map(|e| e.iter().map(|&x| x as usize).eq(ranks.iter().copied()));
    if let Some(m) = ranks_match {
        let _ = writeln!(text, "ranks match the exterior algebra: {m}");
    }
    let _ = writeln!(text, "max p-exponent: {max_exponent}");
    let result = json!({
        "algebra": l.name(),
        "dim": l.dim(),
        "scale_exp": args.scale_exp,
        "degrees": degrees,
        "ranks": ranks,
        "expected_ranks": expected,
        "ranks_match": ranks_match,
        "max_exponent": max_exponent,
    });
    Ok(Outcome::new(ranks_match.unwrap_or(true), result, text))
}

pub fn decalage(cfg: &RunConfig, args: &DecalageArgs) -> Result<Outcome> {
    if args.a == 0 {
        return Err(Error::InvalidArgument("--a must be positive".into()));
    }
    let (ok, detail) = acceptance::decalage_suite(cfg.seed, args.complexes, args.a, args.triples)?;
    let text = format!(
        "decalage: {} complexes, a up to {}, failures {}\ntriangle composites: {} triples, failures {}\n",
        args.complexes, args.a, detail["decalage_failures"], args.triples, detail["triangle_failures"]
    );
    Ok(Outcome::new(ok, detail, text))
}

pub fn btball(cfg: &RunConfig, args: &BtballArgs) -> Result<Outcome> {
    let ball = if args.any { build_ball_any(args.n, cfg.p, args.radius)? } else { build_ball(args.n, cfg.p, args.radius)? };
    let mut cohomology = BTreeMap::new();
    for &q in &args.q {
        let h: BTreeMap<usize, usize> = simplicial_cohomology(&ball, q)?.into_iter().filter(|&(_, d)| d != 0).collect();
        cohomology.insert(q.to_string(), h);
    }
    let counts: Vec<usize> = (1..=ball.max_simplex_size()).map(|k| ball.count(k)).collect();
    let tree = (args.n == 2).then(|| tree_ball_size(cfg.p, args.radius));
    let point: BTreeMap<usize, usize> = BTreeMap::from([(0, 1)]);
    let contractible = cohomology.values().all(|h| *h == point);
    let ok = tree.is_none_or(|t| t == ball.vertices.len() as u64) && (!ball.contractible_regime || contractible);
    let mut text = format!(
        "ball n={} p={} radius={}: simplices by size {:?}\n",
        args.n, cfg.p, args.radius, counts
    );
    if let Some(t) = tree {
        let _ = writeln!(text, "tree formula: {t} vertices");
    }
    for (q, h) in &cohomology {
        let _ = writeln!(text, "cohomology over F_{q}: {h:?}");
    }
    if !ball.contractible_regime {
        let _ = writeln!(text, "outside the regime where balls are known to be contractible");
    }
    let mut result = json!({
        "n": args.n, "p": cfg.p, "radius": args.radius,
        "vertices": ball.vertices.len(), "simplex_counts": counts,
        "tree_formula": tree, "cohomology": cohomology,
        "contractible_regime": ball.contractible_regime, "acyclic": contractible,
    });
    if args.export {
        result["ball"] = serde_json::to_value(&ball).expect("ball serializes");
    }
    Ok(Outcome::new(ok, result, text))
}

pub fn theorema(_cfg: &RunConfig, args: &TheoremaArgs) -> Result<Outcome> {
    if args.n == 0 {
        return Err(Error::InvalidArgument("--n must be positive".into()));
    }
    let s = theorem_a_series(args.n);
    let total: u64 = s.values().sum();
    let ok = total == 1 << args.n && reflect(&reflect(&s)) == s;
    let mut text = String::new();
    for (d, m) in s.iter().rev() {
        let _ = writeln!(text, "degree {d}: dimension {m}");
    }
    let _ = writeln!(text, "total dimension: {total}");
    let degrees: Vec<Value> = s.iter().rev().map(|(d, m)| json!({ "degree": d, "dimension": m })).collect();
    Ok(Outcome::new(ok, json!({ "n": args.n, "degrees": degrees, "total": total }), text))
}

fn coords_text(v: &[ramcoh_valuation::BigInt]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn witt(cfg: &RunConfig, args: &WittArgs) -> Result<Outcome> {
    let p = cfg.p;
    let m = args.modulus_exp;
    let need = |v: &[i64], flag: &str| -> Result<PTypicalWitt> {
        if v.is_empty() {
            return Err(Error::InvalidArgument(format!("--{flag} is required")));
        }
        PTypicalWitt::from_ints(p, m, v)
    };
    let strs = |v: &[ramcoh_valuation::BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    match args.action {
        WittAction::Suite => {
            let (ok, detail) = acceptance::witt_suite(cfg.seed)?;
            let text = format!(
                "ghost homomorphism: {}\nring axioms: {}\nsplit to order 64: {}\nartin-schreier: {}\n",
                detail["ghost_homomorphism"], detail["ring_axioms"], detail["split_order_64"], detail["artin_schreier"]
            );
            Ok(Outcome::new(ok, detail, text))
        }
        WittAction::Ghost => {
            let u = need(&args.u, "u")?;
            let g = u.ghost()?;
            let text = format!("ghost{} = {}\n", coords_text(u.coords()), coords_text(&g));
            Ok(Outcome::new(true, json!({ "u": strs(u.coords()), "ghost": strs(&g) }), text))
        }
        WittAction::Add | WittAction::Mul => {
            let (u, v) = (need(&args.u, "u")?, need(&args.v, "v")?);
            let (w, op) = if args.action == WittAction::Add { (u.add(&v)?, "+") } else { (u.mul(&v)?, "*") };
            let text = format!("{} {op} {} = {}\n", coords_text(u.coords()), coords_text(v.coords()), coords_text(w.coords()));
            let result = json!({ "u": strs(u.coords()), "v": strs(v.coords()), "modulus_exp": m, "result": strs(w.coords()) });
            Ok(Outcome::new(true, result, text))
        }
        WittAction::Split => {
            let field = FiniteField::new(p, args.k)?;
            if args.series.is_empty() {
                return Err(Error::InvalidArgument("--series is required".into()));
            }
            let f = UnitSeries::new(field, args.series.clone())?;
            let split = series_split_p_typical(&f)?;
            let ok = split.reconstruct(f.order())? == f;
            let parts: BTreeMap<String, Vec<u64>> =
                split.prime_to_p_parts.iter().map(|(n, s)| (n.to_string(), s.coeffs().to_vec())).collect();
            let mut text = format!("p-part: {:?}\n", split.p_part.coeffs());
            for (n, s) in &parts {
                let _ = writeln!(text, "n = {n}: {s:?}");
            }
            let _ = writeln!(text, "reconstruction exact: {ok}");
            let result = json!({ "order": f.order(), "p_part": split.p_part.coeffs(), "prime_to_p_parts": parts, "reconstructs": ok });
            Ok(Outcome::new(ok, result, text))
        }
        WittAction::ArtinSchreier => {
            let field = FiniteField::new(p, args.k)?;
            if !field.is_valid(args.a) {
                return Err(Error::InvalidArgument(format!("{} is not an element code of F_{}", args.a, field.order())));
            }
            let s = artin_schreier_solve(&field, args.a)?;
            let ok = s.verify(&field, args.a);
            let (root, text) = match &s.root {
                AsRoot::Base(x) => (json!({ "base": x }), format!("root {x} in F_{}\n", field.order())),
                AsRoot::Extension(v) => (
                    json!({ "extension": v }),
                    format!("no root in F_{}; root t of t^p - t - a in degree {}\n", field.order(), s.field_degree),
                ),
            };
            let result = json!({ "q": field.order(), "modulus": field.modulus(), "a": args.a, "field_degree": s.field_degree, "root": root, "verified": ok });
            Ok(Outcome::new(ok, result, text))
        }
    }
}

pub fn selftest(cfg: &RunConfig, args: &SelftestArgs) -> Result<Outcome> {
    let (level, checks): (&str, Vec<Check>) =
        if args.full { ("full", acceptance::full_suite(cfg.seed)) } else { ("quick", quick::run()) };
    let first_failure = checks.iter().find(|c| !c.pass).map(|c| format!("{} {}", c.id, c.name));
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(text, "{} {:>3} {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.name);
    }
    if let Some(f) = &first_failure {
        let _ = writeln!(text, "first failure: {f}");
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let _ = writeln!(text, "{passed}/{} passed", checks.len());
    let ok = first_failure.is_none();
    let result = json!({ "level": level, "checks": checks, "passed": passed, "first_failure": first_failure });
    Ok(Outcome::new(ok, result, text))
}

