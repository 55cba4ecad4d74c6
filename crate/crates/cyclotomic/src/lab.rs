use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use ramcoh_towers::{cyclotomic_jumps, is_sufficiently_ramified, step_different};
use ramcoh_valuation::{is_prime, Error, ExtendedRational, Result};

use crate::{phi, CycElement, GUARD};

pub const MAX_PRECISION: u32 = 96;

/// Inequality families checked per sample, in report order.
pub const FAMILIES: [&str; 4] = ["normalized-trace", "step-trace", "trace-vs-sigma", "floor-bound"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
    /// Smallest `lhs - bound` among checks whose left side was resolved
    /// exactly; `inf` if none.
    pub min_slack: ExtendedRational,
    pub seed: u64,
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub p: u64,
    pub n_max: u32,
    pub samples: u32,
    pub seed: u64,
    pub precision: u32,
    pub max_precision_used: u32,
    pub sufficiently_ramified: bool,
    pub inequalities: Vec<InequalityReport>,
    pub violations: u64,
}

#[derive(Clone, Debug)]
enum Val {
    Exact(BigRational),
    AtLeast(BigRational),
}

fn val(x: &CycElement) -> Val {
    match x.valuation() {
        Ok(ExtendedRational::Finite(v)) => Val::Exact(v),
        _ => Val::AtLeast(q(i64::from(x.precision() - GUARD))),
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn exact(v: Val) -> Option<BigRational> {
    match v {
        Val::Exact(x) => Some(x),
        Val::AtLeast(_) => None,
    }
}

struct NeedPrecision;

/// One check `lhs >= bound`: `Ok(Some(slack))`, `Ok(None)` when certified by a
/// lower bound only, `Err` when precision is insufficient.
fn compare(lhs: Val, bound: &BigRational) -> std::result::Result<Option<BigRational>, NeedPrecision> {
    match lhs {
        Val::Exact(v) => Ok(Some(v - bound)),
        Val::AtLeast(lb) if &lb >= bound => Ok(None),
        Val::AtLeast(_) => Err(NeedPrecision),
    }
}

type Outcome = (usize, Option<BigRational>);

/// `v(x - t(x)) - (v(sigma x - x) - 1 - 1/(p(p-1)))`, infinite when `x` lies
/// in the base field (both sides vanish).
pub fn trace_sigma_slack(x: &CycElement) -> Result<ExtendedRational> {
    if x.in_base_field() {
        return Ok(ExtendedRational::Infinity);
    }
    match trace_sigma_check(x) {
        Ok(Some(s)) => Ok(ExtendedRational::Finite(s)),
        Ok(None) => Err(Error::PrecisionExhausted("left side only bounded below".into())),
        Err(NeedPrecision) => Err(Error::PrecisionExhausted(format!("at precision {}", x.precision()))),
    }
}

fn sigma(p: u64) -> i64 {
    1 + p as i64
}

fn trace_sigma_check(x: &CycElement) -> std::result::Result<Option<BigRational>, NeedPrecision> {
    let p = x.p() as i64;
    let t = x.normalized_trace().map_err(|_| NeedPrecision)?;
    let lhs = x.sub(&t.embed_to(x.level()).expect("level 1 embeds")).expect("same field");
    let rhs = x.galois_act(sigma(x.p())).expect("unit").sub(x).expect("same field");
    let rv = exact(val(&rhs)).ok_or(NeedPrecision)?;
    let bound = rv - q(1) - BigRational::new(BigInt::from(1), BigInt::from(p * (p - 1)));
    compare(val(&lhs), &bound)
}

fn check_sample(x: &CycElement, diffs: &[BigRational]) -> std::result::Result<Vec<Outcome>, NeedPrecision> {
    let p = x.p();
    let mut out = Vec::new();
    let vx = exact(val(x)).ok_or(NeedPrecision)?;

    let t = x.normalized_trace().map_err(|_| NeedPrecision)?;
    out.push((0, compare(val(&t), &(vx.clone() - BigRational::new(1.into(), BigInt::from(p - 1))))?));

    let mut z = x.clone();
    while z.level() > 1 {
        let n = z.level() - 1; // z in K_n
        let vz = exact(val(&z)).ok_or(NeedPrecision)?;
        let tr = z.trace_step().map_err(|_| NeedPrecision)?;
        // floor((v_{K_n}(z) + d) / p) against v_{K_{n-1}}(tr z)
        let e_n = q(phi(p, n + 1) as i64);
        let e_n1 = q(phi(p, n) as i64);
        let num = (&vz * &e_n + &diffs[n as usize]) / q(p as i64);
        let floor = num.floor();
        let lhs = match val(&tr) {
            Val::Exact(v) => Val::Exact(v * &e_n1),
            Val::AtLeast(v) => Val::AtLeast(v * &e_n1),
        };
        out.push((3, compare(lhs, &floor)?));

        let next = z.normalized_step().map_err(|_| NeedPrecision)?;
        let bound = vz - BigRational::new(1.into(), BigInt::from(p).pow(n));
        out.push((1, compare(val(&next), &bound)?));
        z = next;
    }

    if !x.in_base_field() {
        out.push((2, trace_sigma_check(x)?));
    } else {
        out.push((2, None));
    }
    Ok(out)
}

fn sample_coeffs(p: u64, level: u32, m: u32, seed: u64, stream: u64) -> Vec<BigInt> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let bound = p.checked_pow(m).filter(|&b| b <= 1 << 62);
    (0..phi(p, level))
        .map(|_| match bound {
            Some(b) => BigInt::from(rng.gen_range(0..b)),
            None => {
                // p^m beyond u64: combine base-p digits
                let mut acc = BigInt::from(0);
                for _ in 0..m {
                    acc = acc * BigInt::from(p) + BigInt::from(rng.gen_range(0..p));
                }
                acc
            }
        })
        .collect()
}

/// Checks, on `samples` pseudorandom elements of each level `K_n`
/// (`1 <= n <= n_max`, `K_n = Q_p(zeta_{p^{n+1}})` over `K = Q_p(zeta_p)`):
///
/// * `v(t(x)) >= v(x) - 1/(p-1)`
/// * `v(t_n(x)) >= v(x) - p^{-n}` on every step down the tower
/// * `v(x - t(x)) >= v(sigma x - x) - 1 - 1/(p(p-1))` with `sigma = (zeta -> zeta^{1+p})`
/// * `v_{K_{n-1}}(tr x) >= floor((v_{K_n}(x) + d_n) / p)` on every step
///
/// Samples are independent and run in parallel; aggregation follows sample
/// order, so the report does not depend on the thread count.
pub fn verify_trace_bounds(p: u64, n_max: u32, samples: u32, precision: u32, seed: u64) -> Result<TraceReport> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("p = {p} must be an odd prime")));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    if precision <= GUARD || precision > MAX_PRECISION {
        return Err(Error::InvalidArgument(format!("precision must lie in ({GUARD}, {MAX_PRECISION}]")));
    }
    let jumps = cyclotomic_jumps(p, p - 1)?;
    let sufficiently_ramified = is_sufficiently_ramified(&jumps, n_max as usize + 2);
    if !sufficiently_ramified {
        return Err(Error::PreconditionViolation("cyclotomic tower failed the sufficiency test".into()));
    }
    let diffs: Vec<BigRational> =
        (0..=n_max as usize).map(|n| if n == 0 { q(0) } else { step_different(&jumps, n).expect("n > r") }).collect();

    let jobs: Vec<(u32, u32)> = (1..=n_max).flat_map(|n| (0..samples).map(move |s| (n, s))).collect();
    let results: Vec<Result<(u32, Vec<Outcome>)>> = jobs
        .par_iter()
        .map(|&(n, s)| {
            let stream = (u64::from(n) << 32) | u64::from(s);
            let coeffs = sample_coeffs(p, n + 1, precision, seed, stream);
            let mut m = precision;
            loop {
                let x = CycElement::new(p, n + 1, m, &coeffs)?;
                match check_sample(&x, &diffs) {
                    Ok(o) => return Ok((m, o)),
                    Err(NeedPrecision) if m * 2 <= MAX_PRECISION => m *= 2,
                    Err(NeedPrecision) => {
                        return Err(Error::PrecisionExhausted(format!(
                            "sample {s} at level n = {n} (p = {p}, seed {seed}) needs more than p^{MAX_PRECISION}"
                        )))
                    }
                }
            }
        })
        .collect();

    let mut reports: Vec<InequalityReport> = FAMILIES
        .iter()
        .map(|name| InequalityReport {
            name: name.to_string(),
            checked: 0,
            violations: 0,
            min_slack: ExtendedRational::Infinity,
            seed,
            precision,
        })
        .collect();
    let mut max_used = precision;
    for r in results {
        let (m, outcomes) = r?;
        max_used = max_used.max(m);
        for (fam, slack) in outcomes {
            let rep = &mut reports[fam];
            rep.checked += 1;
            rep.precision = rep.precision.max(m);
            if let Some(s) = slack {
                if s < q(0) {
                    rep.violations += 1;
                }
                let s = ExtendedRational::Finite(s);
                if s < rep.min_slack {
                    rep.min_slack = s;
                }
            }
        }
    }
    let violations = reports.iter().map(|r| r.violations).sum();
    Ok(TraceReport {
        p,
        n_max,
        samples,
        seed,
        precision,
        max_precision_used: max_used,
        sufficiently_ramified,
        inequalities: reports,
        violations,
    })
}
