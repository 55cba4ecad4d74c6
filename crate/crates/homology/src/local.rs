use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use ramcoh_valuation::{is_prime, vp_int, Error, Result};

use crate::{snf, FgModule, IntMatrix};

/// Exponents of the Smith divisors of `a` over `Z/p^m`, ascending; `None`
/// marks a divisor that vanishes mod `p^m`.
pub fn local_snf_exponents(a: &IntMatrix, p: u64, m: u32) -> Vec<Option<u32>> {
    let pm = num_traits::pow(BigInt::from(p), m as usize);
    let pb = BigInt::from(p);
    let mut w = a.reduce_mod(&pm);
    let n = w.rows().min(w.cols());
    let mut out = Vec::with_capacity(n);
    let val = |x: &BigInt| -> Option<u32> { vp_int(x, p).map(|v| v as u32) };
    for k in 0..n {
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for i in k..w.rows() {
            for j in k..w.cols() {
                if let Some(v) = val(w.get(i, j)) {
                    if best.map_or(true, |b| v < b.2) {
                        best = Some((i, j, v));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else {
            out.extend(std::iter::repeat(None).take(n - k));
            break;
        };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        let pv = num_traits::pow(pb.clone(), v as usize);
        let unit = w.get(k, k) / &pv;
        let inv = unit.extended_gcd(&pm).x.mod_floor(&pm);
        for i in k + 1..w.rows() {
            if w.get(i, k).is_zero() {
                continue;
            }
            let c = (-(w.get(i, k) / &pv) * &inv).mod_floor(&pm);
            w.add_row_multiple(i, k, &c);
            for j in k..w.cols() {
                let x = w.get(i, j).mod_floor(&pm);
                w.set(i, j, x);
            }
        }
        for j in k + 1..w.cols() {
            w.set(k, j, BigInt::zero());
        }
        out.push(Some(v));
    }
    out.sort_by_key(|e| e.unwrap_or(u32::MAX));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeTorsionSplit {
    pub rank: usize,
    pub torsion_exponents: Vec<u64>,
    pub max_exponent: u64,
}

/// `M = Z_(p)^rows / (columns of the presentation)` as free part plus
/// p-power torsion.
pub fn split_free_torsion(presentation: &IntMatrix, p: u64) -> Result<FreeTorsionSplit> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let (divs, rank) = snf(presentation);
    let mut torsion_exponents: Vec<u64> = divs.iter().filter_map(|d| vp_int(d, p)).filter(|&e| e > 0).collect();
    torsion_exponents.sort_unstable();
    let max_exponent = torsion_exponents.last().copied().unwrap_or(0);
    Ok(FreeTorsionSplit { rank: presentation.rows() - rank, torsion_exponents, max_exponent })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoTermCohomology {
    pub h0: FgModule,
    pub h1: FgModule,
}

/// Cohomology of `M --(op - lambda)--> M` for `M = Z_p^n`, with `op` known
/// mod `p^m` and `lambda = 1 + p^r u` (`r = None` means `lambda = 1`).
pub fn two_term_cohomology(op: &IntMatrix, p: u64, m: u32, r: Option<u32>, u: &BigInt) -> Result<TwoTermCohomology> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if op.rows() != op.cols() {
        return Err(Error::InvalidInput("operator must be square".into()));
    }
    let pm = num_traits::pow(BigInt::from(p), m as usize);
    let n = op.rows();
    let lambda = match r {
        Some(r) => {
            if m <= r + 2 {
                return Err(Error::PreconditionViolation(format!("precision {m} must exceed r + 2 = {}", r + 2)));
            }
            if (u % BigInt::from(p)).is_zero() {
                return Err(Error::InvalidArgument("u must be a unit".into()));
            }
            BigInt::one() + num_traits::pow(BigInt::from(p), r as usize) * u
        }
        None => {
            if (op - &IntMatrix::identity(n)).reduce_mod(&pm).is_zero() {
                return Err(Error::PreconditionViolation("trivial character on a trivial module".into()));
            }
            BigInt::one()
        }
    };
    let a = op - &IntMatrix::scalar(n, &lambda);
    let exps = local_snf_exponents(&a, p, m);
    let mut orders = Vec::new();
    for e in exps {
        match e {
            Some(e) if e + 1 < m => orders.push(num_traits::pow(BigInt::from(p), e as usize)),
            _ => {
                return Err(Error::PrecisionExhausted(format!(
                    "elementary divisor reaches p^{} at precision {m}",
                    m - 1
                )))
            }
        }
    }
    Ok(TwoTermCohomology { h0: FgModule::zero(), h1: FgModule::from_cyclic(0, &orders) })
}
