//! Upper-numbering jumps of ramified `Z_p`-extensions `K_inf/K`, the step
//! different of `K_n/K_{n-1}`, and the sufficiently-ramified test
//! `v_{K_n}(D_{K_n/K_{n-1}}) >= e_K (p^n - 1) + (p - 1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use ramcoh_ramification::{
    cyclic_subgroup_profile, different_upper, lower_to_upper, profile_from_upper, tame_compose,
    FiltrationProfile, UpperStep,
};
use ramcoh_valuation::{is_prime, serde_rational, serde_rational_vec, Error, Result};

/// Jumps `-1 = u_0 <= u_1 <= ...` with `Gal^u = p^n Z_p` for `u_n < u <= u_{n+1}`.
/// Entries past the prefix continue with difference `e_K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawJumps", into = "RawJumps")]
pub struct JumpSequence {
    p: u64,
    e_k: u64,
    prefix: Vec<BigRational>,
    nstar: usize,
}

#[derive(Serialize, Deserialize)]
struct RawJumps {
    p: u64,
    #[serde(rename = "eK")]
    e_k: u64,
    #[serde(with = "serde_rational_vec")]
    prefix: Vec<BigRational>,
    #[serde(rename = "Nstar")]
    nstar: usize,
}

impl TryFrom<RawJumps> for JumpSequence {
    type Error = Error;
    fn try_from(r: RawJumps) -> Result<Self> {
        JumpSequence::new(r.p, r.e_k, r.prefix, r.nstar)
    }
}

impl From<JumpSequence> for RawJumps {
    fn from(s: JumpSequence) -> Self {
        RawJumps { p: s.p, e_k: s.e_k, prefix: s.prefix, nstar: s.nstar }
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow_q(p: u64, n: u64) -> BigRational {
    BigRational::from_integer(Pow::pow(BigInt::from(p), n))
}

impl JumpSequence {
    pub fn new(p: u64, e_k: u64, prefix: Vec<BigRational>, nstar: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if e_k == 0 {
            return Err(Error::InvalidArgument("e_K must be positive".into()));
        }
        if prefix.len() < nstar + 1 {
            return Err(Error::InvalidInput("prefix must reach the stabilization index".into()));
        }
        if prefix[0] != q(-1) {
            return Err(Error::InvalidInput("u_0 must be -1".into()));
        }
        if prefix.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidInput("jumps must be nondecreasing".into()));
        }
        let ek = q(e_k as i64);
        for n in nstar..prefix.len() - 1 {
            if prefix[n + 1] != &prefix[n] + &ek {
                return Err(Error::InvalidInput(format!(
                    "u_{} - u_{} differs from e_K after the stabilization index",
                    n + 1,
                    n
                )));
            }
        }
        Ok(JumpSequence { p, e_k, prefix, nstar })
    }

    /// Shortest encoding of an explicit list that is arithmetic with
    /// difference `e_K` from some index on.
    pub fn from_jumps(p: u64, e_k: u64, jumps: Vec<BigRational>) -> Result<Self> {
        let ek = q(e_k as i64);
        let mut nstar = jumps.len().saturating_sub(1);
        while nstar > 0 && jumps[nstar] == &jumps[nstar - 1] + &ek {
            nstar -= 1;
        }
        let prefix = jumps[..=nstar.min(jumps.len() - 1)].to_vec();
        JumpSequence::new(p, e_k, prefix, nstar)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e_k(&self) -> u64 {
        self.e_k
    }

    pub fn prefix(&self) -> &[BigRational] {
        &self.prefix
    }

    pub fn nstar(&self) -> usize {
        self.nstar
    }

    pub fn jump(&self, n: usize) -> BigRational {
        if n < self.prefix.len() {
            self.prefix[n].clone()
        } else {
            let extra = (n - self.prefix.len() + 1) as i64;
            self.prefix.last().unwrap() + q(extra * self.e_k as i64)
        }
    }

    pub fn jumps(&self, count: usize) -> Vec<BigRational> {
        (0..count).map(|n| self.jump(n)).collect()
    }

    /// Inertia index `r`: `u_0 = ... = u_r = -1`, inertia is `p^r Z_p`.
    pub fn inertia_index(&self) -> usize {
        let mut r = 0;
        while self.jump(r + 1) == q(-1) {
            r += 1;
        }
        r
    }

    /// `e_{K_n/K} = p^{n-r}` (or 1 below the inertia level).
    pub fn level_ramification(&self, n: usize) -> u64 {
        let r = self.inertia_index();
        if n <= r {
            1
        } else {
            self.p.pow((n - r) as u32)
        }
    }

    /// Upper filtration of `Gal(K_n/K) = Z/p^n` as a lower profile.
    pub fn level_profile(&self, n: usize) -> Result<FiltrationProfile> {
        let total = self.p.pow(n as u32);
        let r = self.inertia_index();
        let mut steps = Vec::new();
        if r > 0 {
            steps.push(UpperStep { v: q(-1), order: total });
        }
        for j in r.min(n)..n {
            steps.push(UpperStep { v: self.jump(j + 1), order: self.p.pow((n - j) as u32) });
        }
        profile_from_upper(total, &steps)
    }

    /// Scale the sequence by a tame index `e` (new `e_K = e * e_K`).
    pub fn tame_base_change(&self, e: u64) -> Result<JumpSequence> {
        let prefix = tame_compose(&self.prefix, e, self.p)?;
        JumpSequence::new(self.p, self.e_k * e, prefix, self.nstar)
    }
}

/// `(-1, e_L, 2e_L, ...)`, the cyclotomic tower over a tame extension of
/// `Q_p` with ramification index `e_L`.
pub fn cyclotomic_jumps(p: u64, e_l: u64) -> Result<JumpSequence> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if e_l == 0 || e_l % p == 0 {
        return Err(Error::PreconditionViolation(format!(
            "e_L = {e_l} must be positive and prime to p = {p}"
        )));
    }
    JumpSequence::new(p, e_l, vec![q(-1), q(e_l as i64)], 1)
}

/// `v_{K_n}(D_{K_n/K_{n-1}})` from the jump formula.
pub fn step_different(seq: &JumpSequence, n: usize) -> Result<BigRational> {
    let r = seq.inertia_index();
    if n == 0 || n <= r {
        return Err(Error::PreconditionViolation(format!(
            "K_{n}/K_{} is unramified (inertia index {r})",
            n.saturating_sub(1)
        )));
    }
    let p = seq.p;
    let mut sum = BigRational::zero();
    for k in 0..n {
        let du = seq.jump(k + 1) - seq.jump(k);
        sum += du * (pow_q(p, k as u64 + 1) - pow_q(p, k as u64));
    }
    Ok(sum * q(seq.level_ramification(n) as i64) / pow_q(p, n as u64))
}

/// The same quantity through cumulative differents of the finite levels.
pub fn step_different_via_profiles(seq: &JumpSequence, n: usize) -> Result<BigRational> {
    let r = seq.inertia_index();
    if n == 0 || n <= r {
        return Err(Error::PreconditionViolation("step is unramified".into()));
    }
    let top = different_upper(&seq.level_profile(n)?);
    let below = different_upper(&seq.level_profile(n - 1)?);
    Ok(top - below * q(seq.p as i64))
}

pub fn sufficiency_bound(seq: &JumpSequence, n: usize) -> BigRational {
    q(seq.e_k as i64) * (pow_q(seq.p, n as u64) - BigRational::one()) + q(seq.p as i64 - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSlack {
    pub n: usize,
    #[serde(with = "serde_rational")]
    pub different: BigRational,
    #[serde(with = "serde_rational")]
    pub bound: BigRational,
    #[serde(with = "serde_rational")]
    pub slack: BigRational,
}

/// Explicit levels plus the closed form `A + B p^n` valid beyond them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SufficiencyReport {
    pub levels: Vec<LevelSlack>,
    pub tail_from: usize,
    #[serde(with = "serde_rational")]
    pub tail_slope_slack: BigRational,
    #[serde(with = "serde_rational")]
    pub tail_constant_slack: BigRational,
    pub holds: bool,
    pub failure: Option<String>,
}

pub fn sufficiency_report(seq: &JumpSequence, n_max: usize) -> SufficiencyReport {
    let r = seq.inertia_index();
    let tail_from = seq.nstar.max(r + 1);
    let explicit = n_max.max(tail_from).max(1);
    let mut levels = Vec::new();
    let mut failure = None;
    for n in 1..=explicit {
        match step_different(seq, n) {
            Ok(d) => {
                let bound = sufficiency_bound(seq, n);
                let slack = &d - &bound;
                if slack.is_negative() && failure.is_none() {
                    failure = Some(format!("level {n}: different {d} below bound {bound}"));
                }
                levels.push(LevelSlack { n, different: d, bound, slack });
            }
            Err(e) => {
                if failure.is_none() {
                    failure = Some(format!("level {n}: {e}"));
                }
            }
        }
    }
    // for n >= tail_from: step(n) = p^{-r} (S + e_K (p^n - p^{N*}))
    let p = seq.p;
    let ek = q(seq.e_k as i64);
    let mut s = BigRational::zero();
    for k in 0..seq.nstar {
        s += (seq.jump(k + 1) - seq.jump(k)) * (pow_q(p, k as u64 + 1) - pow_q(p, k as u64));
    }
    let scale = pow_q(p, r as u64).recip();
    let slope = &ek * &scale;
    let constant = (s - &ek * pow_q(p, seq.nstar as u64)) * &scale;
    let tail_slope_slack = &slope - &ek;
    let tail_constant_slack = constant - (q(p as i64 - 1) - &ek);
    if failure.is_none() {
        let x0 = pow_q(p, explicit as u64 + 1);
        let at_x0 = &tail_slope_slack * &x0 + &tail_constant_slack;
        if tail_slope_slack.is_negative() || at_x0.is_negative() {
            failure = Some("the arithmetic tail eventually falls below the bound".into());
        }
    }
    SufficiencyReport {
        levels,
        tail_from,
        tail_slope_slack,
        tail_constant_slack,
        holds: failure.is_none(),
        failure,
    }
}

pub fn is_sufficiently_ramified(seq: &JumpSequence, n_max: usize) -> bool {
    sufficiency_report(seq, n_max).holds
}

/// Jumps of `K_inf/K_N`, read off the lower filtration of the subgroup
/// `p^N Z_p` at a finite level and converted back through its Herbrand function.
pub fn rebase(seq: &JumpSequence, big_n: usize) -> Result<JumpSequence> {
    let p = seq.p;
    let depth = seq.prefix.len() + 4;
    let m = big_n + depth;
    let full = seq.level_profile(m)?;
    let sub = cyclic_subgroup_profile(&full, p.pow(depth as u32))?;
    let mut u: Vec<BigRational> = vec![q(-1)];
    let mut prev_v = q(-1);
    for step in lower_to_upper(&sub) {
        let mut ord = step.order;
        let mut log = 0usize;
        while ord > 1 {
            ord /= p;
            log += 1;
        }
        let j = depth - log;
        while u.len() < j + 1 {
            u.push(prev_v.clone());
        }
        u.push(step.v.clone());
        prev_v = step.v;
    }
    let e_new = seq.e_k * seq.level_ramification(big_n);
    let shifted = JumpSequence::from_jumps(p, e_new, u)?;
    if shifted.nstar + 2 > depth {
        return Err(Error::InvalidInput("rebased jumps did not stabilize".into()));
    }
    Ok(shifted)
}

/// Smallest `N` for which `K_inf/K_N` is sufficiently ramified.
pub fn stabilization_shift(seq: &JumpSequence) -> Result<(usize, JumpSequence)> {
    let r = seq.inertia_index();
    let mut limit = seq.nstar.max(r + 1);
    while seq.jump(limit).is_negative() {
        limit += 1;
    }
    for big_n in 0..=limit + 1 {
        let shifted = if big_n == 0 { seq.clone() } else { rebase(seq, big_n)? };
        if is_sufficiently_ramified(&shifted, shifted.prefix.len() + 2) {
            return Ok((big_n, shifted));
        }
    }
    Err(Error::InvalidInput("no level of the tower is sufficiently ramified".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(p: u64, e: u64, js: &[i64]) -> JumpSequence {
        JumpSequence::from_jumps(p, e, js.iter().map(|&x| q(x)).collect()).unwrap()
    }

    #[test]
    fn cyclotomic_examples() {
        let c = cyclotomic_jumps(3, 1).unwrap();
        assert_eq!(c.jumps(4), [-1, 1, 2, 3].map(q).to_vec());
        let c2 = cyclotomic_jumps(3, 2).unwrap();
        assert_eq!(c2.jumps(4), [-1, 2, 4, 6].map(q).to_vec());
        assert_eq!(cyclotomic_jumps(5, 5).unwrap_err().kind(), "precondition-violation");
    }

    #[test]
    fn step_differents() {
        let c = cyclotomic_jumps(3, 1).unwrap();
        assert_eq!(step_different(&c, 1).unwrap(), q(4));
        let t = cyclotomic_jumps(3, 2).unwrap();
        assert_eq!(step_different(&t, 1).unwrap(), q(6));
        assert_eq!(step_different(&t, 2).unwrap(), q(18));
        for n in 1..=4 {
            assert_eq!(step_different_via_profiles(&t, n).unwrap(), step_different(&t, n).unwrap());
        }
    }

    #[test]
    fn sufficiency_examples() {
        let c = cyclotomic_jumps(3, 1).unwrap();
        let rep = sufficiency_report(&c, 6);
        assert!(rep.holds);
        assert!(rep.levels.iter().all(|l| l.slack.is_zero()));
        assert!(rep.tail_slope_slack.is_zero() && rep.tail_constant_slack.is_zero());
        assert!(is_sufficiently_ramified(&cyclotomic_jumps(3, 2).unwrap(), 6));
        let unr = seq(3, 1, &[-1, -1, 1, 2, 3]);
        assert!(!is_sufficiently_ramified(&unr, 5));
    }

    #[test]
    fn shifts() {
        let c = cyclotomic_jumps(3, 1).unwrap();
        assert_eq!(stabilization_shift(&c).unwrap(), (0, c.clone()));
        let t = cyclotomic_jumps(3, 2).unwrap();
        assert_eq!(stabilization_shift(&t).unwrap(), (0, t.clone()));
        let unr = seq(3, 1, &[-1, -1, 1, 2, 3]);
        let (n, shifted) = stabilization_shift(&unr).unwrap();
        assert_eq!(n, 1);
        assert_eq!(shifted.jumps(4), [-1, 1, 2, 3].map(q).to_vec());
        assert!(is_sufficiently_ramified(&shifted, 5));
    }
}
