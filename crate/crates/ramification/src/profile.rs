use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use ramcoh_valuation::{is_prime, serde_rational, Error, Result};

use crate::herbrand::herbrand_phi;

/// Orders `#Gal(L/K)_u` as a right-continuous step function on integers
/// `u >= -1`. Each break `(u, order)` holds from `u` until the next break.
/// If the first break is above `-1` its order also applies below it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct FiltrationProfile {
    breaks: Vec<(i64, u64)>,
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    breaks: Vec<(i64, u64)>,
}

impl TryFrom<RawProfile> for FiltrationProfile {
    type Error = Error;
    fn try_from(r: RawProfile) -> Result<Self> {
        FiltrationProfile::new(r.breaks)
    }
}

impl From<FiltrationProfile> for RawProfile {
    fn from(p: FiltrationProfile) -> Self {
        RawProfile { breaks: p.breaks }
    }
}

/// One step of the upper filtration: the group has `order` elements on
/// `(previous v, v]`, and shrinks right after `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperStep {
    #[serde(with = "serde_rational")]
    pub v: BigRational,
    pub order: u64,
}

impl FiltrationProfile {
    pub fn new(breaks: Vec<(i64, u64)>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidInput(format!("filtration profile: {m}")));
        if breaks.is_empty() {
            return bad("no breaks");
        }
        for w in breaks.windows(2) {
            if w[1].0 <= w[0].0 {
                return bad("break positions must increase");
            }
            if w[1].1 > w[0].1 || w[0].1 % w[1].1 != 0 {
                return bad("orders must form a divisor chain");
            }
        }
        if breaks[0].0 < -1 {
            return bad("break below -1");
        }
        if breaks.iter().any(|b| b.1 == 0) {
            return bad("zero order");
        }
        if breaks.last().unwrap().1 != 1 {
            return bad("final order must be 1");
        }
        // drop repeated orders so the representation is canonical
        let mut canon: Vec<(i64, u64)> = Vec::new();
        for b in breaks {
            if canon.last().map(|c| c.1) != Some(b.1) {
                canon.push(b);
            }
        }
        if canon.len() > 1 && canon[0].0 > -1 {
            canon[0].0 = -1;
        }
        if canon.len() == 1 {
            canon[0].0 = -1;
        }
        Ok(FiltrationProfile { breaks: canon })
    }

    pub fn breaks(&self) -> &[(i64, u64)] {
        &self.breaks
    }

    /// `#Gal_u` for integer `u >= -1`.
    pub fn order_at(&self, u: i64) -> u64 {
        let mut ord = self.breaks[0].1;
        for &(b, o) in &self.breaks {
            if b <= u {
                ord = o;
            }
        }
        ord
    }

    /// `#Gal_u` for rational `u`, read at the ceiling.
    pub fn order_at_rational(&self, u: &BigRational) -> u64 {
        let c: i64 = u.ceil().to_integer().try_into().unwrap_or(i64::MAX);
        self.order_at(c.max(-1))
    }

    pub fn total_order(&self) -> u64 {
        self.order_at(-1)
    }

    pub fn e(&self) -> u64 {
        self.order_at(0)
    }

    /// First `u` from which the group is trivial.
    pub fn last_break(&self) -> i64 {
        self.breaks.last().unwrap().0
    }

    pub fn is_unramified(&self) -> bool {
        self.e() == 1
    }
}

/// Upper-numbering jumps: `Gal^v` drops right after each reported `v`.
pub fn lower_to_upper(profile: &FiltrationProfile) -> Vec<UpperStep> {
    let phi = herbrand_phi(profile);
    // the group drops right after u = (next break) - 1
    profile
        .breaks()
        .windows(2)
        .map(|w| UpperStep {
            v: phi.eval(&BigRational::from_integer((w[1].0 - 1).into())),
            order: w[0].1,
        })
        .collect()
}

/// `v_L(D_{L/K}) = sum_{i >= 0} (#Gal_i - 1)`.
pub fn different_lower(profile: &FiltrationProfile) -> u64 {
    let b = profile.breaks();
    let mut total = 0u64;
    for (k, &(u, o)) in b.iter().enumerate() {
        let end = b.get(k + 1).map(|x| x.0).unwrap_or(u);
        let start = u.max(0);
        if end > start {
            total += (end - start) as u64 * (o - 1);
        }
    }
    total
}

/// `e * int_{-1}^inf (1 - 1/#Gal^v) dv`.
pub fn different_upper(profile: &FiltrationProfile) -> BigRational {
    let mut total = BigRational::zero();
    let mut prev = BigRational::from_integer(BigInt::from(-1));
    for step in lower_to_upper(profile) {
        let len = &step.v - &prev;
        let ord = BigRational::from_integer(step.order.into());
        total += len * (BigRational::one() - ord.recip());
        prev = step.v;
    }
    total * BigRational::from_integer(profile.e().into())
}

/// Inverse of [`lower_to_upper`]: rebuild the lower profile from upper steps.
/// Steps must have strictly increasing `v >= -1` and strictly decreasing
/// orders; `total` is the order at `-1`. Lower breaks must be integral.
pub fn profile_from_upper(total: u64, steps: &[UpperStep]) -> Result<FiltrationProfile> {
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    for w in steps.windows(2) {
        if w[1].v <= w[0].v || w[1].order >= w[0].order {
            return Err(Error::InvalidInput("upper steps must be strictly monotone".into()));
        }
    }
    if let Some(s) = steps.first() {
        if s.v < minus_one || s.order > total {
            return Err(Error::InvalidInput("first upper step out of range".into()));
        }
    }
    // G^0 = first step whose right end is >= 0
    let g0 = steps
        .iter()
        .find(|s| !s.v.is_negative())
        .map(|s| s.order)
        .unwrap_or(1);
    let g0q = BigRational::from_integer(g0.into());
    // psi(v) for v >= 0: integrate [G^0 : G^w]
    let mut lower: Vec<i64> = Vec::new();
    let mut psi_prev = BigRational::zero();
    let mut v_prev = BigRational::zero();
    for s in steps {
        let l = if s.v.is_negative() {
            s.v.clone()
        } else {
            let idx = &g0q / BigRational::from_integer(s.order.into());
            let val = &psi_prev + idx * (&s.v - &v_prev);
            psi_prev = val.clone();
            v_prev = s.v.clone();
            val
        };
        if !l.is_integer() {
            return Err(Error::InvalidInput(format!(
                "upper jump {} has non-integral lower break {l}",
                s.v
            )));
        }
        lower.push(l.to_integer().try_into().unwrap());
    }
    let mut breaks = vec![(-1i64, total)];
    for (k, l) in lower.iter().enumerate() {
        let next = steps.get(k + 1).map(|s| s.order).unwrap_or(1);
        breaks.push((l + 1, next));
    }
    // a step at v = -1 only records the unramified quotient
    breaks.dedup_by(|b, a| {
        if b.0 == a.0 {
            a.1 = b.1;
            true
        } else {
            false
        }
    });
    FiltrationProfile::new(breaks)
}

/// Profile of a subgroup of order `h` in a cyclic group: `H_u = G_u ∩ H`.
pub fn cyclic_subgroup_profile(profile: &FiltrationProfile, h: u64) -> Result<FiltrationProfile> {
    if profile.total_order() % h != 0 {
        return Err(Error::InvalidArgument(format!("{h} does not divide the group order")));
    }
    let breaks = profile.breaks().iter().map(|&(u, o)| (u, o.gcd(&h))).collect();
    FiltrationProfile::new(breaks)
}

/// Profile of the quotient by the subgroup of order `h` of a cyclic group,
/// through the upper numbering (which passes to quotients).
pub fn cyclic_quotient_profile(profile: &FiltrationProfile, h: u64) -> Result<FiltrationProfile> {
    let total = profile.total_order();
    if total % h != 0 {
        return Err(Error::InvalidArgument(format!("{h} does not divide the group order")));
    }
    let mut steps: Vec<UpperStep> = Vec::new();
    for s in lower_to_upper(profile) {
        let q = s.order / s.order.gcd(&h);
        match steps.last_mut() {
            Some(last) if last.order == q => last.v = s.v,
            _ => steps.push(UpperStep { v: s.v, order: q }),
        }
    }
    steps.retain(|s| s.order > 1);
    profile_from_upper(total / h, &steps)
}

/// `Gal(Q_p(zeta_{p^n})/Q_p)` from the unit filtration `U^k`:
/// `#G_u = p^{n-k}` for `p^{k-1} <= u <= p^k - 1`.
pub fn cyclotomic_profile(p: u64, n: u32) -> Result<FiltrationProfile> {
    if !is_prime(p) || n == 0 {
        return Err(Error::InvalidArgument("need a prime p and n >= 1".into()));
    }
    let mut breaks = vec![(0i64, (p - 1) * p.pow(n - 1))];
    for k in 1..=n {
        breaks.push((p.pow(k - 1) as i64, p.pow(n - k)));
    }
    FiltrationProfile::new(breaks)
}

/// Scale every positive upper jump by a tame index `e`.
pub fn tame_compose(inner_jumps: &[BigRational], e: u64, p: u64) -> Result<Vec<BigRational>> {
    if e == 0 {
        return Err(Error::InvalidArgument("e must be positive".into()));
    }
    if e % p == 0 {
        return Err(Error::PreconditionViolation(format!("p = {p} divides e = {e}: not tame")));
    }
    let eq = BigRational::from_integer(e.into());
    Ok(inner_jumps
        .iter()
        .map(|u| if u.is_positive() { u * &eq } else { u.clone() })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ramcoh_valuation::rat;

    fn nine() -> FiltrationProfile {
        FiltrationProfile::new(vec![(0, 6), (1, 3), (2, 3), (3, 1)]).unwrap()
    }

    #[test]
    fn differents_of_q3_zeta9() {
        assert_eq!(different_lower(&nine()), 9);
        assert_eq!(different_upper(&nine()), rat(9));
        assert_eq!(cyclotomic_profile(3, 2).unwrap(), nine());
    }

    #[test]
    fn upper_jumps() {
        let up = lower_to_upper(&nine());
        let vs: Vec<_> = up.iter().map(|s| (s.v.clone(), s.order)).collect();
        assert_eq!(vs, vec![(rat(0), 6), (rat(1), 3)]);
        let tame = FiltrationProfile::new(vec![(0, 4), (1, 1)]).unwrap();
        assert_eq!(lower_to_upper(&tame), vec![UpperStep { v: rat(0), order: 4 }]);
        let unr = FiltrationProfile::new(vec![(-1, 3), (0, 1)]).unwrap();
        assert_eq!(lower_to_upper(&unr), vec![UpperStep { v: rat(-1), order: 3 }]);
        assert_eq!(different_lower(&unr), 0);
        assert_eq!(different_upper(&unr), rat(0));
    }

    #[test]
    fn tame_differents() {
        let t2 = FiltrationProfile::new(vec![(0, 2), (1, 1)]).unwrap();
        assert_eq!(different_lower(&t2), 1);
        assert_eq!(different_upper(&t2), rat(1));
    }

    #[test]
    fn round_trip_through_upper() {
        let p = nine();
        let back = profile_from_upper(p.total_order(), &lower_to_upper(&p)).unwrap();
        assert_eq!(back, p);
        let unr = FiltrationProfile::new(vec![(-1, 12), (0, 4), (3, 2), (5, 1)]).unwrap();
        let back = profile_from_upper(12, &lower_to_upper(&unr)).unwrap();
        assert_eq!(back, unr);
    }

    #[test]
    fn transitivity_through_q3_zeta3() {
        let g = nine();
        let h = cyclic_subgroup_profile(&g, 3).unwrap();
        let q = cyclic_quotient_profile(&g, 3).unwrap();
        assert_eq!(different_lower(&h), 6);
        assert_eq!(different_lower(&q), 1);
        assert_eq!(different_lower(&g), different_lower(&h) + h.e() * different_lower(&q));
    }

    #[test]
    fn tame_compose_examples() {
        let js: Vec<_> = [-1, 1, 2, 3].iter().map(|&x| rat(x)).collect();
        let out = tame_compose(&js, 2, 3).unwrap();
        assert_eq!(out, [-1, 2, 4, 6].iter().map(|&x| rat(x)).collect::<Vec<_>>());
        assert_eq!(tame_compose(&js, 1, 3).unwrap(), js);
        assert_eq!(tame_compose(&js, 3, 3).unwrap_err().kind(), "precondition-violation");
    }
}
