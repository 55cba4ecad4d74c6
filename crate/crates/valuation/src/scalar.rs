use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::{Error, ExtendedRational, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

/// Valuation of a nonzero integer, `None` for zero.
pub fn vp_int(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

pub fn vp_u64(mut x: u64, p: u64) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Some(v)
}

/// Exact p-adic valuation of a rational.
pub fn vp(x: &BigRational, p: u64) -> Result<ExtendedRational> {
    check_prime(p)?;
    match vp_int(x.numer(), p) {
        None => Ok(ExtendedRational::Infinity),
        Some(a) => {
            let b = vp_int(x.denom(), p).unwrap_or(0);
            Ok(ExtendedRational::from_int(a as i64 - b as i64))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialBound {
    pub v: BigRational,
    pub bound: BigRational,
    pub holds: bool,
}

/// Legendre's formula against the bound `(n-1)/(p-1)`.
pub fn factorial_valuation(n: u64, p: u64) -> Result<FactorialBound> {
    check_prime(p)?;
    let mut v = 0u64;
    let mut q = n / p;
    while q > 0 {
        v += q;
        q /= p;
    }
    let v = BigRational::from_integer(BigInt::from(v));
    let bound = BigRational::new(BigInt::from(n as i64 - 1), BigInt::from(p - 1));
    let holds = v <= bound;
    Ok(FactorialBound { v, bound, holds })
}

/// Both computations of `v_p((1+p)^t - 1)`; `direct` is absent for `|t| > 64`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerPaths {
    pub direct: Option<u64>,
    pub closed_form: u64,
}

pub fn one_plus_p_power_paths(p: u64, t: i64) -> Result<PowerPaths> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidArgument("p must be odd".into()));
    }
    if t == 0 {
        return Err(Error::InvalidArgument("t = 0: (1+p)^0 - 1 vanishes".into()));
    }
    let closed_form = 1 + vp_u64(t.unsigned_abs(), p).unwrap();
    let direct = if t.unsigned_abs() <= 64 {
        let base = BigRational::from_integer(BigInt::from(1 + p));
        let pw = if t > 0 {
            Pow::pow(&base, t.unsigned_abs())
        } else {
            Pow::pow(&base.recip(), t.unsigned_abs())
        };
        let diff = pw - BigRational::one();
        match vp(&diff, p)? {
            ExtendedRational::Finite(q) => Some(q.to_integer().try_into().unwrap()),
            ExtendedRational::Infinity => unreachable!("(1+p)^t = 1 only for t = 0"),
        }
    } else {
        None
    };
    Ok(PowerPaths { direct, closed_form })
}

/// `v_p((1+p)^t - 1)`; fails loudly if the two computations disagree.
pub fn one_plus_p_power_valuation(p: u64, t: i64) -> Result<u64> {
    let paths = one_plus_p_power_paths(p, t)?;
    if let Some(d) = paths.direct {
        assert_eq!(d, paths.closed_form, "expansion and closed form disagree");
    }
    Ok(paths.closed_form)
}

/// Whether `{(1 + p^i a)^p mod p^prec}` is exactly `1 + p^{i+1} Z_p mod p^prec`.
pub fn unit_power_image(p: u64, i: u32, precision: u32) -> Result<bool> {
    check_prime(p)?;
    // i > 1/(p-1)
    if i == 0 || (p == 2 && i < 2) {
        return Err(Error::PreconditionViolation(format!(
            "need i > 1/(p-1), got i = {i} for p = {p}"
        )));
    }
    if precision < i + 2 {
        return Err(Error::InvalidArgument("precision must be at least i + 2".into()));
    }
    let modulus = BigInt::from(p).pow(precision);
    let pi = BigInt::from(p).pow(i);
    let count = BigInt::from(p).pow(precision - i);
    if count > BigInt::from(1u64 << 24) {
        return Err(Error::ResourceLimit("enumeration larger than 2^24".into()));
    }
    let count: u64 = count.try_into().unwrap();
    let image: BTreeSet<BigInt> = (0..count)
        .map(|a| (BigInt::one() + &pi * a).modpow(&BigInt::from(p), &modulus))
        .collect();
    let step = &pi * p;
    let target: BTreeSet<BigInt> = (0..count / p)
        .map(|b| (BigInt::one() + &step * b) % &modulus)
        .collect();
    Ok(image == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{frac, rat};

    #[test]
    fn valuation_examples() {
        assert_eq!(vp(&rat(18), 3).unwrap(), 2.into());
        assert_eq!(vp(&rat(0), 5).unwrap(), ExtendedRational::Infinity);
        assert_eq!(vp(&rat(4095), 3).unwrap(), 2.into());
        assert_eq!(vp(&frac(5, 27), 3).unwrap(), (-3).into());
        assert_eq!(vp(&rat(4), 4).unwrap_err().kind(), "invalid-argument");
    }

    #[test]
    fn factorial_examples() {
        let f = factorial_valuation(9, 3).unwrap();
        assert_eq!((f.v, f.bound, f.holds), (rat(4), rat(4), true));
        let f = factorial_valuation(1, 5).unwrap();
        assert_eq!((f.v, f.bound, f.holds), (rat(0), rat(0), true));
        let f = factorial_valuation(10, 2).unwrap();
        assert_eq!((f.v, f.bound, f.holds), (rat(8), rat(9), true));
    }

    #[test]
    fn one_plus_p_examples() {
        assert_eq!(one_plus_p_power_valuation(3, 1).unwrap(), 1);
        assert_eq!(one_plus_p_power_valuation(3, 6).unwrap(), 2);
        assert_eq!(one_plus_p_power_valuation(5, 25).unwrap(), 3);
        assert_eq!(one_plus_p_power_valuation(3, -9).unwrap(), 3);
        assert!(one_plus_p_power_valuation(3, 0).is_err());
    }

    #[test]
    fn unit_power_examples() {
        assert!(unit_power_image(3, 1, 4).unwrap());
        assert!(unit_power_image(5, 1, 3).unwrap());
        assert_eq!(unit_power_image(2, 1, 5).unwrap_err().kind(), "precondition-violation");
        assert!(unit_power_image(2, 2, 6).unwrap());
    }
}
