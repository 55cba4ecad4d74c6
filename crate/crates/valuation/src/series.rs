use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::{Error, ExtendedRational, Result};

/// A truncated power series in `num_vars` variables over a discretely valued
/// field, recorded by coefficient valuations (normalized `v(uniformizer) = 1`).
///
/// The element belongs to the closed ball of radius `|uniformizer|^{s_exp}`:
/// `v(b_i) >= -|i| * s_exp` for every stored index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesWindow {
    pub p: u64,
    pub num_vars: usize,
    pub degree_cutoff: u32,
    pub s_exp: BigRational,
    pub coeffs: BTreeMap<Vec<u32>, ExtendedRational>,
}

impl SeriesWindow {
    pub fn zero(p: u64, num_vars: usize, degree_cutoff: u32, s_exp: BigRational) -> Self {
        SeriesWindow { p, num_vars, degree_cutoff, s_exp, coeffs: BTreeMap::new() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_vars == 0 || self.num_vars > 3 {
            return Err(Error::InvalidInput("num_vars must be 1, 2 or 3".into()));
        }
        if self.degree_cutoff > 64 {
            return Err(Error::InvalidInput("degree cutoff above 64".into()));
        }
        if self.s_exp.is_negative() {
            return Err(Error::InvalidInput("negative s_exp".into()));
        }
        for (idx, v) in &self.coeffs {
            if idx.len() != self.num_vars {
                return Err(Error::InvalidInput(format!("multi-index {idx:?} has wrong arity")));
            }
            let deg: u32 = idx.iter().sum();
            if deg > self.degree_cutoff {
                return Err(Error::InvalidInput(format!("multi-index {idx:?} beyond cutoff")));
            }
            if let ExtendedRational::Finite(q) = v {
                if !q.is_integer() {
                    return Err(Error::InvalidInput(format!(
                        "coefficient valuation {q} is not in the value group"
                    )));
                }
                let floor = -(&self.s_exp * BigInt::from(deg));
                if *q < floor {
                    return Err(Error::InvalidInput(format!(
                        "coefficient at {idx:?} has valuation {q} below -|i|*s"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallRestriction {
    pub m: u64,
    pub verified: bool,
}

fn ceil_div(q: &BigRational) -> u64 {
    let c = q.ceil().to_integer();
    c.try_into().expect("M fits in u64")
}

/// Checks that the image of `window` in `H^0(B_r, O^+)/uniformizer^j` lies
/// in the span of the `T^i` with `|i| < M`, where `M = ceil((1+j)/r_exp)`.
pub fn ball_restriction_image(
    p: u64,
    j: u32,
    j_prime: u32,
    r_exp: &BigRational,
    window: &SeriesWindow,
) -> Result<BallRestriction> {
    if !r_exp.is_positive() {
        return Err(Error::InvalidArgument("r_exp must be positive".into()));
    }
    if j_prime < j {
        return Err(Error::InvalidArgument("j' must be at least j".into()));
    }
    if window.p != p {
        return Err(Error::InvalidInput("window prime differs from p".into()));
    }
    window.validate()?;
    let jq = BigRational::from_integer(BigInt::from(j));
    if window.s_exp > r_exp / (&jq + BigRational::one()) {
        return Err(Error::InvalidInput("window radius outside s >= r^(1/(j+1))".into()));
    }
    let m = ceil_div(&((BigRational::one() + &jq) / r_exp));
    let verified = window_lands_in_span(window, j, r_exp, m);
    Ok(BallRestriction { m, verified })
}

/// Both coefficient conditions for a candidate `M`.
fn window_lands_in_span(window: &SeriesWindow, j: u32, r_exp: &BigRational, m: u64) -> bool {
    let jq = BigRational::from_integer(BigInt::from(j));
    window.coeffs.iter().all(|(idx, v)| {
        let deg: u64 = idx.iter().map(|&x| x as u64).sum();
        let v = match v {
            ExtendedRational::Infinity => return true,
            ExtendedRational::Finite(q) => q,
        };
        if deg < m {
            !v.is_negative()
        } else {
            v - &jq + r_exp * BigInt::from(deg) >= BigRational::zero()
        }
    })
}

/// The one-variable witness `T^{M-1}` (unit coefficient) and whether it
/// lies outside the span claimed with `M - 1` in place of `M`.
pub fn ball_restriction_witness(j: u32, r_exp: &BigRational) -> Option<(SeriesWindow, bool)> {
    let jq = BigRational::from_integer(BigInt::from(j));
    let m = ceil_div(&((BigRational::one() + &jq) / r_exp));
    if m == 0 {
        return None;
    }
    let deg = (m - 1) as u32;
    let s_exp = r_exp / (&jq + BigRational::one());
    // integral valuation allowed by the ball: ceil(-(M-1) s)
    let floor = -(&s_exp * BigInt::from(deg));
    let v = floor.ceil();
    let mut w = SeriesWindow::zero(0, 1, deg, s_exp);
    w.coeffs.insert(vec![deg], ExtendedRational::Finite(v.clone()));
    let defeated = !window_lands_in_span(&w, j, r_exp, m - 1);
    Some((w, defeated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{frac, rat};

    #[test]
    fn zero_series() {
        let w = SeriesWindow::zero(3, 1, 4, rat(0));
        let r = ball_restriction_image(3, 0, 0, &rat(1), &w).unwrap();
        assert_eq!(r, BallRestriction { m: 1, verified: true });
    }

    #[test]
    fn half_radius() {
        let mut w = SeriesWindow::zero(3, 1, 20, frac(1, 4));
        for i in 0..=20u32 {
            let v = -(frac(i as i64, 4).floor());
            w.coeffs.insert(vec![i], v.into());
        }
        let r = ball_restriction_image(3, 1, 1, &frac(1, 2), &w).unwrap();
        assert_eq!(r, BallRestriction { m: 4, verified: true });
    }

    #[test]
    fn rejects_window_outside_ball() {
        let mut w = SeriesWindow::zero(3, 1, 4, frac(1, 4));
        w.coeffs.insert(vec![1], rat(-1).into());
        let e = ball_restriction_image(3, 1, 1, &frac(1, 2), &w).unwrap_err();
        assert_eq!(e.kind(), "invalid-input");
    }

    #[test]
    fn witness_defeats_smaller_m_when_radius_is_large() {
        let (_, defeated) = ball_restriction_witness(2, &frac(3, 2)).unwrap();
        assert!(defeated);
    }
}
