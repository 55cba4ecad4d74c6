use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use ramcoh_valuation::serde_rational_vec;

use crate::FiltrationProfile;

/// Continuous increasing piecewise-linear bijection of `[-1, inf)`.
///
/// `slopes[k]` applies on `[breakpoints[k], breakpoints[k+1]]`; the last
/// slope continues forever.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiecewiseLinearFn {
    #[serde(with = "serde_rational_vec")]
    pub breakpoints: Vec<BigRational>,
    #[serde(with = "serde_rational_vec")]
    pub values: Vec<BigRational>,
    #[serde(with = "serde_rational_vec")]
    pub slopes: Vec<BigRational>,
}

impl PiecewiseLinearFn {
    fn from_segments(segments: Vec<(BigRational, BigRational)>) -> Self {
        // (start, slope), first start is -1 with value -1; merge equal slopes
        let mut breakpoints: Vec<BigRational> = Vec::new();
        let mut values: Vec<BigRational> = Vec::new();
        let mut slopes: Vec<BigRational> = Vec::new();
        for (start, slope) in segments {
            if let Some(last) = slopes.last() {
                if *last == slope {
                    continue;
                }
                let k = breakpoints.len() - 1;
                let v = &values[k] + last * (&start - &breakpoints[k]);
                breakpoints.push(start);
                values.push(v);
            } else {
                values.push(start.clone());
                breakpoints.push(start);
            }
            slopes.push(slope);
        }
        PiecewiseLinearFn { breakpoints, values, slopes }
    }

    fn segment(&self, x: &BigRational) -> usize {
        match self.breakpoints.iter().rposition(|b| b <= x) {
            Some(k) => k,
            None => 0,
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let k = self.segment(x);
        &self.values[k] + &self.slopes[k] * (x - &self.breakpoints[k])
    }

    pub fn inverse(&self) -> PiecewiseLinearFn {
        PiecewiseLinearFn {
            breakpoints: self.values.clone(),
            values: self.breakpoints.clone(),
            slopes: self.slopes.iter().map(|s| s.recip()).collect(),
        }
    }

    /// Integral of `1/slope` style data is not needed; this reports whether
    /// the function is the identity.
    pub fn is_identity(&self) -> bool {
        self.slopes.len() == 1 && self.slopes[0].is_one()
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `phi(u) = int_0^u dt / [G_0 : G_t]`, identity on `[-1, 0]`.
pub fn herbrand_phi(profile: &FiltrationProfile) -> PiecewiseLinearFn {
    let e = q(profile.e() as i64);
    let mut segs = vec![(q(-1), BigRational::one())];
    // on (k-1, k] the group is G_k, which only changes at breaks
    segs.push((q(0), q(profile.order_at(1) as i64) / &e));
    for &(b, o) in profile.breaks() {
        if b >= 2 {
            segs.push((q(b - 1), q(o as i64) / &e));
        }
    }
    let f = PiecewiseLinearFn::from_segments(segs);
    debug_assert!(f.slopes.iter().all(|s| *s > BigRational::zero()));
    f
}

pub fn herbrand_psi(profile: &FiltrationProfile) -> PiecewiseLinearFn {
    herbrand_phi(profile).inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ramcoh_valuation::frac;

    #[test]
    fn cyclotomic_nine() {
        let prof = FiltrationProfile::new(vec![(0, 6), (1, 3), (2, 3), (3, 1)]).unwrap();
        let phi = herbrand_phi(&prof);
        assert_eq!(phi.eval(&q(1)), frac(1, 2));
        assert_eq!(phi.eval(&q(2)), q(1));
        assert_eq!(*phi.slopes.last().unwrap(), frac(1, 6));
        let psi = herbrand_psi(&prof);
        assert_eq!(psi.eval(&frac(1, 2)), q(1));
        assert_eq!(psi.eval(&q(1)), q(2));
    }

    #[test]
    fn tame_and_unramified() {
        let tame = FiltrationProfile::new(vec![(0, 4), (1, 1)]).unwrap();
        assert_eq!(herbrand_phi(&tame).eval(&q(8)), q(2));
        assert_eq!(herbrand_psi(&tame).eval(&frac(3, 2)), q(6));
        let unr = FiltrationProfile::new(vec![(-1, 5), (0, 1)]).unwrap();
        assert!(herbrand_phi(&unr).is_identity());
        assert!(herbrand_psi(&unr).is_identity());
    }
}
