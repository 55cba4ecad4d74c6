//! Exact rational arithmetic with a point at infinity, p-adic valuations on
//! `Q`, and a handful of scalar valuation identities.
//!
//! Valuations are normalized so that `v(p) = 1`.

mod error;
mod ext;
mod scalar;
mod series;

pub use error::{Error, Result};
pub use ext::{parse_rational, rational_to_string, serde_rational, serde_rational_vec, ExtendedRational};
pub use scalar::{
    factorial_valuation, is_prime, one_plus_p_power_paths, one_plus_p_power_valuation,
    unit_power_image, vp, vp_int, vp_u64, FactorialBound, PowerPaths,
};
pub use series::{ball_restriction_image, ball_restriction_witness, BallRestriction, SeriesWindow};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
