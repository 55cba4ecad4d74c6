use ramcoh_homology::FgModule;
use ramcoh_valuation::{is_prime, Error, Result};
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebraZ;
use crate::ce::lie_cohomology;
use crate::series::{dense, exterior_poincare};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LazardReport {
    pub n: usize,
    pub p: u64,
    pub scale_exp: u32,
    pub ranks: Vec<usize>,
    pub expected_ranks: Vec<u64>,
    /// Largest exponent of `p` annihilating the torsion of `H^k`.
    pub torsion_exponents: Vec<u64>,
    /// Torsion prime to `p`, as elementary divisors, per degree.
    pub prime_to_p_torsion: Vec<Vec<String>>,
    pub max_exponent: u64,
    pub ranks_match: bool,
}

/// Cohomology of `p^s · gl_n(Z)` against the exterior algebra on
/// generators of degree `1, 3, ..., 2n-1`.
pub fn lazard_check(n: usize, p: u64, scale_exp: u32) -> Result<LazardReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n > 3 {
        return Err(Error::ResourceLimit(format!("gl_{n} is too large")));
    }
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    if scale_exp == 0 {
        return Err(Error::PreconditionViolation("scale exponent must be at least 1".into()));
    }
    let l = LieAlgebraZ::gl(n)?.scaled(p, scale_exp)?;
    let h = lie_cohomology(&l)?;
    let ranks: Vec<usize> = h.values().map(FgModule::free_rank).collect();
    let gens: Vec<i64> = (1..=n as i64).map(|i| 2 * i - 1).collect();
    let expected_ranks = dense(&exterior_poincare(&gens), l.dim());
    let torsion_exponents: Vec<u64> = h.values().map(|m| m.p_exponent(p)).collect();
    let prime_to_p_torsion = h
        .values()
        .map(|m| {
            m.elementary_divisors()
                .iter()
                .map(|d| {
                    let mut d = d.clone();
                    while (&d % p) == 0u32.into() {
                        d /= p;
                    }
                    d
                })
                .filter(|d| *d > 1u32.into())
                .map(|d| d.to_string())
                .collect()
        })
        .collect();
    let ranks_match = ranks.iter().zip(&expected_ranks).all(|(a, b)| *a as u64 == *b);
    Ok(LazardReport {
        n,
        p,
        scale_exp,
        max_exponent: torsion_exponents.iter().copied().max().unwrap_or(0),
        ranks,
        expected_ranks,
        torsion_exponents,
        prime_to_p_torsion,
        ranks_match,
    })
}
