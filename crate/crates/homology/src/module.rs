use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use ramcoh_valuation::vp_int;

use crate::{snf, IntMatrix};

/// `Z^free_rank + sum Z/d_k` with `d_1 | d_2 | ...`, all `d_k > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawModule", into = "RawModule")]
pub struct FgModule {
    free_rank: usize,
    elementary_divisors: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawModule {
    free_rank: usize,
    elementary_divisors: Vec<String>,
}

impl TryFrom<RawModule> for FgModule {
    type Error = String;
    fn try_from(r: RawModule) -> Result<Self, String> {
        let ds = r
            .elementary_divisors
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| format!("bad divisor {s:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if ds.iter().any(|d| d <= &BigInt::one()) || ds.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err("elementary divisors must be > 1 and form a divisibility chain".into());
        }
        Ok(FgModule { free_rank: r.free_rank, elementary_divisors: ds })
    }
}

impl From<FgModule> for RawModule {
    fn from(m: FgModule) -> Self {
        RawModule {
            free_rank: m.free_rank,
            elementary_divisors: m.elementary_divisors.iter().map(ToString::to_string).collect(),
        }
    }
}

impl FgModule {
    pub fn zero() -> Self {
        FgModule { free_rank: 0, elementary_divisors: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        FgModule { free_rank: rank, elementary_divisors: vec![] }
    }

    /// Any list of cyclic orders; zeros count as free summands, units are
    /// dropped, and the rest is brought to invariant-factor form.
    pub fn from_cyclic(free_rank: usize, orders: &[BigInt]) -> Self {
        let zeros = orders.iter().filter(|d| d.is_zero()).count();
        let ds: Vec<BigInt> = orders.iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
        let canon = if ds.windows(2).all(|w| (&w[1] % &w[0]).is_zero()) {
            ds
        } else {
            snf(&IntMatrix::diagonal(&ds)).0
        };
        FgModule {
            free_rank: free_rank + zeros,
            elementary_divisors: canon.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn elementary_divisors(&self) -> &[BigInt] {
        &self.elementary_divisors
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.elementary_divisors.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// Largest `k` with a `Z/p^k` summand in the p-primary part (0 if none).
    pub fn p_exponent(&self, p: u64) -> u64 {
        self.elementary_divisors.iter().map(|d| vp_int(d, p).unwrap_or(0)).max().unwrap_or(0)
    }

    /// Exponents of the p-primary cyclic summands, ascending.
    pub fn p_exponents(&self, p: u64) -> Vec<u64> {
        self.elementary_divisors.iter().filter_map(|d| vp_int(d, p)).filter(|&e| e > 0).collect()
    }

    /// `M / M[p^a]`: each `Z/(p^e m)` becomes `Z/(p^{e - min(a, e)} m)`.
    pub fn kill_p_torsion(&self, p: u64, a: u64) -> Self {
        let pb = BigInt::from(p);
        let orders: Vec<BigInt> = self
            .elementary_divisors
            .iter()
            .map(|d| {
                let e = vp_int(d, p).unwrap_or(0).min(a);
                d / num_traits::pow(pb.clone(), e as usize)
            })
            .collect();
        FgModule::from_cyclic(self.free_rank, &orders)
    }

    /// Dimension of `M / ell M` over `F_ell`.
    pub fn mod_rank(&self, ell: u64) -> usize {
        let l = BigInt::from(ell);
        self.free_rank + self.elementary_divisors.iter().filter(|d| (*d % &l).is_zero()).count()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.elementary_divisors.iter().product()
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.elementary_divisors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}
