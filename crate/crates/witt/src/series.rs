use std::collections::BTreeMap;

use ramcoh_valuation::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::field::{FiniteField, Fq};

pub const MAX_ORDER: usize = 256;

/// `1 + a_1 x + ... + a_T x^T` over a finite field, truncated at `x^{T+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSeries {
    field: FiniteField,
    /// `coeffs[0] == 1`; length `T + 1`.
    coeffs: Vec<Fq>,
}

impl UnitSeries {
    pub fn new(field: FiniteField, coeffs: Vec<Fq>) -> Result<Self> {
        if coeffs.first() != Some(&1) {
            return Err(Error::InvalidInput("constant coefficient must be 1".into()));
        }
        if coeffs.len() > MAX_ORDER + 1 {
            return Err(Error::ResourceLimit(format!("truncation order above {MAX_ORDER}")));
        }
        if coeffs.iter().any(|&c| !field.is_valid(c)) {
            return Err(Error::InvalidInput("coefficient outside the field".into()));
        }
        Ok(UnitSeries { field, coeffs })
    }

    pub fn one(field: FiniteField, order: usize) -> Result<Self> {
        let mut c = vec![0; order + 1];
        c[0] = 1;
        Self::new(field, c)
    }

    /// `Π_m (1 + a_m x^m)` truncated at order `T`.
    pub fn from_coordinates(field: FiniteField, order: usize, a: &BTreeMap<usize, Fq>) -> Result<Self> {
        let mut f = Self::one(field, order)?;
        for (&m, &c) in a {
            if m == 0 {
                return Err(Error::InvalidInput("coordinates start at index 1".into()));
            }
            if m <= order && c != 0 {
                f.mul_binomial(m, c);
            }
        }
        Ok(f)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.order() != other.order() {
            return Err(Error::InvalidArgument("series over different fields or orders".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let t = self.order();
        let mut out = vec![0; t + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..=t - i].iter().enumerate() {
                if b != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Ok(UnitSeries { field: self.field.clone(), coeffs: out })
    }

    pub fn inverse(&self) -> Self {
        let f = &self.field;
        let t = self.order();
        let mut out = vec![0; t + 1];
        out[0] = 1;
        for n in 1..=t {
            let mut s = 0;
            for i in 1..=n {
                s = f.add(s, f.mul(self.coeffs[i], out[n - i]));
            }
            out[n] = f.neg(s);
        }
        UnitSeries { field: self.field.clone(), coeffs: out }
    }

    /// `g(x^n)` truncated at `order`.
    pub fn substitute_power(&self, n: usize, order: usize) -> Self {
        let mut out = vec![0; order + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i * n > order {
                break;
            }
            out[i * n] = c;
        }
        UnitSeries { field: self.field.clone(), coeffs: out }
    }

    fn mul_binomial(&mut self, m: usize, c: Fq) {
        let f = &self.field;
        for i in (m..self.coeffs.len()).rev() {
            let add = f.mul(c, self.coeffs[i - m]);
            self.coeffs[i] = f.add(self.coeffs[i], add);
        }
    }

    fn div_binomial(&mut self, m: usize, c: Fq) {
        let f = &self.field;
        for i in m..self.coeffs.len() {
            let sub = f.mul(c, self.coeffs[i - m]);
            self.coeffs[i] = f.sub(self.coeffs[i], sub);
        }
    }

    /// The unique `a_1..a_T` with `f = Π (1 + a_m x^m)` mod `x^{T+1}`,
    /// peeled off from the lowest exponent upward.
    pub fn coordinates(&self) -> BTreeMap<usize, Fq> {
        let mut r = self.clone();
        let mut out = BTreeMap::new();
        for m in 1..=self.order() {
            let c = r.coeffs[m];
            if c != 0 {
                out.insert(m, c);
                r.div_binomial(m, c);
            }
        }
        out
    }

    /// True when every nonzero coordinate sits at a power of `p`.
    pub fn is_p_typical(&self) -> bool {
        let p = self.field.p() as usize;
        self.coordinates().keys().all(|&m| prime_to_p_part(m, p).0 == 1)
    }
}

/// `m = n·p^j` with `p ∤ n`; returns `(n, j)`.
pub fn prime_to_p_part(mut m: usize, p: usize) -> (usize, u32) {
    let mut j = 0;
    while m % p == 0 {
        m /= p;
        j += 1;
    }
    (m, j)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PTypicalSplit {
    pub p_part: UnitSeries,
    /// `n ↦ g_n`, a p-typical series in `y` truncated at `⌊T/n⌋`; only
    /// nontrivial factors are listed.
    pub prime_to_p_parts: BTreeMap<usize, UnitSeries>,
}

impl PTypicalSplit {
    /// `p_part(x) · Π g_n(x^n)` at order `order`.
    pub fn reconstruct(&self, order: usize) -> Result<UnitSeries> {
        let mut f = self.p_part.clone();
        for (&n, g) in &self.prime_to_p_parts {
            f = f.mul(&g.substitute_power(n, order))?;
        }
        Ok(f)
    }
}

/// Splits `f = p_part(x) · Π_{p∤n, n>1} g_n(x^n)` with every factor p-typical,
/// by grouping the coordinates `a_{n p^j}` by `n`.
pub fn series_split_p_typical(f: &UnitSeries) -> Result<PTypicalSplit> {
    let p = f.field.p() as usize;
    let t = f.order();
    let mut groups: BTreeMap<usize, BTreeMap<usize, Fq>> = BTreeMap::new();
    for (m, c) in f.coordinates() {
        let (n, j) = prime_to_p_part(m, p);
        groups.entry(n).or_default().insert(p.pow(j), c);
    }
    let p_part = UnitSeries::from_coordinates(f.field.clone(), t, &groups.remove(&1).unwrap_or_default())?;
    let prime_to_p_parts = groups
        .into_iter()
        .map(|(n, a)| Ok((n, UnitSeries::from_coordinates(f.field.clone(), t / n, &a)?)))
        .collect::<Result<_>>()?;
    Ok(PTypicalSplit { p_part, prime_to_p_parts })
}
