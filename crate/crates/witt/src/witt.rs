use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use ramcoh_valuation::{is_prime, Error, Result};

pub const MAX_LENGTH: usize = 16;

/// Bit budget for exact ghost components over Z.
const EXACT_BIT_LIMIT: u64 = 1 << 22;

/// A length-`n` p-typical Witt vector with coordinates in Z (`modulus_exp`
/// is `None`) or in Z/p^m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTypicalWitt {
    p: u64,
    modulus_exp: Option<u32>,
    coords: Vec<BigInt>,
}

impl PTypicalWitt {
    pub fn new(p: u64, modulus_exp: Option<u32>, coords: Vec<BigInt>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if coords.is_empty() || coords.len() > MAX_LENGTH {
            return Err(Error::InvalidArgument(format!("length must be in 1..={MAX_LENGTH}")));
        }
        if modulus_exp == Some(0) {
            return Err(Error::InvalidArgument("Z/p^0 is the zero ring".into()));
        }
        let mut w = PTypicalWitt { p, modulus_exp, coords };
        w.reduce();
        Ok(w)
    }

    pub fn from_ints(p: u64, modulus_exp: Option<u32>, coords: &[i64]) -> Result<Self> {
        Self::new(p, modulus_exp, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(p: u64, modulus_exp: Option<u32>, len: usize) -> Result<Self> {
        Self::new(p, modulus_exp, vec![BigInt::zero(); len])
    }

    pub fn one(p: u64, modulus_exp: Option<u32>, len: usize) -> Result<Self> {
        Self::teichmuller(p, modulus_exp, len, BigInt::one())
    }

    /// `τ(a) = (a, 0, 0, ...)`.
    pub fn teichmuller(p: u64, modulus_exp: Option<u32>, len: usize, a: BigInt) -> Result<Self> {
        let mut c = vec![BigInt::zero(); len];
        c[0] = a;
        Self::new(p, modulus_exp, c)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn modulus_exp(&self) -> Option<u32> {
        self.modulus_exp
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    fn reduce(&mut self) {
        if let Some(m) = self.modulus_exp {
            let pm = BigInt::from(self.p).pow(m);
            for c in &mut self.coords {
                *c = ((&*c % &pm) + &pm) % &pm;
            }
        }
    }

    /// Exact ghost components `w_n = Σ_{i≤n} p^i a_i^{p^{n-i}}`; integer
    /// coordinates only.
    pub fn ghost(&self) -> Result<Vec<BigInt>> {
        if self.modulus_exp.is_some() {
            return Err(Error::PreconditionViolation("ghost map needs torsion-free coordinates".into()));
        }
        let bits = self.coords.iter().map(|c| c.bits() + 1).max().unwrap_or(1);
        let top = (self.p as f64).powi(self.len() as i32 - 1) * bits as f64;
        if top > EXACT_BIT_LIMIT as f64 {
            return Err(Error::ResourceLimit("exact ghost components too large".into()));
        }
        Ok(ghost_with(&self.coords, self.p, None))
    }

    /// Inverse of the ghost map on its image; errors if `w` is not a ghost vector.
    pub fn from_ghost(p: u64, w: &[BigInt]) -> Result<Self> {
        let coords = unghost(w, p, None)
            .ok_or_else(|| Error::InvalidInput("not the ghost vector of an integral Witt vector".into()))?;
        Self::new(p, None, coords)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.len() != other.len() || self.modulus_exp != other.modulus_exp {
            return Err(Error::InvalidArgument("Witt vectors over different rings".into()));
        }
        Ok(())
    }

    fn combine(&self, other: &Self, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        self.check_compatible(other)?;
        let coords = match self.modulus_exp {
            None => {
                let (a, b) = (self.ghost()?, other.ghost()?);
                let w: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| op(x, y)).collect();
                unghost(&w, self.p, None).expect("Witt polynomials are integral")
            }
            Some(m) => {
                // work mod p^{m+n-1}: enough to recover each coordinate mod p^m
                let big = BigInt::from(self.p).pow(m + self.len() as u32 - 1);
                let a = ghost_with(&self.coords, self.p, Some(&big));
                let b = ghost_with(&other.coords, self.p, Some(&big));
                let w: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| op(x, y)).collect();
                unghost(&w, self.p, Some(&big)).expect("Witt polynomials are integral")
            }
        };
        Self::new(self.p, self.modulus_exp, coords)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| x + y)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| x * y)
    }

    pub fn neg(&self) -> Result<Self> {
        let zero = Self::zero(self.p, self.modulus_exp, self.len())?;
        zero.combine(self, |x, y| x - y)
    }
}

fn ghost_with(a: &[BigInt], p: u64, modulus: Option<&BigInt>) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    (0..a.len())
        .map(|n| {
            let mut s = BigInt::zero();
            for (i, ai) in a.iter().enumerate().take(n + 1) {
                let e = BigInt::from(p).pow((n - i) as u32);
                let term = match modulus {
                    Some(m) => ai.modpow(&e, m),
                    None => ai.pow(e.to_u32().expect("checked by the bit budget")),
                };
                s += pb.pow(i as u32) * term;
            }
            match modulus {
                Some(m) => ((s % m) + m) % m,
                None => s,
            }
        })
        .collect()
}

/// Solves `p^n s_n = w_n - Σ_{i<n} p^i s_i^{p^{n-i}}`; `None` when a
/// division is not exact.
fn unghost(w: &[BigInt], p: u64, modulus: Option<&BigInt>) -> Option<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let mut s: Vec<BigInt> = Vec::with_capacity(w.len());
    for n in 0..w.len() {
        let mut r = w[n].clone();
        for (i, si) in s.iter().enumerate() {
            let e = BigInt::from(p).pow((n - i) as u32);
            let term = match modulus {
                Some(m) => si.modpow(&e, m),
                None => si.pow(e.to_u32()?),
            };
            r -= pb.pow(i as u32) * term;
        }
        if let Some(m) = modulus {
            r = ((r % m) + m) % m;
        }
        let pn = pb.pow(n as u32);
        if !(&r % &pn).is_zero() {
            return None;
        }
        s.push(r / pn);
    }
    Some(s)
}
