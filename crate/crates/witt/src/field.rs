use ramcoh_valuation::{is_prime, Error, Result};
use serde::{Deserialize, Serialize};

use crate::poly::{self, Poly};

/// Elements are encoded as `Σ c_i p^i` for the residue `Σ c_i t^i`.
pub type Fq = u64;

/// `F_p[t]/(m)` with `m` the first monic irreducible of degree `k` when
/// monic polynomials are ordered by the code `Σ_{i<k} c_i p^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteField {
    p: u64,
    k: u32,
    /// Monic, lowest coefficient first, length `k + 1`.
    modulus: Vec<u64>,
}

/// Upper bound on the field size so codes and enumeration stay in `u64`.
pub const MAX_ORDER: u64 = 1 << 40;

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        let q = p.checked_pow(k).filter(|&q| q <= MAX_ORDER);
        let Some(q) = q else {
            return Err(Error::ResourceLimit(format!("F_{p}^{k} is too large")));
        };
        for code in 0..q {
            let mut m = digits(code, p, k as usize);
            m.push(1);
            if (k == 1 || m[0] != 0) && poly::is_irreducible(&m, p) {
                return Ok(FiniteField { p, k, modulus: m });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Fq {
        0
    }

    pub fn one(&self) -> Fq {
        1
    }

    /// Image of an integer under `Z -> F_p ⊂ F_q`.
    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn coords(&self, a: Fq) -> Vec<u64> {
        digits(a, self.p, self.k as usize)
    }

    pub fn from_coords(&self, c: &[u64]) -> Fq {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    fn from_poly(&self, c: &Poly) -> Fq {
        self.from_coords(c)
    }

    pub fn is_valid(&self, a: Fq) -> bool {
        a < self.order()
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let (x, y) = (self.coords(a), self.coords(b));
        self.from_coords(&x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: Fq) -> Fq {
        self.from_coords(&self.coords(a).iter().map(|u| (self.p - u) % self.p).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            return poly::mul_mod(a, b, self.p);
        }
        let prod = poly::mul(&poly::trim(self.coords(a)), &poly::trim(self.coords(b)), self.p);
        self.from_poly(&poly::rem(&prod, &self.modulus, self.p))
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let (mut acc, mut b) = (1, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a == 0 {
            return Err(Error::InvalidInput("zero has no inverse".into()));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p)
    }

    /// `Tr_{F_q/F_p}(a) = Σ a^{p^i}`, as an element of F_p.
    pub fn trace(&self, a: Fq) -> u64 {
        let mut s = 0;
        let mut x = a;
        for _ in 0..self.k {
            s = self.add(s, x);
            x = self.frobenius(x);
        }
        debug_assert!(s < self.p);
        s
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.order()
    }
}

fn digits(mut n: u64, p: u64, k: usize) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = n % p;
            n /= p;
            d
        })
        .collect()
}
