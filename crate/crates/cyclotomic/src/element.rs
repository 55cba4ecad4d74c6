use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use ramcoh_valuation::{is_prime, vp_int, Error, ExtendedRational, Result};

/// Element of `Z_p[zeta_{p^k}]` known modulo `p^m`, in the power basis
/// `1, zeta, ..., zeta^{phi(p^k) - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycElement {
    p: u64,
    level: u32,
    precision: u32,
    coeffs: Vec<BigInt>,
}

/// Valuations at or above `precision - GUARD` are not reported.
pub const GUARD: u32 = 2;

pub fn phi(p: u64, level: u32) -> usize {
    (p.pow(level - 1) * (p - 1)) as usize
}

fn modulus(p: u64, m: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), m as usize)
}

/// Reduce a polynomial in zeta (any degree) modulo `x^{p^k} - 1` and then
/// `Phi_{p^k}`.
fn reduce(p: u64, level: u32, raw: &[(usize, BigInt)], m: &BigInt) -> Vec<BigInt> {
    let pk = p.pow(level) as usize;
    let block = pk / p as usize;
    let f = phi(p, level);
    let mut full = vec![BigInt::zero(); pk];
    for (e, c) in raw {
        full[e % pk] += c;
    }
    let mut out: Vec<BigInt> = full[..f].to_vec();
    // x^{f + r} = -sum_{j < p-1} x^{r + j p^{k-1}}
    for r in 0..block {
        let c = &full[f + r];
        if c.is_zero() {
            continue;
        }
        for j in 0..(p as usize - 1) {
            out[r + j * block] -= c;
        }
    }
    out.into_iter().map(|c| c.mod_floor(m)).collect()
}

impl CycElement {
    /// `coeffs[i]` is the coefficient of `zeta^i`; any length is accepted and
    /// reduced.
    pub fn new(p: u64, level: u32, precision: u32, coeffs: &[BigInt]) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!("p = {p} must be an odd prime")));
        }
        if level == 0 {
            return Err(Error::InvalidArgument("level must be positive".into()));
        }
        if precision <= GUARD {
            return Err(Error::InvalidArgument(format!("precision must exceed {GUARD}")));
        }
        let raw: Vec<(usize, BigInt)> = coeffs.iter().cloned().enumerate().collect();
        let coeffs = reduce(p, level, &raw, &modulus(p, precision));
        Ok(CycElement { p, level, precision, coeffs })
    }

    pub fn from_int(p: u64, level: u32, precision: u32, c: i64) -> Result<Self> {
        Self::new(p, level, precision, &[BigInt::from(c)])
    }

    /// `zeta_{p^k}^j`
    pub fn zeta_power(p: u64, level: u32, precision: u32, j: u64) -> Result<Self> {
        let pk = p.pow(level);
        let mut v = vec![BigInt::zero(); (j % pk) as usize + 1];
        v[(j % pk) as usize] = BigInt::one();
        Self::new(p, level, precision, &v)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        phi(self.p, self.level)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if (self.p, self.level, self.precision) != (other.p, other.level, other.precision) {
            return Err(Error::InvalidArgument("elements live in different fields or precisions".into()));
        }
        Ok(())
    }

    fn with_coeffs(&self, raw: &[(usize, BigInt)]) -> Self {
        let coeffs = reduce(self.p, self.level, raw, &modulus(self.p, self.precision));
        CycElement { coeffs, ..*self }
    }

    fn indexed(&self) -> Vec<(usize, BigInt)> {
        self.coeffs.iter().cloned().enumerate().collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let raw: Vec<_> = self.indexed().into_iter().chain(other.indexed()).collect();
        Ok(self.with_coeffs(&raw))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let raw: Vec<_> = self.indexed().into_iter().chain(other.indexed().into_iter().map(|(i, c)| (i, -c))).collect();
        Ok(self.with_coeffs(&raw))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut raw = Vec::new();
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                raw.push((i + j, a * b));
            }
        }
        Ok(self.with_coeffs(&raw))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let raw: Vec<_> = self.indexed().into_iter().map(|(i, x)| (i, x * c)).collect();
        self.with_coeffs(&raw)
    }

    /// Same representatives at a new precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        Self::new(self.p, self.level, precision, &self.coeffs)
    }

    /// Image under `zeta_{p^k} = zeta_{p^{k+1}}^p`.
    pub fn embed_up(&self) -> Self {
        let raw: Vec<_> = self.indexed().into_iter().map(|(i, c)| (i * self.p as usize, c)).collect();
        let level = self.level + 1;
        CycElement { coeffs: reduce(self.p, level, &raw, &modulus(self.p, self.precision)), level, ..*self }
    }

    pub fn embed_to(&self, level: u32) -> Result<Self> {
        if level < self.level {
            return Err(Error::InvalidArgument("cannot embed into a smaller field".into()));
        }
        let mut x = self.clone();
        while x.level < level {
            x = x.embed_up();
        }
        Ok(x)
    }

    /// Whether the representative lies in the bottom field `Q_p(zeta_p)`,
    /// i.e. is supported on exponents divisible by `p^{k-1}`.
    pub fn in_base_field(&self) -> bool {
        let block = (self.p.pow(self.level - 1)) as usize;
        self.coeffs.iter().enumerate().all(|(i, c)| c.is_zero() || i % block == 0)
    }

    /// `zeta -> zeta^a`.
    pub fn galois_act(&self, a: i64) -> Result<Self> {
        if a.rem_euclid(self.p as i64) == 0 {
            return Err(Error::InvalidArgument(format!("{a} is not prime to {}", self.p)));
        }
        let pk = self.p.pow(self.level) as i64;
        let a = a.rem_euclid(pk) as usize;
        let raw: Vec<_> = self.indexed().into_iter().map(|(i, c)| (i * a, c)).collect();
        Ok(self.with_coeffs(&raw))
    }

    /// Unreduced sum of the conjugates over level `k - 1`, as integer
    /// coefficients on `zeta_{p^{k-1}}^j`.
    fn trace_step_raw(&self) -> Result<Vec<BigInt>> {
        if self.level < 2 {
            return Err(Error::PreconditionViolation("trace_step needs level >= 2".into()));
        }
        let p = self.p as usize;
        let pk = p.pow(self.level);
        let block = pk / p;
        let f = self.degree();
        // sum over the automorphisms 1 + t p^{k-1} before reduction mod p^m
        let mut full = vec![BigInt::zero(); pk];
        for t in 0..p {
            let a = 1 + t * block;
            for (i, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    full[(i * a) % pk] += c;
                }
            }
        }
        let mut out = full[..f].to_vec();
        for r in 0..block {
            let c = full[f + r].clone();
            if !c.is_zero() {
                for j in 0..p - 1 {
                    out[r + j * block] -= &c;
                }
            }
        }
        let m = modulus(self.p, self.precision);
        if out.iter().enumerate().any(|(i, c)| i % p != 0 && !c.mod_floor(&m).is_zero()) {
            return Err(Error::PrecisionExhausted("trace is not supported on the subfield".into()));
        }
        Ok(out.into_iter().step_by(p).collect())
    }

    /// `tr_{level k / level k-1}(x)`.
    pub fn trace_step(&self) -> Result<Self> {
        let c = self.trace_step_raw()?;
        CycElement::new(self.p, self.level - 1, self.precision, &c)
    }

    /// `t_n(x) = p^{-1} tr(x)`, one level down.
    pub fn normalized_step(&self) -> Result<Self> {
        let c = self.trace_step_raw()?;
        let pb = BigInt::from(self.p);
        let mut q = Vec::with_capacity(c.len());
        for x in c {
            let (d, r) = x.div_rem(&pb);
            if !r.is_zero() {
                return Err(Error::PrecisionExhausted("trace not divisible by p".into()));
            }
            q.push(d);
        }
        CycElement::new(self.p, self.level - 1, self.precision, &q)
    }

    /// `t(x) = p^{-(k-1)} tr_{level k / level 1}(x)`.
    pub fn normalized_trace(&self) -> Result<Self> {
        let mut x = self.clone();
        while x.level > 1 {
            x = x.normalized_step()?;
        }
        Ok(x)
    }

    /// Coefficients in the basis `pi^j`, `pi = zeta - 1`.
    pub fn pi_adic_coeffs(&self) -> Vec<BigInt> {
        let f = self.degree();
        let m = modulus(self.p, self.precision);
        let mut out = vec![BigInt::zero(); f];
        // zeta^i = sum_j C(i, j) pi^j
        let mut row = vec![BigInt::one()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                let mut next = vec![BigInt::one(); i + 1];
                for j in 1..i {
                    next[j] = &row[j - 1] + &row[j];
                }
                row = next;
            }
            if c.is_zero() {
                continue;
            }
            for (j, b) in row.iter().enumerate() {
                out[j] += c * b;
            }
        }
        out.into_iter().map(|x| x.mod_floor(&m)).collect()
    }

    /// `v(x)` normalized by `v(p) = 1`. Since `Z_p[zeta] = Z_p[pi]` with
    /// `v(pi) = 1/phi(p^k)`, the terms `c_j pi^j` have distinct valuations and
    /// `v(x)` is their minimum.
    pub fn valuation(&self) -> Result<ExtendedRational> {
        let e = self.degree() as u64;
        let best = self
            .pi_adic_coeffs()
            .iter()
            .enumerate()
            .filter_map(|(j, c)| vp_int(c, self.p).map(|v| e * v + j as u64))
            .min();
        let Some(vpi) = best else {
            return Err(Error::PrecisionExhausted(format!("element vanishes mod p^{}", self.precision)));
        };
        let v = BigRational::new(BigInt::from(vpi), BigInt::from(e));
        if v >= BigRational::from_integer(BigInt::from(self.precision - GUARD)) {
            return Err(Error::PrecisionExhausted(format!("valuation {v} reaches the guard at precision {}", self.precision)));
        }
        Ok(ExtendedRational::Finite(v))
    }
}

impl fmt::Display for CycElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 (mod {}^{})", self.p, self.precision)
        } else {
            write!(f, "{} (mod {}^{})", terms.join(" + "), self.p, self.precision)
        }
    }
}
