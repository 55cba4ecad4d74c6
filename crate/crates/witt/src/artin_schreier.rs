use ramcoh_valuation::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::field::{FiniteField, Fq};
use crate::poly::{inv_mod, mul_mod};

/// `F_q[t]/(t^p - t - a)`, a field of degree `p` over `F_q` when
/// `Tr(a) ≠ 0`. Elements are coefficient lists in powers of `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsExtension {
    base: FiniteField,
    a: Fq,
}

impl AsExtension {
    pub fn new(base: FiniteField, a: Fq) -> Result<Self> {
        if base.trace(a) == 0 {
            return Err(Error::PreconditionViolation("t^p - t - a splits when Tr(a) = 0".into()));
        }
        Ok(AsExtension { base, a })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn degree(&self) -> u32 {
        self.base.degree() * self.base.p() as u32
    }

    pub fn embed(&self, x: Fq) -> Vec<Fq> {
        let mut v = vec![0; self.base.p() as usize];
        v[0] = x;
        v
    }

    pub fn t(&self) -> Vec<Fq> {
        let mut v = vec![0; self.base.p() as usize];
        v[1] = 1;
        v
    }

    pub fn sub(&self, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
        x.iter().zip(y).map(|(&u, &v)| self.base.sub(u, v)).collect()
    }

    pub fn mul(&self, x: &[Fq], y: &[Fq]) -> Vec<Fq> {
        let f = &self.base;
        let p = f.p() as usize;
        let mut prod = vec![0; 2 * p - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(u, v));
            }
        }
        // t^p = t + a
        for d in (p..prod.len()).rev() {
            let c = prod[d];
            if c != 0 {
                prod[d] = 0;
                prod[d - p + 1] = f.add(prod[d - p + 1], c);
                prod[d - p] = f.add(prod[d - p], f.mul(c, self.a));
            }
        }
        prod.truncate(p);
        prod
    }

    pub fn pow(&self, x: &[Fq], mut e: u64) -> Vec<Fq> {
        let mut acc = self.embed(1);
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AsRoot {
    /// A root inside the base field.
    Base(Fq),
    /// Coordinates of a root in `F_q[t]/(t^p - t - a)`.
    Extension(Vec<Fq>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinSchreierSolution {
    /// Degree over F_p of the field containing the root.
    pub field_degree: u32,
    pub root: AsRoot,
}

impl ArtinSchreierSolution {
    /// Recomputes `x^p - x` in the field holding the root.
    pub fn verify(&self, field: &FiniteField, a: Fq) -> bool {
        let p = field.p();
        match &self.root {
            AsRoot::Base(x) => {
                self.field_degree == field.degree() && field.sub(field.pow(*x, p), *x) == a
            }
            AsRoot::Extension(x) => {
                let Ok(ext) = AsExtension::new(field.clone(), a) else { return false };
                self.field_degree == ext.degree() && ext.sub(&ext.pow(x, p), x) == ext.embed(a)
            }
        }
    }
}

/// Solves `x^p - x = a`, in `F_q` when `Tr(a) = 0` and otherwise in the
/// degree-`p` extension.
pub fn artin_schreier_solve(field: &FiniteField, a: Fq) -> Result<ArtinSchreierSolution> {
    if !field.is_valid(a) {
        return Err(Error::InvalidInput(format!("{a} is not an element of F_{}", field.order())));
    }
    if field.trace(a) != 0 {
        let ext = AsExtension::new(field.clone(), a)?;
        return Ok(ArtinSchreierSolution { field_degree: ext.degree(), root: AsRoot::Extension(ext.t()) });
    }
    let x = solve_linear(field, a).ok_or_else(|| {
        Error::PreconditionViolation("trace zero but x^p - x = a has no solution".into())
    })?;
    Ok(ArtinSchreierSolution { field_degree: field.degree(), root: AsRoot::Base(x) })
}

/// `x ↦ x^p - x` is F_p-linear; solve over the coordinate basis.
fn solve_linear(field: &FiniteField, a: Fq) -> Option<Fq> {
    let p = field.p();
    let k = field.degree() as usize;
    // augmented k × (k+1) matrix, column j = image of the j-th basis vector
    let mut m = vec![vec![0u64; k + 1]; k];
    for j in 0..k {
        let e = p.pow(j as u32);
        let img = field.coords(field.sub(field.pow(e, p), e));
        for i in 0..k {
            m[i][j] = img[i];
        }
    }
    for (i, c) in field.coords(a).into_iter().enumerate() {
        m[i][k] = c;
    }
    let mut pivots = vec![];
    let mut row = 0;
    for col in 0..k {
        let Some(r) = (row..k).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, r);
        let inv = inv_mod(m[row][col], p);
        for c in 0..=k {
            m[row][c] = mul_mod(m[row][c], inv, p);
        }
        for r in 0..k {
            if r != row && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..=k {
                    m[r][c] = (m[r][c] + p - mul_mod(f, m[row][c], p)) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| r[k] != 0) {
        return None;
    }
    let mut x = vec![0u64; k];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = m[r][k];
    }
    Some(field.from_coords(&x))
}
