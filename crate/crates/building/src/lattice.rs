use ramcoh_valuation::{is_prime, Error, Result};
use serde::{Deserialize, Serialize};

/// A full-rank Z_p-lattice in Q_p^n with integral coordinates, stored as the
/// rows of an upper-triangular Hermite normal form: diagonal `p^{a_i}`,
/// entries above the diagonal reduced into `[0, p^{a_j})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Lattice {
    pub(crate) p: u64,
    pub(crate) rows: Vec<Vec<i128>>,
}

fn vp(mut x: i128, p: i128) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn inv_mod(a: i128, m: i128) -> i128 {
    // extended Euclid; a is a unit mod m
    let (mut r0, mut r1, mut s0, mut s1) = (a.rem_euclid(m), m, 1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(m)
}

impl Lattice {
    pub(crate) fn standard(n: usize, p: u64) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
        Lattice { p, rows }
    }

    pub(crate) fn n(&self) -> usize {
        self.rows.len()
    }

    /// Sum of diagonal exponents; `p^k Z_p^n ⊆ L` for this `k`.
    pub(crate) fn index_exp(&self) -> u32 {
        (0..self.n()).map(|i| vp(self.rows[i][i], self.p as i128)).sum()
    }

    /// HNF of the span of `gens`; the caller guarantees `p^k Z_p^n` lies in it.
    pub(crate) fn span(p: u64, n: usize, gens: &[Vec<i128>], k: u32) -> Self {
        let pi = p as i128;
        let m = pi.pow(k);
        let mut rows: Vec<Vec<i128>> = gens.iter().map(|g| g.iter().map(|x| x.rem_euclid(m)).collect()).collect();
        let mut out: Vec<Vec<i128>> = Vec::with_capacity(n);
        for col in 0..n {
            // pivot of least valuation in this column
            // p^k e_col is in the lattice, so it serves when nothing smaller does
            let Some(piv) = (0..rows.len())
                .filter(|&r| rows[r][col].rem_euclid(m) != 0)
                .min_by_key(|&r| vp(rows[r][col], pi))
            else {
                let mut e = vec![0; n];
                e[col] = m;
                out.push(e);
                continue;
            };
            let mut prow = rows.swap_remove(piv);
            let a = vp(prow[col], pi);
            let unit = prow[col] / pi.pow(a);
            let uinv = inv_mod(unit, m);
            for x in prow.iter_mut() {
                *x = (*x * uinv).rem_euclid(m);
            }
            prow[col] = pi.pow(a);
            for r in rows.iter_mut() {
                let x = r[col].rem_euclid(m);
                if x != 0 {
                    let f = x / pi.pow(a);
                    for (y, z) in r.iter_mut().zip(&prow) {
                        *y = (*y - f * z).rem_euclid(m);
                    }
                }
            }
            out.push(prow);
        }
        // reduce above the diagonal, left to right
        for j in 0..n {
            let d = out[j][j];
            for i in 0..j {
                let f = out[i][j].div_euclid(d);
                if f != 0 {
                    let rj = out[j].clone();
                    for (y, z) in out[i].iter_mut().zip(&rj) {
                        *y -= f * z;
                    }
                }
            }
        }
        Lattice { p, rows: out }
    }

    pub(crate) fn sum(&self, other: &Lattice) -> Lattice {
        let gens: Vec<Vec<i128>> = self.rows.iter().chain(&other.rows).cloned().collect();
        Lattice::span(self.p, self.n(), &gens, self.index_exp().min(other.index_exp()))
    }

    pub(crate) fn contains(&self, other: &Lattice) -> bool {
        &self.sum(other) == self
    }

    pub(crate) fn scale(&self, s: u32) -> Lattice {
        let f = (self.p as i128).pow(s);
        let gens: Vec<Vec<i128>> = self.rows.iter().map(|r| r.iter().map(|x| x * f).collect()).collect();
        Lattice::span(self.p, self.n(), &gens, self.index_exp() + s * self.n() as u32)
    }

    /// Divide by the largest power of p containing it.
    pub(crate) fn normalized(&self) -> Lattice {
        let pi = self.p as i128;
        let t = self.rows.iter().flatten().filter(|&&x| x != 0).map(|&x| vp(x, pi)).min().unwrap_or(0);
        let f = pi.pow(t);
        Lattice { p: self.p, rows: self.rows.iter().map(|r| r.iter().map(|x| x / f).collect()).collect() }
    }

    /// All `L'` with `pL ⊊ L' ⊊ L`.
    pub(crate) fn sublattices(&self) -> Vec<Lattice> {
        let n = self.n();
        let p = self.p;
        let pi = p as i128;
        let k = self.index_exp() + n as u32;
        let mut out = vec![];
        for r in 1..n {
            for basis in subspaces(n, r, p) {
                let mut gens: Vec<Vec<i128>> =
                    self.rows.iter().map(|row| row.iter().map(|x| x * pi).collect()).collect();
                for v in &basis {
                    let mut g = vec![0i128; n];
                    for (c, row) in v.iter().zip(&self.rows) {
                        for (y, z) in g.iter_mut().zip(row) {
                            *y += i128::from(*c) * z;
                        }
                    }
                    gens.push(g);
                }
                out.push(Lattice::span(p, n, &gens, k));
            }
        }
        out
    }
}

/// Row-reduced bases of the `r`-dimensional subspaces of F_p^n.
fn subspaces(n: usize, r: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    let mut out = vec![];
    // pivot column sets
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != r {
            continue;
        }
        let pivots: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        // free positions: (row i, col j) with j > pivots[i] and j not a pivot
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| ((pivots[i] + 1)..n).filter(|j| mask >> j & 1 == 0).map(move |j| (i, j)))
            .collect();
        let count = p.pow(free.len() as u32);
        for code in 0..count {
            let mut m = vec![vec![0u64; n]; r];
            for (i, &c) in pivots.iter().enumerate() {
                m[i][c] = 1;
            }
            let mut c = code;
            for &(i, j) in &free {
                m[i][j] = c % p;
                c /= p;
            }
            out.push(m);
        }
    }
    out
}

/// A homothety class of lattices, represented by its normalized HNF:
/// integral and not contained in `p Z_p^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeClass {
    n: usize,
    p: u64,
    rep: Vec<Vec<u64>>,
}

impl LatticeClass {
    pub fn standard(n: usize, p: u64) -> Result<Self> {
        if !(2..=3).contains(&n) {
            return Err(Error::UnsupportedRegime(format!("n = {n}; only n = 2, 3")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(Self::from_lattice(&Lattice::standard(n, p)))
    }

    /// The class of the row span of `rows`, a nonsingular integer matrix.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if !(2..=3).contains(&n) || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("need a 2x2 or 3x3 matrix".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
        let det = det(&m);
        if det == 0 {
            return Err(Error::InvalidInput("singular matrix".into()));
        }
        let k = vp(det, p as i128);
        if k > 30 {
            return Err(Error::ResourceLimit("lattice too far from the standard one".into()));
        }
        Ok(Self::from_lattice(&Lattice::span(p, n, &m, k.max(1))))
    }

    pub(crate) fn from_lattice(l: &Lattice) -> Self {
        let l = l.normalized();
        LatticeClass { n: l.n(), p: l.p, rep: l.rows.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect() }
    }

    pub(crate) fn lattice(&self) -> Lattice {
        Lattice { p: self.p, rows: self.rep.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rep(&self) -> &[Vec<u64>] {
        &self.rep
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unreachable!(),
    }
}

/// Classes `[L']` with `pL ⊊ L' ⊊ L`, sorted.
pub fn neighbors(c: &LatticeClass) -> Vec<LatticeClass> {
    let mut out: Vec<LatticeClass> = c.lattice().sublattices().iter().map(LatticeClass::from_lattice).collect();
    out.sort();
    out.dedup();
    out
}
