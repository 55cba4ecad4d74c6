use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use ramcoh_homology::{FgComplex, FgModule, IntMatrix};
use ramcoh_valuation::{Error, Result};
use rayon::prelude::*;

use crate::algebra::{LieAlgebraZ, MAX_DIM};

/// `k`-subsets of `0..n` as bitmasks, in increasing mask order.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

fn elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Sign of moving `m` to its sorted slot in `t`, i.e. `(-1)^{#{x in t : x < m}}`.
fn insertion_sign(t: u32, m: usize) -> i32 {
    if (t & ((1u32 << m) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `d : Λ^k -> Λ^{k+1}` restricted to the given row and column bases.
fn ce_block(l: &LieAlgebraZ, rows: &[u32], cols: &[u32]) -> IntMatrix {
    let col_index: BTreeMap<u32, usize> = cols.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut d = IntMatrix::zeros(rows.len(), cols.len());
    for (r, &s) in rows.iter().enumerate() {
        let el = elements(s);
        for i in 0..el.len() {
            for j in i + 1..el.len() {
                let rest = s & !(1 << el[i]) & !(1 << el[j]);
                let sij = if (i + j) % 2 == 0 { 1 } else { -1 };
                for (m, c) in l.bracket(el[i], el[j]) {
                    if rest >> m & 1 == 1 {
                        continue;
                    }
                    let t = rest | 1 << m;
                    let Some(&col) = col_index.get(&t) else { continue };
                    let sign = sij * insertion_sign(rest, m);
                    *d.entry_mut(r, col) += c * BigInt::from(sign);
                }
            }
        }
    }
    d
}

fn check_dim(l: &LieAlgebraZ) -> Result<()> {
    if l.dim() > MAX_DIM {
        return Err(Error::ResourceLimit(format!("dimension {} exceeds {MAX_DIM}", l.dim())));
    }
    Ok(())
}

fn complex_on(l: &LieAlgebraZ, by_degree: &[Vec<u32>]) -> Result<FgComplex> {
    let dims = by_degree.iter().map(Vec::len).collect();
    let diffs = by_degree.windows(2).map(|w| ce_block(l, &w[1], &w[0])).collect();
    FgComplex::new(0, dims, diffs)
}

/// The Chevalley–Eilenberg cochain complex with trivial coefficients.
/// Degree `k` has basis the `k`-subsets of the dual basis, in increasing
/// bitmask order.
pub fn ce_complex(l: &LieAlgebraZ) -> Result<FgComplex> {
    check_dim(l)?;
    let n = l.dim();
    let by_degree: Vec<Vec<u32>> = (0..=n).map(|k| subsets(n, k)).collect();
    complex_on(l, &by_degree)
}

/// Weight-homogeneous pieces of the cochain complex, keyed by total weight.
/// Ungraded algebras give a single piece.
pub fn weight_blocks(l: &LieAlgebraZ) -> Result<BTreeMap<Vec<i64>, FgComplex>> {
    check_dim(l)?;
    let n = l.dim();
    let Some(w) = l.weights() else {
        return Ok([(vec![], ce_complex(l)?)].into_iter().collect());
    };
    let len = w.first().map_or(0, Vec::len);
    let mut blocks: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
    for mask in 0u32..1 << n {
        let mut total = vec![0i64; len];
        for i in elements(mask) {
            for (t, x) in total.iter_mut().zip(&w[i]) {
                *t += x;
            }
        }
        let k = mask.count_ones() as usize;
        blocks.entry(total).or_insert_with(|| vec![vec![]; n + 1])[k].push(mask);
    }
    blocks.into_iter().map(|(wt, deg)| Ok((wt, complex_on(l, &deg)?))).collect()
}

/// `H^k(L; Z)` for `k = 0..=dim`.
pub fn lie_cohomology(l: &LieAlgebraZ) -> Result<BTreeMap<usize, FgModule>> {
    let blocks: Vec<FgComplex> = weight_blocks(l)?.into_values().collect();
    let pieces: Vec<BTreeMap<i64, FgModule>> = blocks.par_iter().map(FgComplex::cohomology).collect();
    let mut out = BTreeMap::new();
    for k in 0..=l.dim() {
        let mut free = 0;
        let mut orders: Vec<BigInt> = Vec::new();
        for h in &pieces {
            if let Some(m) = h.get(&(k as i64)) {
                free += m.free_rank();
                orders.extend(m.elementary_divisors().iter().cloned());
            }
        }
        orders.retain(|o| !o.is_zero());
        out.insert(k, FgModule::from_cyclic(free, &orders));
    }
    Ok(out)
}

/// Free ranks of `H^k`, in degree order.
pub fn betti_numbers(l: &LieAlgebraZ) -> Result<Vec<usize>> {
    Ok(lie_cohomology(l)?.values().map(FgModule::free_rank).collect())
}
