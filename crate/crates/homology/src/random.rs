//! Random complexes and chain maps for property checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use crate::{ChainMap, FgComplex, IntMatrix};

/// Random unimodular `n x n` matrix and its inverse from `steps` elementary
/// operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, u_inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        u.add_row_multiple(i, j, &c);
        u_inv.add_col_multiple(j, i, &-c);
    }
    (u, u_inv)
}

/// A complex with at most `terms` nonzero degrees starting at `lo`, each of
/// rank at most `max_dim`, built from elementary pieces `Z --m--> Z`
/// (`1 <= m <= max_entry`) and free summands, then conjugated by small
/// unimodular changes of basis as long as entries stay within `max_entry`.
pub fn random_complex<R: Rng>(rng: &mut R, lo: i64, terms: usize, max_dim: usize, max_entry: i64) -> FgComplex {
    let terms = terms.max(1);
    let mut pieces: Vec<(usize, Option<i64>)> = Vec::new(); // (degree offset, multiplier to next)
    let mut dims = vec![0usize; terms];
    for k in 0..terms {
        let budget = max_dim.saturating_sub(dims[k]);
        if budget == 0 {
            continue;
        }
        let count = rng.gen_range(0..=budget);
        for _ in 0..count {
            if k + 1 < terms && dims[k + 1] < max_dim && rng.gen_bool(0.6) {
                pieces.push((k, Some(rng.gen_range(1..=max_entry.max(1)))));
                dims[k] += 1;
                dims[k + 1] += 1;
            } else if dims[k] < max_dim {
                pieces.push((k, None));
                dims[k] += 1;
            }
        }
    }
    let mut pos = vec![0usize; terms];
    let mut diffs: Vec<IntMatrix> = (0..terms.saturating_sub(1)).map(|k| IntMatrix::zeros(dims[k + 1], dims[k])).collect();
    for &(k, m) in &pieces {
        match m {
            Some(m) => {
                diffs[k].set(pos[k + 1], pos[k], BigInt::from(m));
                pos[k] += 1;
                pos[k + 1] += 1;
            }
            None => pos[k] += 1,
        }
    }
    for _ in 0..20 {
        let changes: Vec<(IntMatrix, IntMatrix)> = dims.iter().map(|&n| random_unimodular(rng, n, n)).collect();
        let conj: Vec<IntMatrix> =
            diffs.iter().enumerate().map(|(k, d)| &(&changes[k + 1].0 * d) * &changes[k].1).collect();
        if conj.iter().all(|d| d.max_abs() <= BigInt::from(max_entry)) {
            diffs = conj;
            break;
        }
    }
    FgComplex::new(lo, dims, diffs).expect("elementary pieces square to zero")
}

fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::from_vec(rows, cols, data)
}

/// A chain map `source -> source + E` (E random) of the form
/// `(c id + dh + hd, d k + k d)`.
pub fn random_chain_map<R: Rng>(rng: &mut R, source: &FgComplex, max_dim: usize) -> ChainMap {
    let e = random_complex(rng, source.lo(), (source.hi() - source.lo() + 1) as usize, max_dim, 6);
    let target = source.direct_sum(&e);
    let c = BigInt::from(rng.gen_range(-1..=3));
    let (lo, hi) = (target.lo(), target.hi());
    let h: BTreeMap<i64, IntMatrix> =
        (lo..=hi + 1).map(|i| (i, random_matrix(rng, source.dim(i - 1), source.dim(i), 1))).collect();
    let k: BTreeMap<i64, IntMatrix> =
        (lo..=hi + 1).map(|i| (i, random_matrix(rng, e.dim(i - 1), source.dim(i), 1))).collect();
    let mut comps = BTreeMap::new();
    for i in lo..=hi {
        let top = &(&IntMatrix::scalar(source.dim(i), &c) + &(&source.d(i - 1) * &h[&i])) + &(&h[&(i + 1)] * &source.d(i));
        let bottom = &(&e.d(i - 1) * &k[&i]) + &(&k[&(i + 1)] * &source.d(i));
        comps.insert(i, top.vstack(&bottom));
    }
    ChainMap::new(source.clone(), target, comps).expect("homotopy construction gives a chain map")
}

/// Three composable random chain maps `X0 -> X1 -> X2 -> X3`.
pub fn random_triple<R: Rng>(rng: &mut R, terms: usize, max_dim: usize) -> (ChainMap, ChainMap, ChainMap) {
    let x0 = random_complex(rng, 0, terms, max_dim, 6);
    let a1 = random_chain_map(rng, &x0, 1);
    let a2 = random_chain_map(rng, a1.target(), 1);
    let a3 = random_chain_map(rng, a2.target(), 1);
    (a1, a2, a3)
}
