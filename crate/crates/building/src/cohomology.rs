use std::collections::{BTreeMap, HashMap};

use ramcoh_valuation::{is_prime, Error, Result};

use crate::ball::BuildingBall;

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

/// Rank over F_q of sparse rows (sorted `(column, value)` lists).
fn sparse_rank(rows: Vec<Vec<(usize, u64)>>, q: u64) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for mut row in rows {
        loop {
            let Some(&(lead, val)) = row.first() else { break };
            let Some(prow) = pivots.get(&lead) else {
                // normalize the leading entry to 1
                let inv = pow_mod(val, q - 2, q);
                for e in row.iter_mut() {
                    e.1 = e.1 * inv % q;
                }
                pivots.insert(lead, row);
                break;
            };
            row = axpy(&row, prow, q - val, q);
        }
    }
    pivots.len()
}

/// `a + c·b` with zero entries dropped.
fn axpy(a: &[(usize, u64)], b: &[(usize, u64)], c: u64, q: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, v) = match (a.get(i), b.get(j)) {
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                i += 1;
                (ca, va)
            }
            (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (ca, (va + c * vb) % q)
            }
            (Some(&(ca, va)), None) => {
                i += 1;
                (ca, va)
            }
            (_, Some(&(cb, vb))) => {
                j += 1;
                (cb, c * vb % q)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((col, v));
        }
    }
    out
}

/// Dimensions of `H^k(B; F_q)` for `k = 0..n-1`.
pub fn simplicial_cohomology(ball: &BuildingBall, q: u64) -> Result<BTreeMap<usize, usize>> {
    if !is_prime(q) || q > u32::MAX as u64 {
        return Err(Error::InvalidArgument(format!("{q} is not a supported prime")));
    }
    ball.validate()?;
    let top = ball.max_simplex_size();
    let mut by_size: Vec<Vec<&Vec<usize>>> = vec![vec![]; top + 1];
    for s in &ball.simplices {
        by_size[s.len()].push(s);
    }
    let index: Vec<HashMap<&[usize], usize>> =
        by_size.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()).collect();
    // rank of the coboundary C^{k} -> C^{k+1} (simplices of size k+1 -> k+2)
    let mut ranks = vec![0usize; top + 1];
    for size in 2..=top {
        let rows: Vec<Vec<(usize, u64)>> = by_size[size]
            .iter()
            .map(|s| {
                let mut row: Vec<(usize, u64)> = (0..s.len())
                    .map(|i| {
                        let mut f = s.to_vec();
                        f.remove(i);
                        (index[size - 1][f.as_slice()], if i % 2 == 0 { 1 } else { q - 1 })
                    })
                    .collect();
                row.sort();
                row
            })
            .collect();
        ranks[size - 1] = sparse_rank(rows, q);
    }
    let mut out = BTreeMap::new();
    for size in 1..=top.max(1) {
        let n = by_size.get(size).map_or(0, Vec::len);
        let rank_out = ranks.get(size).copied().unwrap_or(0);
        let rank_in = ranks[size - 1];
        out.insert(size - 1, n - rank_out - rank_in);
    }
    Ok(out)
}
