use std::collections::{BTreeMap, BTreeSet};

use ramcoh_valuation::{is_prime, Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lattice::{neighbors, Lattice, LatticeClass};

/// Vertex budget for a single ball.
pub const MAX_VERTICES: usize = 200_000;

/// Full subcomplex of the building on the classes within graph distance
/// `radius` of the standard class. `simplices` lists every simplex,
/// vertices included, as sorted index lists ordered by size then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingBall {
    pub n: usize,
    pub p: u64,
    pub radius: u32,
    pub vertices: Vec<LatticeClass>,
    pub simplices: Vec<Vec<usize>>,
    /// Whether the ball is in a regime known to be contractible.
    pub contractible_regime: bool,
}

/// `1 + (p+1)(p^R - 1)/(p - 1)`, the size of a radius-`R` ball in the
/// `(p+1)`-regular tree.
pub fn tree_ball_size(p: u64, radius: u32) -> u64 {
    1 + (p + 1) * (p.pow(radius) - 1) / (p - 1)
}

/// Balls in the acyclic regimes: `n = 2` with radius ≤ 6, `n = 3` with radius ≤ 1.
pub fn build_ball(n: usize, p: u64, radius: u32) -> Result<BuildingBall> {
    match (n, radius) {
        (2, 0..=6) | (3, 0..=1) => build_ball_any(n, p, radius),
        (2 | 3, _) => Err(Error::UnsupportedRegime(format!(
            "n = {n}, radius {radius}: contractibility of this ball is not established"
        ))),
        _ => Err(Error::UnsupportedRegime(format!("n = {n}; only n = 2, 3"))),
    }
}

/// Same as [`build_ball`] without the regime restriction, for exploration;
/// `contractible_regime` records whether the result is covered.
pub fn build_ball_any(n: usize, p: u64, radius: u32) -> Result<BuildingBall> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let center = LatticeClass::standard(n, p)?;
    let degree = if n == 2 { p + 1 } else { 2 * (p * p + p + 1) };
    if radius > 0 && (degree as f64).powi(radius as i32) > 4.0 * MAX_VERTICES as f64 {
        return Err(Error::ResourceLimit(format!("ball ({n}, {p}, {radius}) is too large")));
    }
    let mut dist: BTreeMap<LatticeClass, u32> = BTreeMap::from([(center.clone(), 0)]);
    let mut frontier = vec![center];
    let mut adjacency: BTreeMap<LatticeClass, Vec<LatticeClass>> = BTreeMap::new();
    for r in 0..=radius {
        let found: Vec<(LatticeClass, Vec<LatticeClass>)> =
            frontier.par_iter().map(|c| (c.clone(), neighbors(c))).collect();
        let mut next = BTreeSet::new();
        for (c, nb) in found {
            for d in &nb {
                if r < radius && !dist.contains_key(d) {
                    next.insert(d.clone());
                }
            }
            adjacency.insert(c, nb);
        }
        for d in &next {
            dist.insert(d.clone(), r + 1);
        }
        if dist.len() > MAX_VERTICES {
            return Err(Error::ResourceLimit(format!("more than {MAX_VERTICES} vertices")));
        }
        frontier = next.into_iter().collect();
    }
    let vertices: Vec<LatticeClass> = dist.keys().cloned().collect();
    let index: BTreeMap<&LatticeClass, usize> = vertices.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let adj: Vec<BTreeSet<usize>> = vertices
        .iter()
        .map(|c| adjacency[c].iter().filter_map(|d| index.get(d).copied()).collect())
        .collect();
    let simplices = cliques(&adj, n);
    let ball = BuildingBall {
        n,
        p,
        radius,
        vertices,
        simplices,
        contractible_regime: n == 2 || radius <= 1,
    };
    ball.check_flags()?;
    Ok(ball)
}

/// All cliques of size `1..=max` in increasing order.
fn cliques(adj: &[BTreeSet<usize>], max: usize) -> Vec<Vec<usize>> {
    let mut layers: Vec<Vec<Vec<usize>>> = vec![(0..adj.len()).map(|v| vec![v]).collect()];
    while layers.len() < max {
        let last = layers.last().unwrap();
        let mut next = vec![];
        for s in last {
            let top = *s.last().unwrap();
            for &w in adj[top].range(top + 1..) {
                if s.iter().all(|v| adj[*v].contains(&w)) {
                    let mut t = s.clone();
                    t.push(w);
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        layers.push(next);
    }
    layers.into_iter().flatten().collect()
}

impl BuildingBall {
    pub fn count(&self, size: usize) -> usize {
        self.simplices.iter().filter(|s| s.len() == size).count()
    }

    pub fn max_simplex_size(&self) -> usize {
        self.simplices.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Structural checks for imported balls: sorted simplices in range,
    /// downward closed, dimension below `n`.
    pub fn validate(&self) -> Result<()> {
        let set: BTreeSet<&Vec<usize>> = self.simplices.iter().collect();
        for s in &self.simplices {
            if s.is_empty() || s.len() > self.n || s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(format!("bad simplex {s:?}")));
            }
            if s.iter().any(|&v| v >= self.vertices.len()) {
                return Err(Error::InvalidInput(format!("simplex {s:?} out of range")));
            }
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if !set.contains(&f) {
                        return Err(Error::InvalidInput(format!("face {f:?} of {s:?} missing")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every maximal clique must be a flag: representatives between `pL_0`
    /// and `L_0` that form a chain under inclusion.
    fn check_flags(&self) -> Result<()> {
        let mut maximal: BTreeSet<&Vec<usize>> = self.simplices.iter().collect();
        for s in &self.simplices {
            for i in 0..s.len() {
                if s.len() > 1 {
                    let mut f = s.clone();
                    f.remove(i);
                    maximal.remove(&f);
                }
            }
        }
        for s in maximal {
            if s.len() < 2 {
                continue;
            }
            let l0 = self.vertices[s[0]].lattice();
            let mut chain: Vec<Lattice> = vec![];
            for &v in &s[1..] {
                let rep = between(&l0, &self.vertices[v].lattice())
                    .ok_or_else(|| Error::InvalidInput(format!("vertices {s:?} are not incident")))?;
                chain.push(rep);
            }
            for a in &chain {
                for b in &chain {
                    if !a.contains(b) && !b.contains(a) {
                        return Err(Error::InvalidInput(format!("clique {s:?} is not a flag")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The representative `L` of the class of `m` with `p L_0 ⊊ L ⊊ L_0`.
fn between(l0: &Lattice, m: &Lattice) -> Option<Lattice> {
    let span = 2 * (l0.index_exp() + m.index_exp()) + 2;
    let pl0 = l0.scale(1);
    for s in 0..=span {
        // p^{s+1} L_0 ⊊ M ⊊ p^s L_0
        let (lo, hi) = (l0.scale(s + 1), l0.scale(s));
        if hi.contains(m) && m.contains(&lo) && &hi != m && &lo != m {
            return Some(m.clone());
        }
        // p L_0 ⊊ p^s M ⊊ L_0
        let ms = m.scale(s);
        if l0.contains(&ms) && ms.contains(&pl0) && &ms != l0 && ms != pl0 {
            return Some(ms);
        }
    }
    None
}
