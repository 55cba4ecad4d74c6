use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use ramcoh_valuation::{Error, Result};

use crate::{kernel_basis, lattice_contains, snf, FgModule, IntMatrix};

/// Cochain complex of finite free abelian groups `C^lo -> ... -> C^hi`.
/// `diffs[k]` is `d^{lo+k}`, a `dims[k+1] x dims[k]` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct FgComplex {
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<IntMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    lo: i64,
    dims: Vec<usize>,
    differentials: Vec<Vec<Vec<String>>>,
}

impl TryFrom<RawComplex> for FgComplex {
    type Error = Error;
    fn try_from(r: RawComplex) -> Result<Self> {
        if r.differentials.len() + 1 != r.dims.len().max(1) {
            return Err(Error::InvalidInput("need one differential between consecutive terms".into()));
        }
        let mut diffs = Vec::new();
        for (k, rows) in r.differentials.iter().enumerate() {
            let (m, n) = (r.dims[k + 1], r.dims[k]);
            if rows.len() != m || rows.iter().any(|row| row.len() != n) {
                return Err(Error::InvalidInput(format!("differential {k} is not {m}x{n}")));
            }
            let mut data = Vec::with_capacity(m * n);
            for x in rows.iter().flatten() {
                data.push(x.parse::<BigInt>().map_err(|e| Error::InvalidInput(format!("bad entry {x:?}: {e}")))?);
            }
            diffs.push(IntMatrix::from_vec(m, n, data));
        }
        FgComplex::new(r.lo, r.dims, diffs)
    }
}

impl From<FgComplex> for RawComplex {
    fn from(c: FgComplex) -> Self {
        RawComplex { lo: c.lo, dims: c.dims, differentials: c.diffs.iter().map(IntMatrix::to_string_rows).collect() }
    }
}

impl FgComplex {
    pub fn new(lo: i64, dims: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::InvalidInput("need one differential between consecutive terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[k + 1], dims[k]) {
                return Err(Error::InvalidInput(format!(
                    "d^{} has shape {:?}, expected {:?}",
                    lo + k as i64,
                    d.shape(),
                    (dims[k + 1], dims[k])
                )));
            }
        }
        for (k, w) in diffs.windows(2).enumerate() {
            if !(&w[1] * &w[0]).is_zero() {
                return Err(Error::InvalidInput(format!("d^{} d^{} != 0", lo + k as i64 + 1, lo + k as i64)));
            }
        }
        Ok(FgComplex { lo, dims, diffs })
    }

    /// `Z^n` in degree `deg`.
    pub fn single(deg: i64, n: usize) -> Self {
        FgComplex { lo: deg, dims: vec![n], diffs: vec![] }
    }

    /// Two-term complex `Z^n -> Z^m` in degrees `lo, lo+1`.
    pub fn two_term(lo: i64, d: IntMatrix) -> Self {
        FgComplex { lo, dims: vec![d.cols(), d.rows()], diffs: vec![d] }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.diffs
    }

    pub fn dim(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.dims[(i - self.lo) as usize]
        }
    }

    /// `d^i : C^i -> C^{i+1}`, zero outside the stored range.
    pub fn d(&self, i: i64) -> IntMatrix {
        if i >= self.lo && i < self.hi() {
            self.diffs[(i - self.lo) as usize].clone()
        } else {
            IntMatrix::zeros(self.dim(i + 1), self.dim(i))
        }
    }

    /// `C[k]`: `(C[k])^i = C^{i+k}`, `d_{C[k]} = (-1)^k d`.
    pub fn shift(&self, k: i64) -> Self {
        let diffs = if k.rem_euclid(2) == 1 { self.diffs.iter().map(|d| -d).collect() } else { self.diffs.clone() };
        FgComplex { lo: self.lo - k, dims: self.dims.clone(), diffs }
    }

    /// Same complex padded with zero terms to cover `[lo, hi]`.
    pub fn padded(&self, lo: i64, hi: i64) -> Self {
        let lo = lo.min(self.lo);
        let hi = hi.max(self.hi());
        let dims: Vec<usize> = (lo..=hi).map(|i| self.dim(i)).collect();
        let diffs = (lo..hi).map(|i| self.d(i)).collect();
        FgComplex { lo, dims, diffs }
    }

    /// `C + D` degreewise.
    pub fn direct_sum(&self, other: &FgComplex) -> FgComplex {
        let (lo, hi) = joint_range(self, other);
        let dims = (lo..=hi).map(|i| self.dim(i) + other.dim(i)).collect();
        let diffs = (lo..hi)
            .map(|i| {
                IntMatrix::block(
                    &self.d(i),
                    &IntMatrix::zeros(self.dim(i + 1), other.dim(i)),
                    &IntMatrix::zeros(other.dim(i + 1), self.dim(i)),
                    &other.d(i),
                )
            })
            .collect();
        FgComplex { lo, dims, diffs }
    }

    pub fn cohomology(&self) -> BTreeMap<i64, FgModule> {
        let mut out = BTreeMap::new();
        let ranks: Vec<(Vec<BigInt>, usize)> = self.diffs.iter().map(snf).collect();
        for (k, &n) in self.dims.iter().enumerate() {
            let (r_out, r_in, tors): (usize, usize, &[BigInt]) = (
                ranks.get(k).map_or(0, |x| x.1),
                if k > 0 { ranks[k - 1].1 } else { 0 },
                if k > 0 { &ranks[k - 1].0 } else { &[] },
            );
            out.insert(self.lo + k as i64, FgModule::from_cyclic(n - r_out - r_in, tors));
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|i| if i.rem_euclid(2) == 0 { self.dim(i) as i64 } else { -(self.dim(i) as i64) }).sum()
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology().values().all(FgModule::is_zero)
    }

    /// Basis of `ker d^i` as columns.
    pub fn cycles(&self, i: i64) -> IntMatrix {
        kernel_basis(&self.d(i))
    }

    /// Generators of `im d^{i-1}` as columns.
    pub fn boundaries(&self, i: i64) -> IntMatrix {
        self.d(i - 1)
    }
}

/// Degreewise integer matrices commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: FgComplex,
    target: FgComplex,
    lo: i64,
    components: Vec<IntMatrix>,
}

fn joint_range(a: &FgComplex, b: &FgComplex) -> (i64, i64) {
    (a.lo().min(b.lo()), a.hi().max(b.hi()))
}

impl ChainMap {
    /// `components` maps degrees to `target.dim(i) x source.dim(i)` matrices;
    /// missing degrees are zero.
    pub fn new(source: FgComplex, target: FgComplex, mut components: BTreeMap<i64, IntMatrix>) -> Result<Self> {
        let (lo, hi) = joint_range(&source, &target);
        if let Some((&i, _)) = components.iter().find(|(&i, _)| i < lo || i > hi) {
            return Err(Error::InvalidInput(format!("component in degree {i} outside both complexes")));
        }
        let mut comps = Vec::new();
        for i in lo..=hi {
            let f = components.remove(&i).unwrap_or_else(|| IntMatrix::zeros(target.dim(i), source.dim(i)));
            if f.shape() != (target.dim(i), source.dim(i)) {
                return Err(Error::InvalidInput(format!("component {i} has shape {:?}", f.shape())));
            }
            comps.push(f);
        }
        let m = ChainMap { source, target, lo, components: comps };
        for i in lo - 1..=hi {
            if &m.target.d(i) * &m.component(i) != &m.component(i + 1) * &m.source.d(i) {
                return Err(Error::InvalidInput(format!("not a chain map in degree {i}")));
            }
        }
        Ok(m)
    }

    fn from_parts(source: FgComplex, target: FgComplex, f: impl Fn(i64) -> IntMatrix) -> Self {
        let (lo, hi) = joint_range(&source, &target);
        let components = (lo..=hi).map(f).collect();
        ChainMap { source, target, lo, components }
    }

    pub fn identity(c: &FgComplex) -> Self {
        Self::from_parts(c.clone(), c.clone(), |i| IntMatrix::identity(c.dim(i)))
    }

    pub fn scalar(c: &FgComplex, k: &BigInt) -> Self {
        Self::from_parts(c.clone(), c.clone(), |i| IntMatrix::scalar(c.dim(i), k))
    }

    pub fn source(&self) -> &FgComplex {
        &self.source
    }

    pub fn target(&self) -> &FgComplex {
        &self.target
    }

    pub fn component(&self, i: i64) -> IntMatrix {
        let hi = self.lo + self.components.len() as i64 - 1;
        if i < self.lo || i > hi {
            IntMatrix::zeros(self.target.dim(i), self.source.dim(i))
        } else {
            self.components[(i - self.lo) as usize].clone()
        }
    }

    /// `self o g`; panics unless `g.target == self.source`.
    pub fn after(&self, g: &ChainMap) -> ChainMap {
        assert_eq!(g.target, self.source, "maps are not composable");
        Self::from_parts(g.source.clone(), self.target.clone(), |i| &self.component(i) * &g.component(i))
    }

    /// `f[k]`: same components, shifted source and target.
    pub fn shift(&self, k: i64) -> ChainMap {
        Self::from_parts(self.source.shift(k), self.target.shift(k), |i| self.component(i + k))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(IntMatrix::is_zero)
    }

    /// `f(ker d^i) ⊂ im d^{i-1}` for every degree.
    pub fn is_zero_on_cohomology(&self) -> bool {
        self.source.degrees().all(|i| {
            let z = &self.component(i) * &self.source.cycles(i);
            lattice_contains(&self.target.boundaries(i), &z)
        })
    }
}

/// Mapping cone with the maps `B -> cone(f) -> A[1]` of its triangle.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: FgComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// `cone^i = A^{i+1} + B^i`, `d(a, b) = (-d_A a, f a + d_B b)`.
pub fn cone(f: &ChainMap) -> Cone {
    let (a, b) = (&f.source, &f.target);
    let lo = (a.lo() - 1).min(b.lo());
    let hi = (a.hi() - 1).max(b.hi());
    let dims: Vec<usize> = (lo..=hi).map(|i| a.dim(i + 1) + b.dim(i)).collect();
    let diffs = (lo..hi)
        .map(|i| {
            let top = (-&a.d(i + 1)).hstack(&IntMatrix::zeros(a.dim(i + 2), b.dim(i)));
            let bottom = f.component(i + 1).hstack(&b.d(i));
            top.vstack(&bottom)
        })
        .collect();
    let c = FgComplex { lo, dims, diffs };
    let inclusion = ChainMap::from_parts(b.clone(), c.clone(), |i| {
        IntMatrix::zeros(a.dim(i + 1), b.dim(i)).vstack(&IntMatrix::identity(b.dim(i)))
    });
    let a1 = a.shift(1);
    let projection = ChainMap::from_parts(c.clone(), a1, |i| {
        IntMatrix::identity(a.dim(i + 1)).hstack(&IntMatrix::zeros(a.dim(i + 1), b.dim(i)))
    });
    Cone { complex: c, inclusion, projection }
}

/// Exactness of `H^i(X) -> H^i(Y) -> H^i(Z)` for `f: X -> Y`, `g: Y -> Z`.
pub fn exact_at(f: &ChainMap, g: &ChainMap, i: i64) -> bool {
    assert_eq!(f.target, g.source);
    let y = &f.target;
    let zy = y.cycles(i);
    let by = y.boundaries(i);
    // image: f(Z_X) + B_Y
    let im = (&f.component(i) * &f.source.cycles(i)).hstack(&by);
    // kernel: z in Z_Y with g z in B_Z
    let gz = &g.component(i) * &zy;
    let bz = g.target.boundaries(i);
    let sys = gz.hstack(&-&bz);
    let kb = kernel_basis(&sys);
    let x = kb.row_slice(0, zy.cols());
    let ker = (&zy * &x).hstack(&by);
    lattice_contains(&im, &ker) && lattice_contains(&ker, &im)
}

/// Exactness of the long exact sequence of `A -> B -> cone(f) -> A[1]` at
/// every node.
pub fn long_exact_sequence_holds(f: &ChainMap) -> bool {
    let c = cone(f);
    let f1 = f.shift(1);
    let (lo, hi) = (c.complex.lo().min(f.target.lo()) - 1, c.complex.hi().max(f.target.hi()) + 1);
    (lo..=hi).all(|i| {
        exact_at(f, &c.inclusion, i) && exact_at(&c.inclusion, &c.projection, i) && exact_at(&c.projection, &f1, i)
    })
}

/// For `A -> B -> C -> D` along `a1, a2, a3`, the composite
/// `cof(a3) -> C[1] -> cof(a2)[1] -> B[2] -> cof(a1)[2]` built from the cone
/// triangles, and whether it is zero on cohomology.
pub fn triangle_composite(a1: &ChainMap, a2: &ChainMap, a3: &ChainMap) -> Result<ChainMap> {
    if a1.target != a2.source || a2.target != a3.source {
        return Err(Error::InvalidArgument("maps are not composable".into()));
    }
    let (c1, c2, c3) = (cone(a1), cone(a2), cone(a3));
    let first = c2.inclusion.shift(1).after(&c3.projection);
    let second = c1.inclusion.shift(2).after(&c2.projection.shift(1));
    Ok(second.after(&first))
}

pub fn triangle_composite_vanishing(a1: &ChainMap, a2: &ChainMap, a3: &ChainMap) -> Result<bool> {
    Ok(triangle_composite(a1, a2, a3)?.is_zero_on_cohomology())
}
