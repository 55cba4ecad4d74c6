use num_bigint::BigInt;
use num_traits::{One, Zero};
use ramcoh_homology::IntMatrix;
use ramcoh_valuation::{Error, Result};

/// Largest dimension accepted; the cochain complex has `2^dim` generators.
pub const MAX_DIM: usize = 12;

/// A Lie algebra over Z given by structure constants
/// `[e_i, e_j] = scale · Σ_k c_{ij}^k e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraZ {
    dim: usize,
    /// `constants[i][j][k] = c_{ij}^k` before scaling.
    constants: Vec<Vec<Vec<BigInt>>>,
    /// `(p, s)` when every bracket is multiplied by `p^s`.
    scale: Option<(u64, u32)>,
    /// Optional weight of each basis vector; brackets add weights.
    weights: Option<Vec<Vec<i64>>>,
    name: String,
}

fn zero_constants(n: usize) -> Vec<Vec<Vec<BigInt>>> {
    vec![vec![vec![BigInt::zero(); n]; n]; n]
}

impl LieAlgebraZ {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(constants: Vec<Vec<Vec<BigInt>>>) -> Result<Self> {
        Self::build(constants, None, None, "custom".into())
    }

    fn build(
        constants: Vec<Vec<Vec<BigInt>>>,
        scale: Option<(u64, u32)>,
        weights: Option<Vec<Vec<i64>>>,
        name: String,
    ) -> Result<Self> {
        let dim = constants.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if constants.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::InvalidInput("structure constants must be dim x dim x dim".into()));
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if constants[i][j][k] != -&constants[j][i][k] {
                        return Err(Error::InvalidInput(format!("c_{i}{j}^{k} is not antisymmetric")));
                    }
                }
            }
        }
        let l = LieAlgebraZ { dim, constants, scale, weights, name };
        l.check_jacobi()?;
        l.check_weights()?;
        Ok(l)
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let mut s = BigInt::zero();
                        for m in 0..n {
                            s += &self.constants[i][j][m] * &self.constants[m][k][l];
                            s += &self.constants[j][k][m] * &self.constants[m][i][l];
                            s += &self.constants[k][i][m] * &self.constants[m][j][l];
                        }
                        if !s.is_zero() {
                            return Err(Error::InvalidInput(format!(
                                "Jacobi identity fails on (e_{i}, e_{j}, e_{k})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_weights(&self) -> Result<()> {
        let Some(w) = &self.weights else { return Ok(()) };
        if w.len() != self.dim {
            return Err(Error::InvalidInput("one weight per basis vector".into()));
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    if !self.constants[i][j][k].is_zero() {
                        let sum: Vec<i64> = w[i].iter().zip(&w[j]).map(|(a, b)| a + b).collect();
                        if sum != w[k] {
                            return Err(Error::InvalidInput("bracket does not respect the grading".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn scale(&self) -> Option<(u64, u32)> {
        self.scale
    }

    pub fn weights(&self) -> Option<&[Vec<i64>]> {
        self.weights.as_deref()
    }

    fn scale_factor(&self) -> BigInt {
        match self.scale {
            Some((p, s)) => BigInt::from(p).pow(s),
            None => BigInt::one(),
        }
    }

    /// Effective `c_{ij}^k`, scale included.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> BigInt {
        &self.constants[i][j][k] * self.scale_factor()
    }

    /// Nonzero `(k, c_{ij}^k)` with the scale applied.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, BigInt)> {
        let f = self.scale_factor();
        self.constants[i][j]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c * &f))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().flatten().flatten().all(Zero::is_zero)
    }

    pub fn abelian(n: usize) -> Result<Self> {
        Self::build(zero_constants(n), None, Some(vec![vec![]; n]), format!("abelian({n})"))
    }

    /// Basis `x_1..x_m, y_1..y_m, z` with `[x_i, y_i] = z`.
    pub fn heisenberg(m: usize) -> Result<Self> {
        let n = 2 * m + 1;
        let mut c = zero_constants(n);
        let mut w = vec![vec![0i64; 2]; n];
        for i in 0..m {
            c[i][m + i][n - 1] = BigInt::one();
            c[m + i][i][n - 1] = -BigInt::one();
            w[i] = vec![1, 0];
            w[m + i] = vec![0, 1];
        }
        w[n - 1] = vec![1, 1];
        Self::build(c, None, Some(w), format!("heisenberg({n})"))
    }

    /// Basis `e, f, h`.
    pub fn sl2() -> Result<Self> {
        let mut c = zero_constants(3);
        let (e, f, h) = (0, 1, 2);
        let mut set = |a: usize, b: usize, k: usize, v: i64| {
            c[a][b][k] = BigInt::from(v);
            c[b][a][k] = BigInt::from(-v);
        };
        set(h, e, e, 2);
        set(h, f, f, -2);
        set(e, f, h, 1);
        Self::build(c, None, Some(vec![vec![2], vec![-2], vec![0]]), "sl_2".into())
    }

    /// Basis `E_ab` in row-major order.
    pub fn gl(n: usize) -> Result<Self> {
        if n == 0 || n * n > MAX_DIM {
            return Err(Error::ResourceLimit(format!("gl_{n} has dimension above {MAX_DIM}")));
        }
        let dim = n * n;
        let idx = |a: usize, b: usize| a * n + b;
        let mut c = zero_constants(dim);
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for d in 0..n {
                        let (x, y) = (idx(a, b), idx(cc, d));
                        // [E_ab, E_cd] = δ_bc E_ad − δ_da E_cb
                        if b == cc {
                            c[x][y][idx(a, d)] += 1;
                        }
                        if d == a {
                            c[x][y][idx(cc, b)] -= 1;
                        }
                    }
                }
            }
        }
        let weights = (0..dim)
            .map(|x| {
                let (a, b) = (x / n, x % n);
                let mut w = vec![0i64; n];
                w[a] += 1;
                w[b] -= 1;
                w
            })
            .collect();
        Self::build(c, None, Some(weights), format!("gl_{n}"))
    }

    /// `p^s · L`: the lattice spanned by `p^s e_i`, whose brackets pick up `p^s`.
    pub fn scaled(&self, p: u64, s: u32) -> Result<Self> {
        let scale = match self.scale {
            None => (p, s),
            Some((q, t)) if q == p => (p, s + t),
            Some(_) => return Err(Error::InvalidArgument("scales at different primes".into())),
        };
        let mut out = self.clone();
        out.scale = if scale.1 == 0 { None } else { Some(scale) };
        out.name = format!("{}^{}·{}", p, s, self.name);
        Ok(out)
    }

    /// Structure constants with the scale folded in.
    fn effective(&self) -> Vec<Vec<Vec<BigInt>>> {
        let f = self.scale_factor();
        self.constants
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(|x| x * &f).collect()).collect())
            .collect()
    }

    pub fn direct_sum(&self, other: &LieAlgebraZ) -> Result<Self> {
        let (n, m) = (self.dim, other.dim);
        let mut c = zero_constants(n + m);
        let (a, b) = (self.effective(), other.effective());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = a[i][j][k].clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    c[n + i][n + j][n + k] = b[i][j][k].clone();
                }
            }
        }
        let weights = match (&self.weights, &other.weights) {
            (Some(w1), Some(w2)) => {
                let (l1, l2) = (w1.first().map_or(0, Vec::len), w2.first().map_or(0, Vec::len));
                let pad = |w: &Vec<i64>, before: usize, after: usize| {
                    let mut v = vec![0; before];
                    v.extend(w);
                    v.extend(std::iter::repeat(0).take(after));
                    v
                };
                Some(
                    w1.iter()
                        .map(|w| pad(w, 0, l2))
                        .chain(w2.iter().map(|w| pad(w, l1, 0)))
                        .collect(),
                )
            }
            _ => None,
        };
        Self::build(c, None, weights, format!("{} ⊕ {}", self.name, other.name))
    }

    /// Structure constants in the basis `f_a = Σ_i u[a][i] e_i`; `u_inv` is
    /// the inverse of `u`. The grading is dropped.
    pub fn change_basis(&self, u: &IntMatrix, u_inv: &IntMatrix) -> Result<Self> {
        let n = self.dim;
        if u.shape() != (n, n) || u_inv.shape() != (n, n) || &(u * u_inv) != &IntMatrix::identity(n) {
            return Err(Error::InvalidArgument("need a unimodular matrix and its inverse".into()));
        }
        let c = self.effective();
        let mut out = zero_constants(n);
        for a in 0..n {
            for b in 0..n {
                // [f_a, f_b] in the e-basis
                let mut v = vec![BigInt::zero(); n];
                for i in 0..n {
                    if u.get(a, i).is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let uu = u.get(a, i) * u.get(b, j);
                        if uu.is_zero() {
                            continue;
                        }
                        for k in 0..n {
                            v[k] += &uu * &c[i][j][k];
                        }
                    }
                }
                // e_k = Σ_c u_inv[k][c] f_c
                for k in 0..n {
                    if v[k].is_zero() {
                        continue;
                    }
                    for cc in 0..n {
                        out[a][b][cc] += &v[k] * u_inv.get(k, cc);
                    }
                }
            }
        }
        Self::build(out, None, None, format!("{} (rebased)", self.name))
    }
}
