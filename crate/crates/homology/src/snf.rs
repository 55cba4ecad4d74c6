use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::IntMatrix;

/// `P * A * Q = D` with `P`, `Q` unimodular and `D` diagonal with a
/// divisibility chain of nonnegative entries.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
}

/// Nonzero Smith divisors and the rank.
pub fn snf(a: &IntMatrix) -> (Vec<BigInt>, usize) {
    let mut w = Work::new(a.clone(), false);
    w.run();
    let d = w.diagonal();
    let rank = d.iter().filter(|x| !x.is_zero()).count();
    (d.into_iter().filter(|x| !x.is_zero()).collect(), rank)
}

pub fn smith_form(a: &IntMatrix) -> SmithForm {
    let mut w = Work::new(a.clone(), true);
    w.run();
    let diagonal = w.diagonal();
    let rank = diagonal.iter().filter(|x| !x.is_zero()).count();
    let t = w.t.unwrap();
    SmithForm { diagonal, rank, p: t.p, p_inv: t.p_inv, q: t.q, q_inv: t.q_inv }
}

pub fn rank(a: &IntMatrix) -> usize {
    snf(a).1
}

struct Transforms {
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
}

struct Work {
    a: IntMatrix,
    t: Option<Transforms>,
}

impl Work {
    fn new(a: IntMatrix, track: bool) -> Self {
        let t = track.then(|| Transforms {
            p: IntMatrix::identity(a.rows()),
            p_inv: IntMatrix::identity(a.rows()),
            q: IntMatrix::identity(a.cols()),
            q_inv: IntMatrix::identity(a.cols()),
        });
        Work { a, t }
    }

    fn diagonal(&self) -> Vec<BigInt> {
        (0..self.a.rows().min(self.a.cols())).map(|i| self.a.get(i, i).clone()).collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.t {
            t.p.swap_rows(i, j);
            t.p_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.t {
            t.q.swap_cols(i, j);
            t.q_inv.swap_rows(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = &mut self.t {
            t.p.negate_row(i);
            t.p_inv.negate_col(i);
        }
    }

    // row i += c row j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        self.a.add_row_multiple(i, j, c);
        if let Some(t) = &mut self.t {
            t.p.add_row_multiple(i, j, c);
            t.p_inv.add_col_multiple(j, i, &-c);
        }
    }

    // col i += c col j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        self.a.add_col_multiple(i, j, c);
        if let Some(t) = &mut self.t {
            t.q.add_col_multiple(i, j, c);
            t.q_inv.add_row_multiple(j, i, &-c);
        }
    }

    // rows (i, j) <- [[s, u], [-b/g, a/g]] rows (i, j), where g = s a + u b
    fn gcd_rows(&mut self, i: usize, j: usize, s: &BigInt, u: &BigInt, x: &BigInt, y: &BigInt) {
        let z = -y;
        self.a.combine_rows(i, j, s, u, &z, x);
        if let Some(t) = &mut self.t {
            t.p.combine_rows(i, j, s, u, &z, x);
            // inverse [[x, -u], [y, s]] acts on the right of p_inv
            t.p_inv.combine_cols(i, j, x, y, &-u, s);
        }
    }

    fn gcd_cols(&mut self, i: usize, j: usize, s: &BigInt, u: &BigInt, x: &BigInt, y: &BigInt) {
        let z = -y;
        self.a.combine_cols(i, j, s, u, &z, x);
        if let Some(t) = &mut self.t {
            t.q.combine_cols(i, j, s, u, &z, x);
            t.q_inv.combine_rows(i, j, x, y, &-u, s);
        }
    }

    fn pivot_search(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| v.abs() < self.a.get(bi, bj).abs()) {
                    best = Some((i, j));
                    if v.is_one() || (-v).is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.a.rows().min(self.a.cols());
        for k in 0..n {
            let Some((pi, pj)) = self.pivot_search(k) else { return };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            loop {
                self.clear_column(k);
                self.clear_row(k);
                if (k + 1..self.a.rows()).any(|i| !self.a.get(i, k).is_zero()) {
                    continue;
                }
                // divisibility of the remaining block
                let piv = self.a.get(k, k).clone();
                let bad = (k + 1..self.a.rows())
                    .find(|&i| (k + 1..self.a.cols()).any(|j| !self.a.get(i, j).is_multiple_of(&piv)));
                match bad {
                    Some(i) => self.add_row(k, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(k, k).is_negative() {
                self.negate_row(k);
            }
        }
    }

    fn clear_column(&mut self, k: usize) {
        for i in k + 1..self.a.rows() {
            if self.a.get(i, k).is_zero() {
                continue;
            }
            let a = self.a.get(k, k).clone();
            let b = self.a.get(i, k).clone();
            if b.is_multiple_of(&a) {
                self.add_row(i, k, &-(&b / &a));
            } else {
                let e = a.extended_gcd(&b);
                let (x, y) = (&a / &e.gcd, &b / &e.gcd);
                self.gcd_rows(k, i, &e.x, &e.y, &x, &y);
            }
        }
    }

    fn clear_row(&mut self, k: usize) {
        for j in k + 1..self.a.cols() {
            if self.a.get(k, j).is_zero() {
                continue;
            }
            let a = self.a.get(k, k).clone();
            let b = self.a.get(k, j).clone();
            if b.is_multiple_of(&a) {
                self.add_col(j, k, &-(&b / &a));
            } else {
                let e = a.extended_gcd(&b);
                let (x, y) = (&a / &e.gcd, &b / &e.gcd);
                self.gcd_cols(k, j, &e.x, &e.y, &x, &y);
            }
        }
    }
}

/// Integer solution of `a x = v` if one exists.
pub fn solve(sf: &SmithForm, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let pv = sf.p.mul_vec(v);
    let mut y = vec![BigInt::zero(); sf.q.rows()];
    for (k, w) in pv.iter().enumerate() {
        let dk = sf.diagonal.get(k).filter(|d| !d.is_zero());
        match dk {
            Some(d) => {
                let (qq, r) = w.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[k] = qq;
            }
            None if !w.is_zero() => return None,
            None => {}
        }
    }
    Some(sf.q.mul_vec(&y))
}

/// Basis of the integer kernel of `a`, as columns.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let sf = smith_form(a);
    sf.q.column_slice(sf.rank, a.cols())
}

/// Whether every column of `u` lies in the column lattice of `v`.
pub fn lattice_contains(v: &IntMatrix, u: &IntMatrix) -> bool {
    assert_eq!(v.rows(), u.rows());
    if u.is_zero() {
        return true;
    }
    let sf = smith_form(v);
    (0..u.cols()).all(|j| solve(&sf, &u.column(j)).is_some())
}
