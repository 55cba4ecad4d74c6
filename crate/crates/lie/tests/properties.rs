use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ramcoh_homology::random::random_unimodular;
use ramcoh_homology::IntMatrix;
use ramcoh_lie::*;

const ELL: i64 = 1_000_003;

/// Rank over F_ell by plain Gaussian elimination.
fn rank_mod(m: &IntMatrix, ell: i64) -> usize {
    let (r, c) = m.shape();
    let mut a: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..c).map(|j| (m.get(i, j) % BigInt::from(ell)).to_i64().unwrap().rem_euclid(ell)).collect())
        .collect();
    let pow = |mut b: i64, mut e: i64| {
        let mut acc = 1i64;
        b %= ell;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % ell;
            }
            b = b * b % ell;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..c {
        let Some(piv) = (rank..r).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow(a[rank][col], ell - 2);
        for i in 0..r {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col] * inv % ell;
                for j in col..c {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(ell);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn betti_oracle(l: &LieAlgebraZ) -> Vec<usize> {
    let cx = ce_complex(l).unwrap();
    let ranks: Vec<usize> = cx.differentials().iter().map(|d| rank_mod(d, ELL)).collect();
    cx.dims()
        .iter()
        .enumerate()
        .map(|(k, &n)| n - ranks.get(k).copied().unwrap_or(0) - if k > 0 { ranks[k - 1] } else { 0 })
        .collect()
}

fn random_algebra(rng: &mut ChaCha8Rng) -> LieAlgebraZ {
    let base = |rng: &mut ChaCha8Rng| match rng.gen_range(0..5) {
        0 => LieAlgebraZ::abelian(rng.gen_range(1..=3)).unwrap(),
        1 => LieAlgebraZ::heisenberg(rng.gen_range(1..=2)).unwrap(),
        2 => LieAlgebraZ::sl2().unwrap(),
        3 => LieAlgebraZ::gl(2).unwrap(),
        _ => LieAlgebraZ::gl(1).unwrap(),
    };
    let mut l = base(rng);
    while l.dim() < 5 && rng.gen_bool(0.5) {
        l = l.direct_sum(&base(rng)).unwrap();
    }
    if rng.gen_bool(0.3) {
        l = l.scaled(3, rng.gen_range(1..=2)).unwrap();
    }
    if rng.gen_bool(0.5) {
        let (u, ui) = random_unimodular(rng, l.dim(), 6);
        l = l.change_basis(&u, &ui).unwrap();
    }
    l
}

fn map(pairs: &[(i64, u64)]) -> BTreeMap<i64, u64> {
    pairs.iter().copied().collect()
}

#[test]
fn d_squared_zero_on_random_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let l = random_algebra(&mut rng);
        let cx = ce_complex(&l).unwrap();
        for w in cx.differentials().windows(2) {
            assert!((&w[1] * &w[0]).is_zero(), "{}", l.name());
        }
    }
}

#[test]
fn betti_numbers_match_rank_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let l = random_algebra(&mut rng);
        assert_eq!(betti_numbers(&l).unwrap(), betti_oracle(&l), "{}", l.name());
    }
}

#[test]
fn small_examples() {
    let a1 = LieAlgebraZ::abelian(1).unwrap();
    let cx = ce_complex(&a1).unwrap();
    assert!(cx.differentials().iter().all(IntMatrix::is_zero));
    assert_eq!(betti_numbers(&a1).unwrap(), vec![1, 1]);
    let gl1 = LieAlgebraZ::gl(1).unwrap();
    assert_eq!(betti_numbers(&gl1.direct_sum(&gl1).unwrap()).unwrap(), vec![1, 2, 1]);
    // H^*(sl_2; Z): Betti (1,0,0,1); the integral lattice has 2-torsion in H^2.
    let sl2 = LieAlgebraZ::sl2().unwrap();
    assert_eq!(betti_numbers(&sl2).unwrap(), vec![1, 0, 0, 1]);
    // Heisenberg in dim 3: (1,2,2,1).
    assert_eq!(betti_numbers(&LieAlgebraZ::heisenberg(1).unwrap()).unwrap(), vec![1, 2, 2, 1]);
}

#[test]
fn gl_betti_numbers() {
    let gl2 = LieAlgebraZ::gl(2).unwrap();
    assert_eq!(betti_numbers(&gl2).unwrap(), vec![1, 1, 0, 1, 1]);
    assert_eq!(betti_oracle(&gl2), vec![1, 1, 0, 1, 1]);
    let t = Instant::now();
    let gl3 = LieAlgebraZ::gl(3).unwrap();
    let b = betti_numbers(&gl3).unwrap();
    assert!(t.elapsed().as_secs() < 120);
    assert_eq!(b, vec![1, 1, 0, 1, 1, 1, 1, 0, 1, 1]);
    assert_eq!(b.iter().map(|&x| x as u64).collect::<Vec<_>>(), dense(&exterior_poincare(&[1, 3, 5]), 9));
    assert_eq!(betti_oracle(&gl3), b);
}

#[test]
fn weight_blocks_agree_with_full_complex() {
    for l in [LieAlgebraZ::gl(2).unwrap().scaled(3, 1).unwrap(), LieAlgebraZ::heisenberg(2).unwrap()] {
        let whole: BTreeMap<usize, _> =
            ce_complex(&l).unwrap().cohomology().into_iter().map(|(k, m)| (k as usize, m)).collect();
        assert_eq!(whole, lie_cohomology(&l).unwrap());
    }
}

#[test]
fn scaling_keeps_ranks() {
    let gl2 = LieAlgebraZ::gl(2).unwrap();
    for s in 1..=3 {
        let h = lie_cohomology(&gl2.scaled(3, s).unwrap()).unwrap();
        let ranks: Vec<usize> = h.values().map(|m| m.free_rank()).collect();
        assert_eq!(ranks, vec![1, 1, 0, 1, 1]);
        assert!(h.values().any(|m| m.p_exponent(3) > 0));
    }
}

#[test]
fn scaled_gl2_has_bounded_torsion() {
    let r = lazard_check(2, 3, 2).unwrap();
    assert!(r.ranks_match);
    assert_eq!(r.ranks, vec![1, 1, 0, 1, 1]);
    assert!(r.max_exponent > 0);
    assert_eq!(r.max_exponent, *r.torsion_exponents.iter().max().unwrap());
    let json = serde_json::to_value(&r).unwrap();
    assert!(json.get("ranks").is_some() && json.get("max_exponent").is_some());
}

#[test]
fn lazard_examples() {
    let r = lazard_check(1, 3, 1).unwrap();
    assert_eq!(r.ranks, vec![1, 1]);
    assert_eq!(r.max_exponent, 0);
    let t = Instant::now();
    let r = lazard_check(3, 3, 2).unwrap();
    assert!(r.ranks_match);
    assert!(t.elapsed().as_secs() < 120);
    assert_eq!(lazard_check(4, 3, 1).unwrap_err().kind(), "resource-limit");
    assert!(lazard_check(2, 2, 2).is_err());
    assert!(lazard_check(2, 3, 0).is_err());
}

#[test]
fn exterior_examples() {
    assert_eq!(exterior_poincare(&[1]), map(&[(0, 1), (1, 1)]));
    assert_eq!(
        exterior_poincare(&[1, 3, 5]),
        map(&[(0, 1), (1, 1), (3, 1), (4, 1), (5, 1), (6, 1), (8, 1), (9, 1)])
    );
    assert_eq!(exterior_poincare(&[-1, -3]), map(&[(0, 1), (-1, 1), (-3, 1), (-4, 1)]));
}

#[test]
fn theorem_a_degrees() {
    assert_eq!(theorem_a_series(1), map(&[(0, 1), (-1, 1)]));
    assert_eq!(theorem_a_series(2), map(&[(0, 1), (-1, 1), (-3, 1), (-4, 1)]));
    assert_eq!(theorem_a_series(3), reflect(&exterior_poincare(&[1, 3, 5])));
    for n in 1..=6usize {
        let s = theorem_a_series(n);
        assert_eq!(s.values().sum::<u64>(), 1 << n);
        // subset sums of 1-2i
        let mut expected = BTreeMap::new();
        for mask in 0u32..1 << n {
            let d: i64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| 1 - 2 * (i as i64 + 1)).sum();
            *expected.entry(d).or_insert(0u64) += 1;
        }
        assert_eq!(s, expected);
    }
}

#[test]
fn invalid_algebras_rejected() {
    let mut c = vec![vec![vec![BigInt::zero(); 2]; 2]; 2];
    c[0][1][0] = BigInt::from(1);
    assert_eq!(LieAlgebraZ::new(c.clone()).unwrap_err().kind(), "invalid-input");
    c[1][0][0] = BigInt::from(-1);
    assert!(LieAlgebraZ::new(c).is_ok());
    assert_eq!(LieAlgebraZ::gl(4).unwrap_err().kind(), "resource-limit");
    let big = LieAlgebraZ::abelian(7).unwrap().direct_sum(&LieAlgebraZ::abelian(6).unwrap()).unwrap();
    assert_eq!(ce_complex(&big).unwrap_err().kind(), "resource-limit");
}
