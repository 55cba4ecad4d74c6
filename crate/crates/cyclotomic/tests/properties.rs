use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramcoh_cyclotomic::*;
use ramcoh_valuation::{vp_int, ExtendedRational};

fn el(p: u64, level: u32, c: &[i64]) -> CycElement {
    let v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
    CycElement::new(p, level, 12, &v).unwrap()
}

fn fin(n: i64, d: i64) -> ExtendedRational {
    ExtendedRational::Finite(BigRational::new(n.into(), d.into()))
}

fn zeta(p: u64, level: u32, j: u64) -> CycElement {
    CycElement::zeta_power(p, level, 12, j).unwrap()
}

fn one(p: u64, level: u32) -> CycElement {
    CycElement::from_int(p, level, 12, 1).unwrap()
}

/// Independent norm: determinant of multiplication by x on Z[zeta] in the
/// power basis, exact over Z (Bareiss), small coefficients only.
fn norm_valuation(x: &[i64], p: u64, level: u32) -> BigRational {
    let f = phi(p, level);
    let pk = p.pow(level) as usize;
    let block = pk / p as usize;
    // x * zeta^i, reduced by hand over Z
    let mut mat = vec![vec![BigInt::zero(); f]; f];
    for i in 0..f {
        let mut full = vec![BigInt::zero(); pk];
        for (j, &c) in x.iter().enumerate() {
            full[(i + j) % pk] += c;
        }
        let mut col = full[..f].to_vec();
        for r in 0..block {
            for t in 0..p as usize - 1 {
                let c = full[f + r].clone();
                col[r + t * block] -= c;
            }
        }
        for (row, c) in col.into_iter().enumerate() {
            mat[row][i] = c;
        }
    }
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..f {
        if mat[k][k].is_zero() {
            let i = (k + 1..f).find(|&i| !mat[i][k].is_zero()).expect("nonsingular");
            mat.swap(i, k);
            sign = -sign;
        }
        for i in k + 1..f {
            for j in k + 1..f {
                let v = (&mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j]).div_floor(&prev);
                mat[i][j] = v;
            }
        }
        prev = mat[k][k].clone();
    }
    let det = sign * &mat[f - 1][f - 1];
    BigRational::new(BigInt::from(vp_int(&det, p).unwrap()), BigInt::from(f as u64))
}

#[test]
fn valuation_examples() {
    let x = zeta(3, 2, 1).sub(&one(3, 2)).unwrap();
    assert_eq!(x.valuation().unwrap(), fin(1, 6));
    assert_eq!(CycElement::from_int(3, 2, 12, 3).unwrap().valuation().unwrap(), fin(1, 1));
    assert_eq!(zeta(3, 2, 1).valuation().unwrap(), fin(0, 1));
    let zero = CycElement::from_int(3, 2, 12, 0).unwrap();
    assert_eq!(zero.valuation().unwrap_err().kind(), "precision-exhausted");
    let deep = CycElement::from_int(3, 2, 12, 3i64.pow(10)).unwrap();
    assert_eq!(deep.valuation().unwrap_err().kind(), "precision-exhausted");
}

#[test]
fn valuation_matches_norm_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, level) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1), (3, 3)] {
        for _ in 0..40 {
            let f = phi(p, level);
            let c: Vec<i64> = (0..f).map(|_| rng.gen_range(-4..=4)).collect();
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            let x = el(p, level, &c);
            let expect = norm_valuation(&c, p, level);
            match x.valuation() {
                Ok(v) => assert_eq!(v, ExtendedRational::Finite(expect), "{c:?}"),
                Err(_) => assert!(expect >= BigRational::from_integer(10.into())),
            }
        }
    }
}

#[test]
fn galois_examples_and_invariance() {
    assert_eq!(zeta(3, 2, 1).galois_act(4).unwrap(), zeta(3, 2, 4));
    assert_eq!(zeta(3, 2, 1).galois_act(1).unwrap(), zeta(3, 2, 1));
    let x = el(3, 1, &[2, 5]).embed_to(2).unwrap();
    assert_eq!(x.galois_act(4).unwrap(), x);
    assert!(zeta(3, 2, 1).galois_act(3).is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let c: Vec<i64> = (0..18).map(|_| rng.gen_range(-9..=9)).collect();
        let x = el(3, 3, &c);
        let v = x.valuation().unwrap();
        for a in [2, 4, 5, 7, 10, 26] {
            assert_eq!(x.galois_act(a).unwrap().valuation().unwrap(), v);
        }
    }
}

#[test]
fn trace_examples() {
    assert!(zeta(3, 2, 1).trace_step().unwrap().is_zero());
    let x = zeta(3, 2, 1).sub(&one(3, 2)).unwrap();
    assert_eq!(x.trace_step().unwrap(), CycElement::from_int(3, 1, 12, -3).unwrap());
    assert_eq!(one(3, 2).trace_step().unwrap(), CycElement::from_int(3, 1, 12, 3).unwrap());
    // floor bound with d = 6
    assert_eq!(x.trace_step().unwrap().valuation().unwrap(), fin(1, 1));
    let base = el(3, 1, &[4, 1]);
    assert_eq!(base.normalized_trace().unwrap(), base);
    assert!(zeta(3, 2, 1).normalized_trace().unwrap().is_zero());
    assert_eq!(x.normalized_trace().unwrap(), CycElement::from_int(3, 1, 12, -1).unwrap());
    assert_eq!(base.trace_step().unwrap_err().kind(), "precondition-violation");
}

#[test]
fn trace_step_matches_power_formula() {
    // tr(zeta^j) = p zeta^j if p | j, else 0
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, level) in [(3u64, 2u32), (3, 3), (5, 2), (3, 4)] {
        let f = phi(p, level);
        let c: Vec<i64> = (0..f).map(|_| rng.gen_range(0..1000)).collect();
        let x = el(p, level, &c);
        let expect: Vec<BigInt> = c.iter().step_by(p as usize).map(|&v| BigInt::from(v * p as i64)).collect();
        assert_eq!(x.trace_step().unwrap(), CycElement::new(p, level - 1, 12, &expect).unwrap());
    }
}

#[test]
fn trace_commutes_with_sigma_and_t_of_t_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let (p, level) = [(3u64, 3u32), (5, 2), (3, 2)][rng.gen_range(0..3)];
        let c: Vec<i64> = (0..phi(p, level)).map(|_| rng.gen_range(0..10_000)).collect();
        let x = el(p, level, &c);
        let s = 1 + p as i64;
        assert_eq!(x.galois_act(s).unwrap().trace_step().unwrap(), x.trace_step().unwrap().galois_act(s).unwrap());
        assert_eq!(x.normalized_step().unwrap().normalized_trace().unwrap(), x.normalized_trace().unwrap());
    }
}

#[test]
fn ring_operations() {
    // zeta^{p^k} = 1, and (zeta - 1)^{phi} has valuation 1
    let z = zeta(5, 2, 1);
    let mut acc = one(5, 2);
    for _ in 0..25 {
        acc = acc.mul(&z).unwrap();
    }
    assert_eq!(acc, one(5, 2));
    let pi = z.sub(&one(5, 2)).unwrap();
    let mut pw = one(5, 2);
    for _ in 0..20 {
        pw = pw.mul(&pi).unwrap();
    }
    assert_eq!(pw.valuation().unwrap(), fin(1, 1));
    assert!(z.add(&zeta(5, 1, 1)).is_err());
    assert_eq!(zeta(5, 1, 1).embed_up(), zeta(5, 2, 5));
}

#[test]
fn sigma_example_slack() {
    let x = zeta(3, 2, 1).sub(&one(3, 2)).unwrap();
    // v(x - t(x)) = v(zeta) = 0, bound = 1/2 - 7/6 = -2/3
    assert_eq!(trace_sigma_slack(&x).unwrap(), fin(2, 3));
    let fixed = el(3, 1, &[1, 2]).embed_to(2).unwrap();
    assert_eq!(trace_sigma_slack(&fixed).unwrap(), ExtendedRational::Infinity);
}

#[test]
fn lab_reports_no_violations() {
    let r = verify_trace_bounds(3, 2, 50, 12, 1).unwrap();
    assert!(r.sufficiently_ramified);
    assert_eq!(r.violations, 0);
    assert_eq!(r.inequalities.len(), 4);
    assert!(r.inequalities.iter().all(|i| i.checked >= 100));
    let again = verify_trace_bounds(3, 2, 50, 12, 1).unwrap();
    assert_eq!(r, again);
    let json = serde_json::to_value(&r).unwrap();
    assert!(json["inequalities"][0]["min_slack"].is_string());
    assert_eq!(verify_trace_bounds(2, 2, 5, 12, 1).unwrap_err().kind(), "invalid-argument");
}

#[test]
fn lab_is_independent_of_thread_count() {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let one = pool.install(|| verify_trace_bounds(5, 1, 20, 12, 9).unwrap());
    let many = verify_trace_bounds(5, 1, 20, 12, 9).unwrap();
    assert_eq!(one, many);
}
