use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ramcoh_witt::*;

fn w(p: u64, m: Option<u32>, c: &[i64]) -> PTypicalWitt {
    PTypicalWitt::from_ints(p, m, c).unwrap()
}

fn random_witt(rng: &mut ChaCha8Rng, p: u64, m: Option<u32>, len: usize) -> PTypicalWitt {
    let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
    w(p, m, &c)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn ghost_examples() {
    assert_eq!(w(3, None, &[1, 1]).ghost().unwrap(), big(&[1, 4]));
    assert_eq!(w(2, None, &[3, 0, 0]).ghost().unwrap(), big(&[3, 9, 81]));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let u = random_witt(&mut rng, 3, None, 3);
        let a = u.coords();
        // direct polynomial evaluation
        let expect = vec![
            a[0].clone(),
            a[0].pow(3) + 3 * &a[1],
            a[0].pow(9) + 3 * a[1].pow(3) + 9 * &a[2],
        ];
        assert_eq!(u.ghost().unwrap(), expect);
    }
    assert!(w(3, Some(2), &[1, 1]).ghost().is_err());
}

#[test]
fn arithmetic_examples() {
    let one = w(3, None, &[1, 0]);
    assert_eq!(one.add(&one).unwrap().coords(), big(&[2, -2]).as_slice());
    let u = w(5, Some(3), &[7, 11, 2]);
    assert_eq!(u.add(&PTypicalWitt::zero(5, Some(3), 3).unwrap()).unwrap(), u);
    assert_eq!(u.mul(&PTypicalWitt::one(5, Some(3), 3).unwrap()).unwrap(), u);
    let n = u.neg().unwrap();
    assert_eq!(u.add(&n).unwrap(), PTypicalWitt::zero(5, Some(3), 3).unwrap());
    // W_n(F_p) is Z/p^n: 1 + 1 + ... + 1 (p times) = (0, 1, 0, ...)
    let one = PTypicalWitt::one(3, Some(1), 3).unwrap();
    let mut s = PTypicalWitt::zero(3, Some(1), 3).unwrap();
    for _ in 0..3 {
        s = s.add(&one).unwrap();
    }
    assert_eq!(s.coords(), big(&[0, 1, 0]).as_slice());
}

#[test]
fn ghost_is_a_ring_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..200 {
        let p = [2, 3][i % 2];
        let len = 1 + i % 3;
        let (u, v) = (random_witt(&mut rng, p, None, len), random_witt(&mut rng, p, None, len));
        let (gu, gv) = (u.ghost().unwrap(), v.ghost().unwrap());
        let sum: Vec<BigInt> = gu.iter().zip(&gv).map(|(a, b)| a + b).collect();
        let prod: Vec<BigInt> = gu.iter().zip(&gv).map(|(a, b)| a * b).collect();
        assert_eq!(u.add(&v).unwrap().ghost().unwrap(), sum);
        assert_eq!(u.mul(&v).unwrap().ghost().unwrap(), prod);
        assert_eq!(PTypicalWitt::from_ghost(p, &gu).unwrap(), u);
    }
}

#[test]
fn ring_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..100 {
        let p = [2, 3][i % 2];
        let len = 1 + i % 3;
        let m = [None, Some(1), Some(2), Some(3)][i % 4];
        let (a, b, c) =
            (random_witt(&mut rng, p, m, len), random_witt(&mut rng, p, m, len), random_witt(&mut rng, p, m, len));
        assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }
}

#[test]
fn reduction_commutes_with_operations() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..60 {
        let p = [2, 3][i % 2];
        let len = 1 + i % 3;
        let (u, v) = (random_witt(&mut rng, p, None, len), random_witt(&mut rng, p, None, len));
        let red = |x: &PTypicalWitt| PTypicalWitt::new(p, Some(2), x.coords().to_vec()).unwrap();
        assert_eq!(red(&u.add(&v).unwrap()), red(&u).add(&red(&v)).unwrap());
        assert_eq!(red(&u.mul(&v).unwrap()), red(&u).mul(&red(&v)).unwrap());
    }
}

#[test]
fn teichmuller_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let (a, b) = (BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(-9..=9)));
        let ta = PTypicalWitt::teichmuller(3, None, 3, a.clone()).unwrap();
        let tb = PTypicalWitt::teichmuller(3, None, 3, b.clone()).unwrap();
        assert_eq!(ta.mul(&tb).unwrap(), PTypicalWitt::teichmuller(3, None, 3, a * b).unwrap());
    }
}

#[test]
fn witt_input_checks() {
    assert!(PTypicalWitt::from_ints(4, None, &[1]).is_err());
    assert!(PTypicalWitt::from_ints(3, None, &[0; 17]).is_err());
    assert!(w(3, None, &[1, 0]).add(&w(3, Some(2), &[1, 0])).is_err());
    // a 16-term vector over Z/p^m is fine; over Z the ghosts are refused
    let long = PTypicalWitt::from_ints(3, Some(4), &[2; 16]).unwrap();
    assert_eq!(long.add(&long).unwrap().len(), 16);
    let long_z = PTypicalWitt::from_ints(3, None, &[2; 16]).unwrap();
    assert_eq!(long_z.ghost().unwrap_err().kind(), "resource-limit");
}

#[test]
fn field_moduli_are_irreducible_and_recorded() {
    let f9 = FiniteField::new(3, 2).unwrap();
    assert_eq!(f9.modulus(), &[1, 0, 1]);
    let f27 = FiniteField::new(3, 3).unwrap();
    assert_eq!(f27.modulus(), &[1, 2, 0, 1]);
    // multiplicative group is cyclic of order q - 1 and has no zero divisors
    for f in [&f9, &f27, &FiniteField::new(2, 4).unwrap()] {
        let q = f.order();
        for a in 1..q {
            assert_eq!(f.pow(a, q - 1), 1);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert!(f.elements().all(|a| f.trace(a) < f.p()));
    }
}

fn enumerate_roots(f: &FiniteField, a: Fq) -> Vec<Fq> {
    f.elements().filter(|&x| f.sub(f.pow(x, f.p()), x) == a).collect()
}

#[test]
fn artin_schreier_examples() {
    let f3 = FiniteField::prime(3).unwrap();
    let s = artin_schreier_solve(&f3, 0).unwrap();
    assert_eq!(s.root, AsRoot::Base(0));
    let s = artin_schreier_solve(&f3, 1).unwrap();
    assert_eq!(s.field_degree, 3);
    assert!(matches!(s.root, AsRoot::Extension(_)));
    assert!(s.verify(&f3, 1));
    assert!(enumerate_roots(&f3, 1).is_empty());
}

#[test]
fn artin_schreier_over_f9_and_f27() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for f in [FiniteField::new(3, 2).unwrap(), FiniteField::new(3, 3).unwrap()] {
        for _ in 0..100 {
            let a = rng.gen_range(0..f.order());
            let s = artin_schreier_solve(&f, a).unwrap();
            assert!(s.verify(&f, a));
            // additive Hilbert 90 by enumeration
            let roots = enumerate_roots(&f, a);
            if f.trace(a) == 0 {
                assert_eq!(roots.len(), 3);
                assert!(matches!(s.root, AsRoot::Base(x) if roots.contains(&x)));
            } else {
                assert!(roots.is_empty());
                assert_eq!(s.field_degree, 3 * f.degree());
            }
        }
    }
    assert!(t.elapsed().as_secs() < 10);
}

fn random_series(rng: &mut ChaCha8Rng, f: &FiniteField, order: usize) -> UnitSeries {
    let mut c: Vec<Fq> = (0..=order).map(|_| rng.gen_range(0..f.order())).collect();
    c[0] = 1;
    UnitSeries::new(f.clone(), c).unwrap()
}

#[test]
fn split_examples() {
    let f3 = FiniteField::prime(3).unwrap();
    // 1 + x^2 at p = 3
    let mut c = vec![0; 9];
    c[0] = 1;
    c[2] = 1;
    let f = UnitSeries::new(f3.clone(), c).unwrap();
    let s = series_split_p_typical(&f).unwrap();
    assert_eq!(s.p_part, UnitSeries::one(f3.clone(), 8).unwrap());
    assert_eq!(s.prime_to_p_parts.keys().copied().collect::<Vec<_>>(), vec![2]);
    assert_eq!(&s.prime_to_p_parts[&2].coeffs()[..2], &[1, 1]);
    assert_eq!(s.reconstruct(8).unwrap(), f);
    // 1 + x: the coefficient of x is read off the p-part
    let mut c = vec![0; 9];
    c[0] = 1;
    c[1] = 1;
    let s = series_split_p_typical(&UnitSeries::new(f3.clone(), c).unwrap()).unwrap();
    assert_eq!(s.p_part.coeff(1), 1);
    // p-typical input is its own p-part
    let g = UnitSeries::from_coordinates(f3.clone(), 30, &BTreeMap::from([(1, 2), (3, 1), (9, 2), (27, 1)])).unwrap();
    assert!(g.is_p_typical());
    let s = series_split_p_typical(&g).unwrap();
    assert_eq!(s.p_part, g);
    assert!(s.prime_to_p_parts.is_empty());
}

#[test]
fn split_reconstructs_to_order_64() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in [FiniteField::prime(2).unwrap(), FiniteField::new(3, 2).unwrap(), FiniteField::prime(5).unwrap()] {
        for _ in 0..10 {
            let s = random_series(&mut rng, &f, 64);
            let split = series_split_p_typical(&s).unwrap();
            assert!(split.p_part.is_p_typical());
            assert!(split.prime_to_p_parts.values().all(UnitSeries::is_p_typical));
            assert!(split.prime_to_p_parts.keys().all(|&n| n > 1 && n % f.p() as usize != 0));
            assert_eq!(split.reconstruct(64).unwrap(), s);
            assert_eq!(split.p_part.coeff(1), s.coeff(1));
        }
    }
}

#[test]
fn p_part_is_a_group_homomorphism() {
    // sum in the p-typical quotient = p-part of the product of p-parts
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for f in [FiniteField::prime(2).unwrap(), FiniteField::prime(3).unwrap(), FiniteField::new(3, 2).unwrap()] {
        for _ in 0..10 {
            let (a, b) = (random_series(&mut rng, &f, 40), random_series(&mut rng, &f, 40));
            let pa = series_split_p_typical(&a).unwrap().p_part;
            let pb = series_split_p_typical(&b).unwrap().p_part;
            let pab = series_split_p_typical(&a.mul(&b).unwrap()).unwrap().p_part;
            assert_eq!(pab, series_split_p_typical(&pa.mul(&pb).unwrap()).unwrap().p_part);
        }
    }
}

#[test]
fn coordinates_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = FiniteField::new(2, 3).unwrap();
    for _ in 0..20 {
        let s = random_series(&mut rng, &f, 50);
        assert_eq!(UnitSeries::from_coordinates(f.clone(), 50, &s.coordinates()).unwrap(), s);
        assert_eq!(s.mul(&s.inverse()).unwrap(), UnitSeries::one(f.clone(), 50).unwrap());
    }
    assert!(UnitSeries::new(f.clone(), vec![0, 1]).is_err());
    assert!(UnitSeries::one(f, 300).is_err());
}
