use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ramcoh_ramification::*;
use ramcoh_valuation::{frac, rat, vp_int};

fn random_profile(rng: &mut ChaCha8Rng) -> FiltrationProfile {
    let primes = [2u64, 3, 5, 7];
    // divisor chain of at most four levels above the trivial group
    let levels = rng.gen_range(1..=4);
    let mut orders = vec![1u64];
    for _ in 0..levels {
        let f = primes[rng.gen_range(0..4)] * rng.gen_range(1..=2);
        orders.push(orders.last().unwrap() * f);
    }
    orders.reverse();
    let mut u = rng.gen_range(-1..=0);
    let mut breaks = Vec::new();
    for o in orders {
        breaks.push((u, o));
        u += rng.gen_range(1..=5);
    }
    FiltrationProfile::new(breaks).unwrap()
}

#[test]
fn lower_and_upper_differents_agree_on_500_profiles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let prof = random_profile(&mut rng);
        let lower = BigRational::from_integer(different_lower(&prof).into());
        assert_eq!(lower, different_upper(&prof), "{:?}", prof.breaks());
        assert_eq!(different_lower(&prof) == 0, prof.is_unramified());
    }
}

#[test]
fn psi_inverts_phi() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let prof = random_profile(&mut rng);
        let (phi, psi) = (herbrand_phi(&prof), herbrand_psi(&prof));
        for b in &phi.breakpoints {
            assert_eq!(psi.eval(&phi.eval(b)), *b);
        }
        for _ in 0..100 {
            let x = frac(rng.gen_range(-100..2000), rng.gen_range(1..100));
            if x < rat(-1) {
                continue;
            }
            assert_eq!(psi.eval(&phi.eval(&x)), x);
            assert_eq!(phi.eval(&psi.eval(&x)), x);
        }
        assert!(phi.slopes.iter().all(|s| s.is_positive()));
        assert_eq!(phi.eval(&rat(0)), rat(0));
        assert_eq!(phi.eval(&rat(-1)), rat(-1));
    }
}

#[test]
fn abelian_profiles_have_integral_upper_jumps() {
    // cyclic p-power quotients of the unit filtration, times unramified parts
    for p in [2u64, 3, 5, 7] {
        for n in 1..=4u32 {
            let g = cyclotomic_profile(p, n).unwrap();
            for s in lower_to_upper(&g) {
                assert!(s.v.is_integer());
            }
            let mut h = p;
            while h <= p.pow(n - 1) {
                let q = cyclic_quotient_profile(&g, h).unwrap();
                for s in lower_to_upper(&q) {
                    assert!(s.v.is_integer());
                }
                h *= p;
            }
        }
    }
}

#[test]
fn transitivity_in_cyclotomic_towers() {
    for p in [2u64, 3, 5] {
        for n in 1..=4u32 {
            let g = cyclotomic_profile(p, n).unwrap();
            let order = g.total_order();
            let mut h = 1u64;
            while h <= order {
                if order % h == 0 {
                    let sub = cyclic_subgroup_profile(&g, h).unwrap();
                    let quo = cyclic_quotient_profile(&g, h).unwrap();
                    assert_eq!(
                        different_lower(&g),
                        different_lower(&sub) + sub.e() * different_lower(&quo),
                        "p = {p}, n = {n}, h = {h}"
                    );
                }
                h += 1;
            }
        }
    }
}

// ---- discriminant oracle: resultant of Phi and Phi' by fraction-free elimination

fn cyclotomic_poly(p: u64, n: u32) -> Vec<BigInt> {
    // Phi_{p^n}(x) = sum_{i<p} x^{i p^{n-1}}, coefficients low to high
    let q = p.pow(n - 1) as usize;
    let mut c = vec![BigInt::zero(); q * (p as usize - 1) + 1];
    for i in 0..p as usize {
        c[i * q] = BigInt::one();
    }
    c
}

fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else { return BigInt::zero() };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for r in 0..n {
        for (i, c) in f.iter().rev().enumerate() {
            s[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in g.iter().rev().enumerate() {
            s[n + r][r + i] = c.clone();
        }
    }
    det(s)
}

#[test]
fn cyclotomic_different_equals_discriminant_exponent() {
    for (p, n) in [(3u64, 2u32), (2, 3), (5, 2), (3, 3), (2, 4)] {
        let phi = cyclotomic_poly(p, n);
        let dphi: Vec<BigInt> = phi.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
        let disc = resultant(&phi, &dphi);
        let from_norm = vp_int(&disc, p).unwrap();
        let closed = p.pow(n - 1) * (n as u64 * p - n as u64 - 1);
        let prof = cyclotomic_profile(p, n).unwrap();
        assert_eq!(from_norm, closed);
        assert_eq!(different_lower(&prof), closed);
        assert_eq!(different_upper(&prof), BigRational::from_integer(closed.into()));
    }
}

#[test]
fn profiles_round_trip_json() {
    let prof: FiltrationProfile =
        serde_json::from_str(r#"{"breaks":[[0,6],[1,3],[2,3],[3,1]]}"#).unwrap();
    assert_eq!(different_lower(&prof), 9);
    let s = serde_json::to_string(&prof).unwrap();
    assert_eq!(serde_json::from_str::<FiltrationProfile>(&s).unwrap(), prof);
    assert!(serde_json::from_str::<FiltrationProfile>(r#"{"breaks":[[0,6],[1,4],[2,1]]}"#).is_err());
}
