use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ramcoh_towers::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn random_sequence(rng: &mut ChaCha8Rng, p: u64) -> JumpSequence {
    let e_k = rng.gen_range(1..=4u64);
    let r = rng.gen_range(0..=2usize);
    let mut js = vec![-1i64; r + 1];
    let mut u = rng.gen_range(0..=3i64);
    for _ in 0..rng.gen_range(1..=3) {
        js.push(u);
        u += rng.gen_range(1..=2 * e_k as i64);
    }
    for _ in 0..3 {
        js.push(u);
        u += e_k as i64;
    }
    JumpSequence::from_jumps(p, e_k, js.into_iter().map(q).collect()).unwrap()
}

#[test]
fn step_different_matches_cumulative_differents() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [2u64, 3, 5] {
        for _ in 0..20 {
            let s = random_sequence(&mut rng, p);
            for n in s.inertia_index() + 1..=5 {
                assert_eq!(
                    step_different(&s, n).unwrap(),
                    step_different_via_profiles(&s, n).unwrap(),
                    "{:?} level {n}",
                    s.prefix()
                );
            }
        }
    }
}

#[test]
fn cyclotomic_tower_over_q_p_zeta_p_meets_the_bound() {
    for p in [3u64, 5] {
        let s = cyclotomic_jumps(p, p - 1).unwrap();
        for n in 1..=4usize {
            let closed = q(((p - 1) * p.pow(n as u32)) as i64);
            assert_eq!(step_different(&s, n).unwrap(), closed);
        }
        let rep = sufficiency_report(&s, 4);
        assert!(rep.holds);
        assert!(rep.levels.iter().all(|l| l.slack.is_zero()));
        assert!(rep.tail_constant_slack.is_zero());
    }
}

#[test]
fn sufficiency_survives_tame_base_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut seen = 0;
    while seen < 50 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let s = random_sequence(&mut rng, p);
        let (_, s) = stabilization_shift(&s).unwrap();
        assert!(is_sufficiently_ramified(&s, 6));
        let e = loop {
            let e = rng.gen_range(1..=7u64);
            if e % p != 0 {
                break e;
            }
        };
        let scaled = s.tame_base_change(e).unwrap();
        assert!(is_sufficiently_ramified(&scaled, 6), "{:?} * {e}", s.prefix());
        seen += 1;
    }
}

#[test]
fn shifted_towers_are_sufficiently_ramified() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for i in 0..50 {
        let p = [2u64, 3, 5][i % 3];
        let s = random_sequence(&mut rng, p);
        let (n, shifted) = stabilization_shift(&s).unwrap();
        assert!(is_sufficiently_ramified(&shifted, 5), "{:?} shifted by {n}", s.prefix());
        assert_eq!(shifted.e_k(), s.e_k() * s.level_ramification(n));
        if n > 0 {
            // minimality: the base itself was not sufficiently ramified
            assert!(!is_sufficiently_ramified(&s, s.prefix().len() + 2));
        }
    }
}

#[test]
fn json_round_trip() {
    let s = cyclotomic_jumps(3, 2).unwrap();
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(text, r#"{"p":3,"eK":2,"prefix":["-1","2"],"Nstar":1}"#);
    assert_eq!(serde_json::from_str::<JumpSequence>(&text).unwrap(), s);
    assert!(step_different(&s, 3).unwrap() > BigRational::zero());
}
