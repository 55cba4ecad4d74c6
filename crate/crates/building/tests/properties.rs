use std::collections::BTreeMap;
use std::time::Instant;

use ramcoh_building::*;

fn h0_only(top: usize) -> BTreeMap<usize, usize> {
    (0..=top).map(|k| (k, usize::from(k == 0))).collect()
}

#[test]
fn neighbor_counts() {
    assert_eq!(neighbors(&LatticeClass::standard(2, 2).unwrap()).len(), 3);
    assert_eq!(neighbors(&LatticeClass::standard(2, 3).unwrap()).len(), 4);
    assert_eq!(neighbors(&LatticeClass::standard(3, 2).unwrap()).len(), 14);
    assert_eq!(neighbors(&LatticeClass::standard(3, 3).unwrap()).len(), 26);
    // every vertex of the tree has p + 1 neighbors, not just the center
    let far = LatticeClass::from_rows(3, &[vec![1, 5], vec![0, 27]]).unwrap();
    assert_eq!(neighbors(&far).len(), 4);
}

#[test]
fn classes_are_homothety_invariant() {
    let a = LatticeClass::from_rows(2, &[vec![2, 0], vec![0, 4]]).unwrap();
    let b = LatticeClass::from_rows(2, &[vec![1, 0], vec![0, 2]]).unwrap();
    assert_eq!(a, b);
    let c = LatticeClass::from_rows(3, &[vec![3, 6], vec![0, 9]]).unwrap();
    let d = LatticeClass::from_rows(3, &[vec![1, 2], vec![0, 3]]).unwrap();
    assert_eq!(c, d);
    // change of basis does not move the class
    let e = LatticeClass::from_rows(3, &[vec![1, 2], vec![1, 5]]).unwrap();
    assert_eq!(e, d);
    assert_eq!(LatticeClass::from_rows(3, &[vec![1, 0], vec![0, 7]]).unwrap(), LatticeClass::standard(2, 3).unwrap());
    assert!(LatticeClass::from_rows(3, &[vec![1, 2], vec![2, 4]]).is_err());
}

#[test]
fn neighbors_are_symmetric() {
    for (n, p, r) in [(2, 2, 3), (2, 3, 2), (3, 2, 1), (3, 3, 1)] {
        let ball = build_ball(n, p, r).unwrap();
        for c in &ball.vertices {
            for d in neighbors(c) {
                assert!(neighbors(&d).contains(c));
            }
        }
    }
}

#[test]
fn tree_vertex_counts() {
    for p in [2, 3, 5] {
        for r in 0..=4 {
            let b = build_ball(2, p, r).unwrap();
            assert_eq!(b.vertices.len() as u64, tree_ball_size(p, r), "p={p} r={r}");
            assert_eq!(b.count(2), b.vertices.len() - 1);
            assert!(b.max_simplex_size() <= 2);
        }
    }
}

#[test]
fn ball_examples() {
    let b = build_ball(2, 2, 2).unwrap();
    assert_eq!((b.count(1), b.count(2)), (10, 9));
    let b = build_ball(2, 3, 1).unwrap();
    assert_eq!((b.count(1), b.count(2)), (5, 4));
    let b = build_ball(3, 2, 1).unwrap();
    assert_eq!((b.count(1), b.count(2), b.count(3)), (15, 35, 21));
    assert_eq!(b.max_simplex_size(), 3);
    assert!(build_ball(3, 2, 2).is_err());
    assert!(build_ball(4, 2, 1).is_err());
}

#[test]
fn balls_are_acyclic() {
    let t = Instant::now();
    for (n, p, r) in [(2, 2, 4), (2, 3, 4), (2, 5, 4), (3, 2, 1), (3, 3, 1), (3, 5, 1)] {
        let b = build_ball(n, p, r).unwrap();
        for q in [2, 5] {
            assert_eq!(simplicial_cohomology(&b, q).unwrap(), h0_only(b.max_simplex_size() - 1), "({n},{p},{r}) q={q}");
        }
    }
    assert!(t.elapsed().as_secs() < 30);
}

#[test]
fn single_vertex() {
    let b = build_ball(3, 2, 0).unwrap();
    assert_eq!(b.vertices.len(), 1);
    assert_eq!(simplicial_cohomology(&b, 3).unwrap(), h0_only(0));
}

#[test]
fn larger_rank_three_ball_is_reported() {
    let b = build_ball_any(3, 2, 2).unwrap();
    assert!(!b.contractible_regime);
    assert!(b.max_simplex_size() <= 3);
    let h2 = simplicial_cohomology(&b, 2).unwrap();
    let h3 = simplicial_cohomology(&b, 3).unwrap();
    assert_eq!(h2, h3);
    assert_eq!(h2[&0], 1);
}

#[test]
fn json_round_trip() {
    let b = build_ball(3, 2, 1).unwrap();
    let s = serde_json::to_string(&b).unwrap();
    let back: BuildingBall = serde_json::from_str(&s).unwrap();
    assert_eq!(back, b);
    assert_eq!(simplicial_cohomology(&back, 5).unwrap(), h0_only(2));
    let mut broken = b.clone();
    broken.simplices.retain(|s| s != &vec![0, 1]);
    assert!(simplicial_cohomology(&broken, 5).is_err());
}
