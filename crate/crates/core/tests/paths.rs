mod common;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use detpaths::jacobitrudi::jt_matrix;
use detpaths::linalg::det;
use detpaths::paths::*;
use detpaths::poly::complete_homogeneous;
use detpaths::tableaux::{count_ssyt, enumerate_ssyt, skew_schur};
use detpaths::{Error, LatticePath, Point, Shape};

fn shape(s: &str) -> Shape {
    s.parse().unwrap()
}

#[test]
fn fig_lgt_intersections() {
    let t = common::fig_lgt();
    assert!(!is_nonintersecting(&t));
    assert!(t.is_identity());
    let q = t.first_intersection().unwrap();
    assert_eq!(q, Point::new(6, 2));
    let u = lgv_involution(&t).unwrap();
    assert_eq!(u.sign(), -1);
    assert_eq!(u.first_intersection(), Some(q));
    assert_eq!(lgv_involution(&u).unwrap(), t);
    assert_eq!(u.point_multiplicities(), t.point_multiplicities());
}

#[test]
fn involution_rejects_nonintersecting_tuples() {
    let t = enumerate_ssyt(&shape("3,1"), 3).next().unwrap();
    let p = tableau_to_paths(&t, 0);
    assert!(is_nonintersecting(&p));
    assert!(matches!(lgv_involution(&p), Err(Error::Nonintersecting)));
}

#[test]
fn path_counts_and_generating_functions() {
    let v = Point::new(0, 1);
    for (dx, dy) in [(0, 0), (3, 0), (0, 4), (2, 3), (4, 4)] {
        let w = Point::new(dx, 1 + dy);
        let all = all_paths(v, w);
        assert_eq!(BigInt::from(all.len()), count_paths(v, w));
        assert_eq!(gf_paths(v, w).unwrap(), complete_homogeneous(dx, 1, 1 + dy).unwrap());
        let mut words: Vec<String> = all.iter().map(LatticePath::word).collect();
        let sorted = words.clone();
        words.sort();
        words.dedup();
        assert_eq!(words, sorted);
    }
    assert!(all_paths(Point::new(2, 1), Point::new(1, 3)).is_empty());
    assert!(gf_paths(Point::new(2, 1), Point::new(1, 3)).unwrap().is_zero());
}

#[test]
fn signed_sum_is_the_determinant() {
    for s in ["2,1", "2,2", "3,1/1", "2,2,1/1", "3,2/2"] {
        let sh = shape(s);
        for n in 1..=3 {
            let tuples = enumerate_signed_tuples(&sh, n, 100_000).unwrap();
            let signed = signed_weight_sum(&tuples);
            assert_eq!(signed, skew_schur(&sh, n as u32), "{s} n={n}");
            assert_eq!(signed, det(&jt_matrix(&sh, n as u32).unwrap()).unwrap(), "{s} n={n}");
            let survivors: Vec<_> = tuples.iter().filter(|t| is_nonintersecting(t)).collect();
            assert_eq!(survivors.len(), count_ssyt(&sh, n as u32));
            assert!(survivors.iter().all(|t| t.is_identity()));
        }
    }
}

#[test]
fn tableaux_and_families_correspond() {
    for s in ["3,2,1", "3,3/1", "4,2,1/2,1"] {
        let sh = shape(s);
        for t in enumerate_ssyt(&sh, 3) {
            for shift in [-2, 0, 3] {
                let p = tableau_to_paths(&t, shift);
                assert!(is_nonintersecting(&p));
                assert_eq!(p.weight(), detpaths::tableaux::tableau_weight(&t));
                assert_eq!(paths_to_tableau(&p).unwrap(), t);
            }
        }
    }
}

#[test]
fn signed_tuple_budget_is_enforced() {
    let err = enumerate_signed_tuples(&shape("4,4,4"), 4, 10).unwrap_err();
    assert!(err.to_string().contains("--max-tuples"), "{err}");
}

#[test]
fn random_tuples_cancel_in_pairs() {
    let sh = shape("4,3,2,1");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen = 0;
    for _ in 0..2000 {
        let Some(t) = random_signed_tuple(&sh, 4, &mut rng) else { continue };
        if is_nonintersecting(&t) {
            continue;
        }
        seen += 1;
        let u = lgv_involution(&t).unwrap();
        assert_eq!(u.weight(), t.weight());
        assert_eq!(u.sign(), -t.sign());
        assert_eq!(lgv_involution(&u).unwrap(), t);
    }
    assert!(seen > 100);
}

#[test]
fn endpoints_follow_the_shape() {
    let (lo, up) = endpoints_for_shape(&shape("4,2,1/1"), 5, 2);
    assert_eq!(lo, vec![Point::new(2, 1), Point::new(0, 1), Point::new(-1, 1)]);
    assert_eq!(up, vec![Point::new(5, 5), Point::new(2, 5), Point::new(0, 5)]);
}
