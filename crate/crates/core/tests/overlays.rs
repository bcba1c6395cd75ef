use std::collections::{HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use detpaths::identities::check_dodgson_schur;
use detpaths::overlays::{
    enumerate_overlays, overlay_gf, recolour, trail_from, trail_structure, verify_dodgson_bijection, DodgsonLayout,
    DodgsonTerm, EndKind, Overlay,
};
use detpaths::tableaux::skew_schur;
use detpaths::{Point, Semipartition, Shape};

fn part(v: &[i64]) -> Semipartition {
    Semipartition::partition(v).unwrap()
}

fn sample(layout: &DodgsonLayout, term: DodgsonTerm, count: usize, seed: u64) -> Vec<Overlay> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| layout.random_overlay(term, &mut rng).expect("the term has overlays")).collect()
}

#[test]
fn fig_dodgson2_trail_ends() {
    let layout = DodgsonLayout::new(&part(&[9, 7, 5, 3, 3, 1]), 7).unwrap();
    let s = layout.handle();
    assert_eq!(s, Point::new(8, 7));
    let (rightmost_lower, leftmost_upper) = (Point::new(-1, 1), Point::new(-5, 7));

    for o in sample(&layout, DodgsonTerm::Full, 200, 1) {
        let t = trail_from(&o, s).unwrap();
        assert_eq!(t.end.point, rightmost_lower);
        assert_eq!(t.end.kind, EndKind::Lower);
        assert_eq!(layout.classify(&recolour(&o, &t).unwrap()), Some(DodgsonTerm::Minors));
    }

    let mut ends = HashSet::new();
    for o in sample(&layout, DodgsonTerm::Minors, 400, 2) {
        let t = trail_from(&o, s).unwrap();
        assert!(t.end.point == rightmost_lower || t.end.point == leftmost_upper, "{}", t.end);
        ends.insert(t.end.point);
        let img = recolour(&o, &t).unwrap();
        let expected = if t.end.point == rightmost_lower { DodgsonTerm::Full } else { DodgsonTerm::Cross };
        assert_eq!(layout.classify(&img), Some(expected));
    }
    assert_eq!(ends.len(), 2, "both endings occur in the middle picture");

    for o in sample(&layout, DodgsonTerm::Cross, 200, 3) {
        let t = trail_from(&o, s).unwrap();
        assert_eq!(t.end.point, leftmost_upper);
        assert_eq!(t.end.kind, EndKind::Upper);
    }
}

#[test]
fn scaled_dodgson_pair_gf() {
    let lambda: Shape = "3,2,1".parse().unwrap();
    let sigma: Shape = "2".parse().unwrap();
    let os = enumerate_overlays(&lambda, 0, &sigma, -1, 2, 10_000).unwrap();
    assert_eq!(overlay_gf(&os), &skew_schur(&lambda, 2) * &skew_schur(&sigma, 2));
    let layout = DodgsonLayout::new(&part(&[3, 2, 1]), 3).unwrap();
    let full = layout.overlays(DodgsonTerm::Full, 100_000).unwrap();
    assert_eq!(overlay_gf(&full), &skew_schur(&lambda, 3) * &skew_schur(&sigma, 3));
}

#[test]
fn budget_is_enforced() {
    let sh: Shape = "3,2,1".parse().unwrap();
    let err = enumerate_overlays(&sh, 0, &sh, 0, 3, 10).unwrap_err();
    assert!(err.to_string().contains("--max-overlays"), "{err}");
}

#[test]
fn trails_end_at_free_endpoints_everywhere() {
    for (l, n) in [(&[2, 1][..], 3), (&[3, 2, 1], 3), (&[2, 2, 1], 2)] {
        let layout = DodgsonLayout::new(&part(l), n).unwrap();
        for term in DodgsonTerm::ALL {
            for o in layout.overlays(term, 100_000).unwrap() {
                let free = o.free_endpoints();
                for e in &free {
                    let t = trail_from(&o, e.point).unwrap();
                    assert!(free.iter().any(|f| f.point == t.end.point), "{l:?}: trail ends at {}", t.end);
                    let arcs: HashSet<_> = t.arcs.iter().collect();
                    assert_eq!(arcs.len(), t.arcs.len());
                    assert_eq!(recolour(&recolour(&o, &t).unwrap(), &trail_from(&recolour(&o, &t).unwrap(), t.start.point).unwrap()).unwrap(), o);
                }
            }
        }
    }
}

#[test]
fn matching_classes_partition_each_set() {
    let layout = DodgsonLayout::new(&part(&[3, 2, 1]), 3).unwrap();
    for term in DodgsonTerm::ALL {
        let os = layout.overlays(term, 100_000).unwrap();
        let keys: Vec<_> = os.iter().map(trail_structure).collect();
        let mut classes: HashMap<_, Vec<usize>> = HashMap::new();
        for (i, k) in keys.iter().enumerate() {
            classes.entry(k.clone()).or_default().push(i);
        }
        let covered: usize = classes.values().map(Vec::len).sum();
        assert_eq!(covered, os.len());
        for (i, a) in keys.iter().enumerate() {
            assert_eq!(a, &keys[i]);
            for b in &keys {
                assert_eq!(a == b, b == a);
            }
        }
        for members in classes.values() {
            for w in members.windows(2) {
                assert_eq!(keys[w[0]], keys[w[1]]);
            }
        }
    }
}

#[test]
fn bijection_larger_instances_and_schur_consistency() {
    for (l, n) in [(&[1, 1][..], 2), (&[2, 1], 3), (&[3, 2, 1], 3), (&[2, 2, 2], 3), (&[3, 1, 1], 3)] {
        let r = verify_dodgson_bijection(&part(l), n, 1_000_000).unwrap();
        assert!(r.passed(), "{l:?} n={n}: {r:?}");
        assert!(check_dodgson_schur(&part(l), n, 1_000_000).unwrap().passed());
    }
}
