use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use detpaths::identities::*;
use detpaths::jacobitrudi::jt_matrix;
use detpaths::linalg::{bareiss_det, permutation_expansion_det};
use detpaths::{IndexSet, Matrix, Shape};

fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix<BigInt> {
    Matrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9i64..=9)))
}

fn set(v: &[usize]) -> IndexSet {
    IndexSet::new(v.to_vec()).unwrap()
}

#[test]
fn pluecker_general_without_common_columns_is_pluecker() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 1..=3 {
        for _ in 0..20 {
            let a = random_matrix(k, 2 * k, &mut rng);
            let r = set(&[1]);
            let general = check_pluecker_general(&a, &IndexSet::range(2 * k), &r).unwrap();
            let plain = check_pluecker(&a, &r).unwrap();
            assert!(general.holds() && plain.holds());
            assert_eq!(general.lhs, plain.lhs);
        }
    }
}

#[test]
fn muir_with_nothing_deleted_is_laplace() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for m in 1..=4 {
        let a = random_matrix(m, m, &mut rng);
        let all = IndexSet::range(m);
        for i in all.all_subsets() {
            let muir = check_muir148(&a, &all, &all, &i).unwrap();
            let lap = check_laplace_general(&a, &i).unwrap();
            assert!(muir.holds() && lap.holds());
            assert_eq!(muir.rhs, lap.rhs);
        }
    }
}

#[test]
fn empty_row_set_is_trivial() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let a = random_matrix(4, 4, &mut rng);
    let s = check_laplace_general(&a, &IndexSet::empty()).unwrap();
    assert!(s.holds());
    assert_eq!(s.lhs, bareiss_det(&a));
}

#[test]
fn maybenew_at_k2_is_dodgson() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for m in 0..=3 {
        let size = m + 2;
        let a = random_matrix(size, size, &mut rng);
        let ends = set(&[1, size]);
        let g = check_maybenew(&a, &ends, &ends).unwrap();
        assert!(g.holds());
        let d = check_dodgson(&a).unwrap();
        assert!(d.holds());
        let del = |r: usize, c: usize| bareiss_det(&a.delete_rowcols(&[r], &[c]).unwrap());
        let cross = del(1, size) * del(size, 1);
        assert_eq!(g.lhs, d.lhs + &cross);
        assert_eq!(g.rhs, d.rhs + &cross);
        assert_eq!(g.rhs, del(1, 1) * del(size, size));
    }
}

#[test]
fn every_identity_passes_its_default_fuzz() {
    for id in Identity::ALL {
        if matches!(id, Identity::MutantLaplace | Identity::MutantDodgson | Identity::DodgsonSchur) {
            continue;
        }
        let v = fuzz(id, &Params::default(), 200, DEFAULT_SEED).unwrap();
        assert!(v.passed(), "{id}: {}", v.to_json());
    }
}

#[test]
fn generic_route_agrees() {
    for id in [Identity::Dodgson, Identity::Pluecker, Identity::LaplaceGeneral, Identity::MaybenewK4, Identity::CauchyBinet] {
        let req = Request { route: Some(Route::GenericSymbolic), ..Request::new(id) };
        let v = verify(&req).unwrap();
        assert!(v.passed(), "{id}");
    }
}

#[test]
fn mutants_are_caught() {
    for r in mutation_self_test(100, DEFAULT_SEED).unwrap() {
        assert!(r.detected, "{:?}", r.mutant);
        assert!(r.first_failing_trial.is_some());
    }
    let v = fuzz(Identity::MutantDodgson, &Params::default(), 50, 3).unwrap();
    let ce = v.counterexample.expect("a counterexample");
    assert_ne!(ce.lhs, ce.rhs);
    assert!(!ce.matrices.is_empty());
}

#[test]
fn verdict_json_is_deterministic() {
    let p = Params { m: Some(4), ..Params::default() };
    let a = fuzz(Identity::Dodgson, &p, 300, 99).unwrap().to_json();
    let b = fuzz(Identity::Dodgson, &p, 300, 99).unwrap().to_json();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    for key in ["schema_version", "identity", "parameters", "route", "trials", "status", "counterexample", "seed"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["identity"], "dodgson");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["parameters"]["m"], 4);
    let back: Verdict = serde_json::from_str(&a).unwrap();
    assert_eq!(back.to_json(), a);
}

#[test]
fn zero_trials_are_vacuous() {
    let v = fuzz(Identity::Dodgson, &Params::default(), 0, 1).unwrap();
    assert!(v.passed() && v.vacuous);
}

#[test]
fn bad_parameters_are_rejected() {
    let bad = [
        (Identity::Dodgson, Params { m: Some(1), ..Params::default() }),
        (Identity::LaplaceColumn, Params { m: Some(3), j: Some(4), ..Params::default() }),
        (Identity::Maybenew, Params { k: Some(1), ..Params::default() }),
        (Identity::Muir148, Params { m: Some(2), r: Some(set(&[1, 2, 3])), ..Params::default() }),
    ];
    for (id, p) in bad {
        assert!(Instance::resolve(id, &p).is_err(), "{id} accepted {p:?}");
    }
    assert!(check_pluecker(&Matrix::<BigInt>::identity(2), &set(&[1])).is_err());
}

#[test]
fn dodgson_on_jacobi_trudi_matrices() {
    for s in ["3,2,1", "4,2,2", "3,3,1/1", "2,2,2,1"] {
        let sh: Shape = s.parse().unwrap();
        let a = jt_matrix(&sh, 3).unwrap();
        let sides = check_dodgson(&a).unwrap();
        assert!(sides.holds(), "{s}");
        assert_eq!(sides.lhs, permutation_expansion_det(&a) * permutation_expansion_det(&a.delete_rowcols(&[1, a.rows()], &[1, a.rows()]).unwrap()));
    }
}

#[test]
fn schur_route_for_condensation() {
    for l in [vec![2, 1], vec![3, 2, 1], vec![3, 1, 1]] {
        let req = Request {
            params: Params { lambda: Some(l.clone()), n: Some(3), ..Params::default() },
            ..Request::new(Identity::DodgsonSchur)
        };
        assert!(verify(&req).unwrap().passed(), "{l:?}");
    }
}

#[test]
fn gates_pick_the_expected_readings() {
    assert_eq!(muir148_gate().accepted_muir(), Some(MuirReading::CommonMinor));
    for (m, k) in [(0, 2), (1, 2), (0, 3), (2, 3)] {
        assert_eq!(maybenew_gate(m, k).accepted_signs(), Some(MaybenewSigns::SignFree), "m={m} k={k}");
    }
}
