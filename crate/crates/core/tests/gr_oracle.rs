mod support;

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use grseg_core::grcore::submodules;
use grseg_core::presets::preset;
use grseg_core::properties::random_rep;
use grseg_core::tame::build_catalog_with;
use grseg_core::{Budgets, GrEngine, Rep};
use support::oracle::{brute_force_measure, compare_sets, PlainModule};

fn check_catalog(name: &str, bound: usize) -> usize {
    let s = preset(name).unwrap();
    let engine = GrEngine::default();
    let c = build_catalog_with(s.quiver().unwrap(), s.field().unwrap(), bound, &engine).unwrap();
    let mut n = 0;
    for e in c.entries.iter().filter(|e| e.length() <= 6) {
        let want = brute_force_measure(&PlainModule::from_rep(&e.module)).unwrap();
        let got = engine.gr_measure(&e.module).unwrap().measure;
        assert_eq!(got.elements(), want.as_slice(), "{name} entry {} dims {:?}", e.id, e.dimv);
        n += 1;
    }
    n
}

#[test]
fn kronecker_catalog_matches_oracle() {
    assert_eq!(check_catalog("kronecker", 6), 15);
}

#[test]
fn a21_catalog_matches_oracle() {
    assert!(check_catalog("a21", 6) > 10);
}

#[test]
fn random_modules_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let engine = GrEngine::default();
    for name in ["kronecker", "a21", "a22_sink_source"] {
        let s = preset(name).unwrap();
        let q = s.quiver().unwrap();
        for _ in 0..25 {
            let m = random_rep(&mut rng, &q, s.field().unwrap(), 5);
            let want = brute_force_measure(&PlainModule::from_rep(&m)).unwrap();
            assert_eq!(engine.measure(&m).unwrap().elements(), want.as_slice(), "{name} {:?}", m.dims());
        }
    }
}

#[test]
fn lattice_sizes_match_oracle() {
    let s = preset("a21").unwrap();
    let q = s.quiver().unwrap();
    let f = s.field().unwrap();
    for v in 0..3 {
        for m in [Rep::projective(q.clone(), f, v).unwrap(), Rep::injective(q.clone(), f, v).unwrap()] {
            let ours = submodules(&m, &Budgets::default()).unwrap().len();
            assert_eq!(ours, support::oracle::submodules(&PlainModule::from_rep(&m)).len());
        }
    }
}

#[test]
fn oracle_order_agrees_with_library_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20_000 {
        let a = grseg_core::properties::random_measure(&mut rng, 10);
        let b = grseg_core::properties::random_measure(&mut rng, 10);
        assert_eq!(a.cmp(&b), compare_sets(a.elements(), b.elements()));
    }
    assert_eq!(compare_sets(&[1, 2], &[1, 2, 4]), Ordering::Less);
    assert_eq!(compare_sets(&[1, 3], &[1, 2, 4]), Ordering::Less);
}
