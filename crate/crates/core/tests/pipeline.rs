use grseg_core::presets::preset;
use grseg_core::segments::{
    assemble_segments, check_sink_source_prop, compute_a, compute_b, verify_main_theorem, IndexType, Partition,
    SegmentConfig, SegmentRole,
};
use grseg_core::tame::{build_catalog, Catalog, Position};
use grseg_core::{Budgets, Error, GrMeasure};

fn catalog(name: &str) -> Catalog {
    let s = preset(name).unwrap();
    build_catalog(s.quiver().unwrap(), s.field().unwrap(), s.bound, &Budgets::default()).unwrap()
}

fn m(s: &str) -> GrMeasure {
    s.parse().unwrap()
}

#[test]
fn square_with_sinks_and_sources() {
    let c = catalog("a22_sink_source");
    assert_eq!(compute_b(&c), 4);
    assert_eq!(compute_a(&c).unwrap(), 4);
    let an = assemble_segments(&c, SegmentConfig::default()).unwrap();
    assert!(an.segments.iter().all(|s| s.index_type != IndexType::Z));
    let central: Vec<_> = an.segments.iter().filter(|s| s.role == SegmentRole::Central).collect();
    assert_eq!(central.len(), 2);
    assert!(central.iter().all(|s| s.index_type == IndexType::N));
    assert_eq!(central[0].measures, vec![m("{1,3,4}"), m("{1,3,4,8}")]);
    assert!(verify_main_theorem(&c, &an).all_hold);
    let ss = check_sink_source_prop(&c.quiver, &an).unwrap();
    assert!(ss.sink_source_orientation && !ss.preinjective_central && ss.consistent);
}

#[test]
fn four_subspace_quiver() {
    let c = catalog("d4_tilde");
    assert_eq!(compute_b(&c), 6);
    assert_eq!(c.tubes.iter().filter(|t| t.rank == 2).count(), 3);
    let an = assemble_segments(&c, SegmentConfig::default()).unwrap();
    let h1 = &c.entries[c.h1().unwrap()].measure;
    assert_eq!(*h1, m("{1,2,5,6}"));
    for r in &an.universe {
        if r.has(Position::Preprojective) {
            assert_eq!(r.partition, Partition::TakeOff, "{}", r.measure);
        }
    }
    let homogeneous = an.segments.iter().find(|s| s.anchor == "homogeneous").unwrap();
    assert_eq!(homogeneous.measures, vec![m("{1,2,5,6}"), m("{1,2,5,6,12}")]);
    assert_eq!(homogeneous.index_type, IndexType::N);
    let rep = verify_main_theorem(&c, &an);
    assert!(rep.all_hold);
    assert!(check_sink_source_prop(&c.quiver, &an).is_err());
}

#[test]
fn catalog_json_round_trip_and_rejection() {
    let c = catalog("kronecker");
    let json = serde_json::to_string(&c.to_json()).unwrap();
    let back = Catalog::from_json(&serde_json::from_str(&json).unwrap(), &Budgets::default()).unwrap();
    assert_eq!(back.len(), c.len());
    for (a, b) in back.entries.iter().zip(&c.entries) {
        assert_eq!((&a.measure, a.position, &a.dimv), (&b.measure, b.position, &b.dimv));
    }
    let mut bad = c.to_json();
    bad.entries[3].dims = vec![9, 9];
    assert!(Catalog::from_json(&bad, &Budgets::default()).is_err());
    let mut split = c.to_json();
    let sum = c.entries[0].module.direct_sum(&c.entries[1].module).unwrap();
    split.entries[2].module = sum.to_json();
    split.entries[2].dims = sum.dims().to_vec();
    assert!(Catalog::from_json(&split, &Budgets::default()).is_err());
}

#[test]
fn tiny_budget_is_reported() {
    let s = preset("kronecker").unwrap();
    let tiny = Budgets { subspace: 2, end: 2 };
    match build_catalog(s.quiver().unwrap(), s.field().unwrap(), s.bound, &tiny) {
        Err(e) => assert!(e.is_budget(), "{e}"),
        Ok(_) => panic!("budget of two subspaces should not suffice"),
    }
    assert!(matches!(Error::Budget { what: "x".into(), needed: 3, cap: 2 }, Error::Budget { .. }));
}
