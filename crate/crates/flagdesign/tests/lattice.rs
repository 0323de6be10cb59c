use flagdesign::group::Bounds;
use flagdesign::lattice::{enumerate_subgroups_of_order, Strategy};
use flagdesign::psl2::{build_group_str, Catalog, SubgroupTag};
use flagdesign::Error;

#[test]
fn psl2_81_order_360_is_subfield_psl2_9() {
    let x = build_group_str("PSL(2,81)").unwrap();
    let subs = enumerate_subgroups_of_order(&x, 360, Strategy::Catalog, &Bounds::default()).unwrap();
    assert!(!subs.is_empty());
    let sub = Catalog::new(&x).build(SubgroupTag::SubfieldPSL(9)).unwrap();
    for s in &subs {
        assert_eq!(s.order(), 360);
        // A6 acts on the 10 points of the subline with orbit lengths 10 and the rest
        assert!(s.orbit_lengths().contains(&10), "{:?}", s.orbit_lengths());
    }
    assert!(subs.iter().any(|s| s.contains_group(&sub) && sub.contains_group(s)));
}

#[test]
fn exhaustive_psl2_81_exceeds_default_bound() {
    let x = build_group_str("PSL(2,81)").unwrap();
    let r = enumerate_subgroups_of_order(&x, 360, Strategy::Exhaustive, &Bounds::default());
    assert!(matches!(r, Err(Error::BoundExceeded { .. })), "{:?}", r.map(|v| v.len()));
}
