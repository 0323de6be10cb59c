use flagdesign::design::verify_2design;
use flagdesign::filters::{params_from_r, CandidateParams};
use flagdesign::lattice::Strategy;
use flagdesign::psl2::{build_group, GroupSpec};
use flagdesign::search::*;

fn params(v: u64, b: u64, r: u64, k: u64) -> CandidateParams {
    let p = params_from_r(v, r, 3).unwrap();
    assert_eq!((p.b, p.k), (b, k));
    p
}

fn run(g: &str, p: CandidateParams, strategy: Strategy) -> SearchVerdict {
    let task = SearchTask::new(g.parse().unwrap(), p).with_strategy(strategy);
    base_block_search(&task).unwrap()
}

/// Rebuilds the design from the certificate's base block without reusing the search path.
fn recheck(g: &str, v: &SearchVerdict) {
    let Outcome::DesignFound(f) = &v.outcome else {
        panic!("expected a design, got {}", v.outcome.label());
    };
    let d = f.structure().unwrap();
    let p = verify_2design(&d).unwrap();
    assert_eq!(p.lambda, 3);
    assert_eq!((p.v, p.b, p.r, p.k), v.params.tuple());
    assert_eq!(f.reverify().unwrap(), p);
    let spec: GroupSpec = g.parse().unwrap();
    let x = build_group(&spec).unwrap();
    assert_eq!(x.spec.order(), f.point_stabilizer_order * p.v);
    assert_eq!(x.spec.order(), f.block_stabilizer_order * p.b);
    let cert = f.design.certificate.as_ref().unwrap();
    assert_eq!(cert.group, g);
    assert_eq!(cert.flag_orbit_size, p.b * p.k);
}

#[test]
fn psl2_11_example1_found() {
    let v = run("PSL(2,11)", params(11, 55, 15, 3), Strategy::Exhaustive);
    recheck("PSL(2,11)", &v);
    let Outcome::DesignFound(f) = &v.outcome else { unreachable!() };
    assert_eq!(f.k_orbit_lengths, vec![2, 3, 6]);
}

#[test]
fn psigmal_25_baer_found() {
    let v = run("PSigmaL(2,25)", params(26, 65, 15, 6), Strategy::Catalog);
    recheck("PSigmaL(2,25)", &v);
    let Outcome::DesignFound(f) = &v.outcome else { unreachable!() };
    assert_eq!(f.k_orbit_lengths, vec![6, 20]);
}

#[test]
fn non_existence_fixtures() {
    let cases: [(&str, (u64, u64, u64, u64), &str); 7] = [
        ("PSL(2,8)", (36, 126, 21, 6), "no orbit of length k"),
        ("PGammaL(2,8)", (36, 126, 21, 6), "no-design"),
        ("PSL(2,19)", (57, 171, 24, 8), "no orbit of length k"),
        ("PGL(2,7)", (21, 42, 12, 6), "no orbit of length k"),
        ("PGammaL(2,8)", (28, 189, 27, 4), "no-design"),
        ("PSL(2,11)", (55, 99, 18, 10), "b does not divide |G|"),
        ("PGL(2,11)", (55, 99, 18, 10), "b does not divide |G|"),
    ];
    for (g, (v, b, r, k), want) in cases {
        let verdict = run(g, params(v, b, r, k), Strategy::Exhaustive);
        println!("{g} {:?}: {} ({:?})", (v, b, r, k), verdict.outcome.label(), verdict.trace.iter().map(|t| t.orbit_lengths.clone()).collect::<Vec<_>>());
        assert!(!verdict.outcome.is_design());
        if want != "no-design" {
            assert_eq!(verdict.outcome.label(), want, "{g}");
        }
        if verdict.outcome != Outcome::BNotDividingOrder {
            assert!(!verdict.point_stabilizers.is_empty(), "{g} has a primitive action");
            assert!(verdict.candidates > 0);
        }
    }
}

#[test]
fn psl2_28_189_block_orbit_size() {
    let verdict = run("PGammaL(2,8)", params(28, 189, 27, 4), Strategy::Exhaustive);
    assert_eq!(verdict.outcome, Outcome::WrongBlockOrbitSize);
    let sizes: Vec<usize> = verdict.trace.iter().flat_map(|t| t.tried.iter().map(|b| b.block_orbit_size)).collect();
    assert!(sizes.contains(&63), "{sizes:?}");
}

#[test]
fn catalog_and_exhaustive_agree_on_small_groups() {
    let tasks: [(&str, (u64, u64, u64, u64)); 5] = [
        ("PSL(2,11)", (11, 55, 15, 3)),
        ("PSL(2,8)", (36, 126, 21, 6)),
        ("PGammaL(2,8)", (36, 126, 21, 6)),
        ("PGL(2,7)", (21, 42, 12, 6)),
        ("PGammaL(2,8)", (28, 189, 27, 4)),
    ];
    for (g, (v, b, r, k)) in tasks {
        let p = params(v, b, r, k);
        let a = run(g, p, Strategy::Exhaustive);
        let c = run(g, p, Strategy::Catalog);
        assert_eq!(a.outcome.label(), c.outcome.label(), "{g} {:?}", (v, b, r, k));
    }
}

#[test]
fn q9_has_no_designs() {
    let bounds = classify_bounds();
    for spec in GroupSpec::all_between(9).unwrap() {
        let (_, verdicts) = classify_group(&spec, &bounds).unwrap();
        assert!(verdicts.iter().all(|v| !v.outcome.is_design()), "{spec}");
    }
}

#[test]
fn q19_has_no_designs() {
    let bounds = classify_bounds();
    for spec in GroupSpec::all_between(19).unwrap() {
        let (_, verdicts) = classify_group(&spec, &bounds).unwrap();
        assert!(verdicts.iter().all(|v| !v.outcome.is_design()), "{spec}");
    }
}

#[test]
fn sylow5_in_psl2_81() {
    let c = sylow5_psl2_81().unwrap();
    assert_eq!(c.degree, 369);
    assert_eq!(c.fixed_points.len(), 4);
    assert_eq!(c.normalizer_order, 80);
}

#[test]
fn found_designs_reverify() {
    for (g, p) in [("PSL(2,25)", params(26, 65, 15, 6)), ("PSL(2,4)", params(5, 10, 6, 3)), ("PSL(2,7)", params(8, 14, 7, 4))] {
        let v = run(g, p, Strategy::Exhaustive);
        let Outcome::DesignFound(f) = &v.outcome else { panic!("{g}: {}", v.outcome.label()) };
        let q = f.reverify().unwrap();
        assert_eq!((q.v, q.b, q.r, q.k, q.lambda), (p.v, p.b, p.r, p.k, 3));
    }
}
