mod common;

use common::*;
use flagdesign::design::IncidenceStructure;
use flagdesign::filters::{admissible_params, case_filter, params_from_r};
use proptest::prelude::*;

#[test]
fn field_laws_all_q_up_to_4096() {
    let samples: Vec<(u32, u32, u32)> = (0..64u32).map(|i| (i * 7919, i * 104_729 + 3, i * i + 11)).collect();
    for q in prime_powers_up_to(4096) {
        field_laws(q, &samples).unwrap();
    }
}

#[test]
fn baer_sublines_cover_triples_once() {
    baer_uniqueness(9).unwrap();
    baer_uniqueness(25).unwrap();
}

#[test]
fn bsgs_order_of_psl2_groups() {
    for g in ["PSL(2,7)", "PSL(2,8)", "PGL(2,11)", "PSL(2,16)", "PSL(2,25)"] {
        let x = flagdesign::psl2::build_group_str(g).unwrap();
        bsgs_order(x.degree(), x.group.generators()).unwrap();
    }
}

#[test]
fn coset_geometry_flag_counts() {
    for (i, (g, p, q)) in COSET_PAIRS.into_iter().enumerate() {
        coset_flag_count(g, p, q, 17 * i + 5).unwrap();
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = flagdesign::perm::Perm> {
    prop::collection::vec(any::<usize>(), n).prop_map(move |s| perm_from_seq(n, &s))
}

fn group_strategy() -> impl Strategy<Value = (usize, Vec<flagdesign::perm::Perm>)> {
    (4usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(perm_strategy(n), 1..=3)))
}

fn orbit_structure() -> impl Strategy<Value = (usize, Vec<flagdesign::perm::Perm>, Vec<u32>)> {
    (6usize..=11).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(perm_strategy(n), 1..=2),
            prop::sample::subsequence((0..n as u32).collect::<Vec<_>>(), 3..=n - 2),
        )
    })
}

fn incidence() -> impl Strategy<Value = IncidenceStructure> {
    (3usize..=9).prop_flat_map(|v| {
        prop::collection::vec(prop::sample::subsequence((0..v as u32).collect::<Vec<_>>(), 0..=v), 0..12)
            .prop_map(move |b| IncidenceStructure::new(v, b).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bsgs_matches_closure((n, gens) in group_strategy()) {
        prop_assert_eq!(bsgs_order(n, &gens), Ok(()));
    }

    #[test]
    fn verify_2design_matches_pair_counts((n, gens, base) in orbit_structure()) {
        prop_assert_eq!(verify_agrees_with_oracle(n, &gens, &base), Ok(()));
    }

    #[test]
    fn complement_is_an_involution(d in incidence()) {
        prop_assert_eq!(complement_involution(&d), Ok(()));
    }

    #[test]
    fn small_field_axioms(i in 0usize..40, samples in prop::collection::vec(any::<(u32, u32, u32)>(), 16)) {
        let q = prime_powers_up_to(128)[i % prime_powers_up_to(128).len()];
        prop_assert_eq!(field_laws(q, &samples), Ok(()));
    }

    #[test]
    fn params_from_r_satisfies_design_identities(v in 5u64..5000, r in 3u64..600) {
        if let Some(c) = params_from_r(v, r, 3) {
            prop_assert_eq!(c.r * (c.k - 1), 3 * (v - 1));
            prop_assert_eq!(c.b * c.k, v * c.r);
            prop_assert!(c.k > 2 && c.k < v - 1);
            prop_assert!(admissible_params(v, 3).contains(&c));
        }
    }

    #[test]
    fn case_witnesses_verify(case in 1u8..=9, lo in 4u64..3000) {
        let rep = case_filter(case, lo..=lo + 200).unwrap();
        for (c, w) in rep.survivors() {
            prop_assert!(w.verified(), "{:?}", w);
            prop_assert!(c.r_squared_ok() && c.r % 3 == 0 && !c.is_symmetric());
        }
    }
}
