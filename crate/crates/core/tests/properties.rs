//! Property tests for the structural invariants that hold across the
//! whole input space rather than at hand-picked values.

use homnorm::bar::{bar, nerve, segal_check};
use homnorm::catalog;
use homnorm::chains::{homology, normalized_chains};
use homnorm::files::{FinSetMapFile, SimplicialSetFile};
use homnorm::groups::RightGSet;
use homnorm::simplicial::{compose_face_path, cech_power, pi0, verify_simplicial, FinSetMap};
use proptest::prelude::*;

fn arb_finset_map() -> impl Strategy<Value = FinSetMap> {
    (1usize..=6, 1usize..=4)
        .prop_flat_map(|(domain, codomain)| {
            proptest::collection::vec(0..codomain, domain)
                .prop_map(move |map| FinSetMap::new(domain, codomain, map).expect("in range"))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cech_power_is_simplicial(f in arb_finset_map(), k in 1usize..=4) {
        let s = cech_power(&f, k);
        prop_assert!(verify_simplicial(&s).is_ok());
    }

    #[test]
    fn cech_pi0_counts_the_image(f in arb_finset_map(), k in 1usize..=4) {
        let s = cech_power(&f, k);
        prop_assert_eq!(pi0(&s).count(), f.image_size());
    }

    #[test]
    fn surjection_powers_are_levelwise_contractible(f in arb_finset_map()) {
        prop_assume!(f.is_surjective());
        let s = cech_power(&f, 3);
        let chains = normalized_chains(&s).expect("valid complex");
        let h0 = homology(&chains, 0).expect("in range");
        prop_assert_eq!(h0.free_rank, f.codomain_size);
        prop_assert!(h0.torsion.is_empty());
        for m in 1..3 {
            prop_assert!(homology(&chains, m).expect("in range").is_trivial());
        }
    }

    #[test]
    fn simplicial_files_reingest(f in arb_finset_map(), k in 1usize..=3) {
        let s = cech_power(&f, k);
        let file = SimplicialSetFile::from_simplicial(&s);
        let json = serde_json::to_string(&file).expect("serializes");
        let back: SimplicialSetFile = serde_json::from_str(&json).expect("parses");
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.into_simplicial().expect("well-shaped"), s);

        let mfile = FinSetMapFile::from_map(&f);
        let json = serde_json::to_string(&mfile).expect("serializes");
        let back: FinSetMapFile = serde_json::from_str(&json).expect("parses");
        prop_assert_eq!(back, mfile);
    }
}

#[test]
fn bar_invariants_across_the_small_catalog() {
    // the paper-facing bar facts, checked over every small catalog group
    // and a couple of carrier sizes
    for entry in catalog::builtin().iter().filter(|e| e.group.order() <= 8) {
        let g = &entry.group;
        let n = nerve(g, 4);
        assert!(
            verify_simplicial(n.underlying()).is_ok(),
            "nerve of {}",
            entry.name
        );
        assert!(segal_check(n.underlying()).passed(), "{}", entry.name);

        let translation = RightGSet::translation(g);
        let b = bar(&translation, 3);
        assert!(verify_simplicial(b.underlying()).is_ok(), "{}", entry.name);

        // the composite d_1 .. d_n projects onto the carrier; the d_0
        // power multiplies the tuple into the action
        for level in 1..=3usize {
            let spec: Vec<usize> = (1..=level).rev().collect();
            let proj = compose_face_path(b.underlying(), level, &spec).expect("valid spec");
            let zeros = vec![0usize; level];
            let acted = compose_face_path(b.underlying(), level, &zeros).expect("valid spec");
            let mut seen = vec![false; b.level_size(level)];
            for idx in 0..b.level_size(level) {
                let (x, gs) = b.tuple_of(level, idx);
                assert_eq!(proj[idx], x);
                let product = gs.iter().fold(g.identity(), |acc, &h| g.mul(acc, h));
                assert_eq!(acted[idx], translation.act(x, product));
                // (d_0...d_0) x projection is a bijection
                let code = acted[idx] + g.order() * (idx / g.order());
                assert!(!seen[code]);
                seen[code] = true;
            }
        }
    }
}

#[test]
fn from_bar_is_a_homotopy_action_at_both_truncations() {
    use homnorm::actions::{check_homotopy_action, from_bar};
    use homnorm::groups::enumerate_right_actions;
    for entry in catalog::builtin().iter().filter(|e| e.group.order() <= 4) {
        for carrier in 1..=3usize {
            for action in enumerate_right_actions(&entry.group, carrier) {
                for k in [3usize, 4] {
                    let ha = from_bar(&action, k).expect("bar projection builds");
                    let report = check_homotopy_action(ha.pi()).expect("truncation suffices");
                    assert!(report.is_ok(), "{} on {carrier} points at k={k}", entry.name);
                }
            }
        }
    }
}

#[test]
fn level_action_commutes_with_the_listed_maps() {
    // left translation commutes with every face d_i (i >= 1) and every
    // degeneracy; the construction asserts this, so building it is the test
    for entry in catalog::builtin().iter().filter(|e| e.group.order() <= 6) {
        let g = &entry.group;
        let id = homnorm::groups::GroupHom::identity_on(g);
        let b = homnorm::bar::bar_of_hom(&id, 3);
        for m in 0..=3 {
            homnorm::bar::level_g_action(&b, m).expect("action verifies");
        }
    }
}
