//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Criteria with zero-exception tolerances assert exact counts.
//!
//! The exhaustive order-8 sweep is shared across criteria through a
//! `OnceLock`; certificates are stored, per-certificate simplicial data is
//! rebuilt where needed to keep memory flat.

use homnorm::actions::{canonical_action_agreement_on, check_homotopy_action, from_bar, roundtrip_check};
use homnorm::bar::{bar_of_hom, nerve, recover_group_from_nerve, segal_check};
use homnorm::catalog;
use homnorm::chains::{homology, normalized_chains};
use homnorm::crossed::{
    decide_normal, equivariant_iso_check, gamma_unchecked, moore_homotopy, verify_simplicial_group,
    CrossedModule, SearchBudget,
};
use homnorm::files::{
    bar_to_file, CrossedModuleFile, FinSetMapFile, GSetFile, GroupFile, HomFile, SimplicialSetFile,
};
use homnorm::groups::{
    enumerate_homs, enumerate_right_actions, image_normal, is_isomorphic, kernel,
    quotient_by_image, GroupActionOnGroup, GroupHom,
};
use homnorm::simplicial::{cech_power, pi0, verify_simplicial, FinSetMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

struct Decision {
    source_name: String,
    target_name: String,
    map: Vec<usize>,
    injective: bool,
    normal: bool,
    image_is_normal: bool,
    certificate: Option<CrossedModule>,
}

/// Every homomorphism between catalog groups of order <= 8, decided.
fn order8_sweep() -> &'static Vec<Decision> {
    static SWEEP: OnceLock<Vec<Decision>> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let groups: Vec<_> = catalog::builtin()
            .into_iter()
            .filter(|e| e.group.order() <= 8)
            .collect();
        let budget = SearchBudget::default();
        let mut out = Vec::new();
        for s in &groups {
            for t in &groups {
                for f in enumerate_homs(&s.group, &t.group) {
                    let decision = decide_normal(&f, &budget).expect("catalog fits the budget");
                    out.push(Decision {
                        source_name: s.name.clone(),
                        target_name: t.name.clone(),
                        map: f.map().to_vec(),
                        injective: f.is_injective(),
                        normal: decision.is_normal(),
                        image_is_normal: image_normal(&f),
                        certificate: decision.certificate,
                    });
                }
            }
        }
        out
    })
}

fn criterion(name: &str, failures: usize, detail: &str) {
    let verdict = if failures == 0 { "PASS" } else { "FAIL" };
    println!("acceptance criterion {name}: {verdict} ({detail})");
    assert_eq!(failures, 0, "criterion {name}: {detail}");
}

#[test]
fn criterion_1_oracle_equivalence() {
    let sweep = order8_sweep();
    let injective: Vec<_> = sweep.iter().filter(|d| d.injective).collect();
    let mismatches: Vec<_> = injective
        .iter()
        .filter(|d| d.normal != d.image_is_normal)
        .collect();
    for d in &mismatches {
        eprintln!(
            "mismatch: {} -> {} via {:?}: decide={}, oracle={}",
            d.source_name, d.target_name, d.map, d.normal, d.image_is_normal
        );
    }
    criterion(
        "1 (oracle equivalence)",
        mismatches.len(),
        &format!(
            "{} injective homomorphisms of {} total",
            injective.len(),
            sweep.len()
        ),
    );
}

#[test]
fn criterion_2_gamma_realization() {
    let sweep = order8_sweep();
    let mut checked = 0usize;
    let mut failures = 0usize;
    for d in sweep.iter().filter(|d| d.injective) {
        let Some(cm) = &d.certificate else { continue };
        checked += 1;
        let gamma = gamma_unchecked(cm, 4);
        let verification = verify_simplicial_group(&gamma);
        if !verification.is_ok() {
            failures += 1;
            eprintln!(
                "gamma verification failed on {} -> {}: {}",
                d.source_name, d.target_name, verification
            );
            continue;
        }
        let bar = bar_of_hom(cm.boundary(), 4);
        let equivariance = equivariant_iso_check(&gamma, &bar);
        if !equivariance.is_ok() {
            failures += 1;
            eprintln!(
                "equivariant comparison failed on {} -> {}: {}",
                d.source_name, d.target_name, equivariance
            );
        }
    }
    criterion(
        "2 (gamma realization)",
        failures,
        &format!("{checked} certificates at truncation 4"),
    );
}

#[test]
fn criterion_3_two_type_invariants() {
    let sweep = order8_sweep();
    let mut checked = 0usize;
    let mut failures = 0usize;
    for d in sweep.iter() {
        let Some(cm) = &d.certificate else { continue };
        checked += 1;
        let gamma = gamma_unchecked(cm, 4);
        let (coker, _) = quotient_by_image(cm.boundary()).expect("CM1 makes the image normal");
        let (ker, _) = kernel(cm.boundary());
        let pi = [
            moore_homotopy(&gamma, 0).expect("pi_0 in range"),
            moore_homotopy(&gamma, 1).expect("pi_1 in range"),
            moore_homotopy(&gamma, 2).expect("pi_2 in range"),
        ];
        let ok = is_isomorphic(&pi[0], &coker).is_some()
            && is_isomorphic(&pi[1], &ker).is_some()
            && pi[2].order() == 1;
        if !ok {
            failures += 1;
            eprintln!(
                "moore mismatch on {} -> {} via {:?}: orders ({}, {}, {}), expected ({}, {}, 1)",
                d.source_name,
                d.target_name,
                d.map,
                pi[0].order(),
                pi[1].order(),
                pi[2].order(),
                coker.order(),
                ker.order()
            );
        }
    }

    // named spot values
    let a3s3 = sweep
        .iter()
        .find(|d| d.source_name == "Z/3" && d.target_name == "S3" && d.injective && d.normal)
        .expect("Z/3 embeds normally in S3");
    let cm = a3s3.certificate.as_ref().expect("certificate present");
    let gamma = gamma_unchecked(cm, 4);
    let spot0 = moore_homotopy(&gamma, 0).unwrap();
    let spot1 = moore_homotopy(&gamma, 1).unwrap();
    if is_isomorphic(&spot0, &catalog::cyclic(2)).is_none() || spot1.order() != 1 {
        failures += 1;
        eprintln!("spot value A3 into S3 is not (Z/2, 1)");
    }
    let z4z2 = sweep
        .iter()
        .find(|d| d.source_name == "Z/4" && d.target_name == "Z/2" && d.map == vec![0, 1, 0, 1])
        .expect("the quotient Z/4 -> Z/2 is in the sweep");
    let cm = z4z2.certificate.as_ref().expect("abelian maps are normal");
    let gamma = gamma_unchecked(cm, 4);
    let spot0 = moore_homotopy(&gamma, 0).unwrap();
    let spot1 = moore_homotopy(&gamma, 1).unwrap();
    if spot0.order() != 1 || is_isomorphic(&spot1, &catalog::cyclic(2)).is_none() {
        failures += 1;
        eprintln!("spot value Z/4 -> Z/2 is not (1, Z/2)");
    }

    criterion(
        "3 (two-type invariants)",
        failures,
        &format!("{checked} certificates plus 2 spot values"),
    );
}

#[test]
fn criterion_4_segal_machinery() {
    let mut failures = 0usize;
    let entries = catalog::builtin();
    for entry in &entries {
        let n = nerve(&entry.group, 4);
        let report = segal_check(n.underlying());
        if !report.passed() {
            failures += 1;
            eprintln!("segal failed on the nerve of {}: {report}", entry.name);
            continue;
        }
        match recover_group_from_nerve(n.underlying()) {
            Ok(recovered) => {
                if is_isomorphic(&recovered, &entry.group).is_none() {
                    failures += 1;
                    eprintln!("recovered group is not isomorphic to {}", entry.name);
                }
            }
            Err(e) => {
                failures += 1;
                eprintln!("recovery failed on {}: {e}", entry.name);
            }
        }
    }
    criterion(
        "4 (segal machinery)",
        failures,
        &format!("{} catalog nerves at truncation 4", entries.len()),
    );
}

#[test]
fn criterion_5_power_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5E6A1C0FFEE);
    let mut failures = 0usize;
    let mut surjective_count = 0usize;
    for _ in 0..50 {
        let domain = rng.gen_range(1..=6);
        let codomain = rng.gen_range(1..=4);
        let map: Vec<usize> = (0..domain).map(|_| rng.gen_range(0..codomain)).collect();
        let f = FinSetMap::new(domain, codomain, map.clone()).expect("sampled map is in range");
        let complex = cech_power(&f, 4);
        if !verify_simplicial(&complex).is_ok() {
            failures += 1;
            eprintln!("power complex of {map:?} is not simplicial");
            continue;
        }
        if pi0(&complex).count() != f.image_size() {
            failures += 1;
            eprintln!(
                "pi0 of the power of {map:?} has {} classes, image has {}",
                pi0(&complex).count(),
                f.image_size()
            );
            continue;
        }
        if f.is_surjective() {
            surjective_count += 1;
            let chains = normalized_chains(&complex).expect("valid complex has chains");
            let h0 = homology(&chains, 0).expect("H_0 in range");
            let h1 = homology(&chains, 1).expect("H_1 in range");
            let h2 = homology(&chains, 2).expect("H_2 in range");
            if h0.free_rank != codomain || !h0.torsion.is_empty() {
                failures += 1;
                eprintln!("H_0 of the power of {map:?} is {h0}, expected Z^{codomain}");
            }
            if !h1.is_trivial() || !h2.is_trivial() {
                failures += 1;
                eprintln!("H_1/H_2 of the power of {map:?} are {h1}, {h2}");
            }
        }
    }
    criterion(
        "5 (power construction)",
        failures,
        &format!("50 random maps, {surjective_count} surjective"),
    );
}

#[test]
fn criterion_6_rigidification_roundtrip() {
    let mut failures = 0usize;
    let mut total = 0usize;
    for entry in catalog::builtin().iter().filter(|e| e.group.order() <= 6) {
        for carrier in 1..=4usize {
            for action in enumerate_right_actions(&entry.group, carrier) {
                total += 1;
                match roundtrip_check(&action, 3) {
                    Ok(report) if report.is_ok() => {}
                    Ok(report) => {
                        failures += 1;
                        eprintln!(
                            "roundtrip failed for {} on {carrier} points: {report}",
                            entry.name
                        );
                    }
                    Err(e) => {
                        failures += 1;
                        eprintln!("roundtrip errored for {} on {carrier} points: {e}", entry.name);
                    }
                }
            }
        }
    }
    criterion(
        "6 (rigidification roundtrip)",
        failures,
        &format!("{total} actions, all groups of order <= 6, carriers up to 4"),
    );
}

#[test]
fn criterion_7_canonical_action_agreement() {
    let sweep = order8_sweep();
    let mut checked = 0usize;
    let mut failures = 0usize;
    for d in sweep.iter().filter(|d| d.injective) {
        let Some(cm) = &d.certificate else { continue };
        checked += 1;
        let gamma = gamma_unchecked(cm, 4);
        let bar = bar_of_hom(cm.boundary(), 4);
        let report = canonical_action_agreement_on(&gamma, &bar);
        if !report.is_ok() {
            failures += 1;
            eprintln!(
                "canonical actions disagree on {} -> {}: {report}",
                d.source_name, d.target_name
            );
        }
    }
    criterion(
        "7 (canonical action agreement)",
        failures,
        &format!("{checked} certificates at truncation 4"),
    );
}

#[test]
fn criterion_8_abelian_family() {
    let abelians: Vec<_> = catalog::builtin()
        .into_iter()
        .filter(|e| e.group.order() <= 12 && e.group.is_abelian())
        .collect();
    let budget = SearchBudget::default();
    let mut total = 0usize;
    let mut failures = 0usize;
    for s in &abelians {
        for t in &abelians {
            for f in enumerate_homs(&s.group, &t.group) {
                total += 1;
                let decision = decide_normal(&f, &budget).expect("abelian catalog fits the budget");
                if !decision.is_normal() {
                    failures += 1;
                    eprintln!(
                        "abelian map {} -> {} via {:?} judged non-normal",
                        s.name,
                        t.name,
                        f.map()
                    );
                }
            }
        }
    }
    criterion(
        "8 (abelian family)",
        failures,
        &format!("{total} homomorphisms between {} abelian groups", abelians.len()),
    );
}

#[test]
fn criterion_9_structural_hygiene() {
    let mut failures = 0usize;

    // simplicial hygiene of the objects the other criteria build
    for entry in catalog::builtin().iter().filter(|e| e.group.order() <= 8) {
        let n = nerve(&entry.group, 4);
        if !verify_simplicial(n.underlying()).is_ok() {
            failures += 1;
            eprintln!("nerve of {} fails simplicial verification", entry.name);
        }
    }
    let sweep = order8_sweep();
    for d in sweep.iter().filter(|d| d.certificate.is_some()).take(40) {
        let cm = d.certificate.as_ref().expect("filtered on presence");
        let bar = bar_of_hom(cm.boundary(), 4);
        if !verify_simplicial(bar.underlying()).is_ok() {
            failures += 1;
            eprintln!(
                "bar complex of {} -> {} fails simplicial verification",
                d.source_name, d.target_name
            );
        }
    }
    // homotopy-action hygiene for a slice of criterion 6's domain
    for entry in catalog::builtin().iter().filter(|e| e.group.order() <= 4) {
        for action in enumerate_right_actions(&entry.group, 3) {
            let ha = from_bar(&action, 3).expect("bar projection is a homotopy action");
            let report = check_homotopy_action(ha.pi()).expect("truncation suffices");
            if !report.is_ok() {
                failures += 1;
                eprintln!("from_bar output fails its own conditions for {}", entry.name);
            }
        }
    }

    // file round-trips: serialize then parse is the identity
    let mut roundtrips = 0usize;
    let mut roundtrip = |ok: bool, what: &str| {
        roundtrips += 1;
        if !ok {
            failures += 1;
            eprintln!("file round-trip failed: {what}");
        }
    };
    for entry in catalog::builtin() {
        let file = GroupFile::from_group(&entry.group);
        let json = serde_json::to_string(&file).expect("group file serializes");
        let back: GroupFile = serde_json::from_str(&json).expect("group file parses");
        roundtrip(back == file, &entry.name);
    }
    for d in sweep.iter().filter(|d| d.certificate.is_some()).take(10) {
        let cm = d.certificate.as_ref().expect("filtered on presence");
        let file = CrossedModuleFile::from_cm(cm);
        let json = serde_json::to_string(&file).expect("certificate serializes");
        let back: CrossedModuleFile = serde_json::from_str(&json).expect("certificate parses");
        roundtrip(back == file, "certificate");

        let hom_file = HomFile::from_hom(cm.boundary());
        let json = serde_json::to_string(&hom_file).expect("hom file serializes");
        let back: HomFile = serde_json::from_str(&json).expect("hom file parses");
        roundtrip(back == hom_file, "hom");
    }
    {
        let n = nerve(&catalog::symmetric(3), 3);
        let file = bar_to_file(&n);
        let json = serde_json::to_string(&file).expect("bar file serializes");
        let back: SimplicialSetFile = serde_json::from_str(&json).expect("bar file parses");
        roundtrip(back == file, "nerve file");

        let f = FinSetMap::new(3, 2, vec![0, 0, 1]).expect("map in range");
        let complex = cech_power(&f, 4);
        let sfile = SimplicialSetFile::from_simplicial(&complex);
        let json = serde_json::to_string(&sfile).expect("simplicial file serializes");
        let back: SimplicialSetFile = serde_json::from_str(&json).expect("simplicial file parses");
        roundtrip(back == sfile, "power complex file");
        roundtrip(
            back.into_simplicial().expect("file is well-shaped") == complex,
            "power complex value",
        );

        let mfile = FinSetMapFile::from_map(&f);
        let json = serde_json::to_string(&mfile).expect("finset file serializes");
        let back: FinSetMapFile = serde_json::from_str(&json).expect("finset file parses");
        roundtrip(back == mfile, "finset map");

        let gset = homnorm::groups::RightGSet::translation(&catalog::symmetric(3));
        let gfile = GSetFile::from_gset(&gset);
        let json = serde_json::to_string(&gfile).expect("gset file serializes");
        let back: GSetFile = serde_json::from_str(&json).expect("gset file parses");
        roundtrip(back == gfile, "gset");
    }

    criterion(
        "9 (structural hygiene)",
        failures,
        &format!("verification sweep plus {roundtrips} file round-trips"),
    );
}

#[test]
fn fault_injection_is_detected() {
    // supplementary: the verifiers must reject a deliberately damaged
    // certificate rather than wave it through
    let sweep = order8_sweep();
    let d = sweep
        .iter()
        .find(|d| {
            d.source_name == "Z/3"
                && d.target_name == "S3"
                && d.injective
                && d.certificate.is_some()
        })
        .expect("normal embedding exists");
    let cm = d.certificate.as_ref().expect("certificate present");
    let mut act = cm.action().table().to_vec();
    let row = (0..act.len()).find(|&g| act[g][1] != 1).expect("nontrivial row");
    act[row].swap(1, 2);
    let broken = CrossedModule::unchecked(
        cm.boundary().clone(),
        GroupActionOnGroup::from_table_unchecked(
            cm.boundary().target().clone(),
            cm.boundary().source().clone(),
            act,
        ),
    );
    let gamma = gamma_unchecked(&broken, 3);
    let verification = verify_simplicial_group(&gamma);
    let bar = bar_of_hom(cm.boundary(), 3);
    let agreement = canonical_action_agreement_on(&gamma, &bar);
    assert!(
        !verification.is_ok() || !agreement.is_ok(),
        "damaged certificate slipped through both verifiers"
    );
}

#[test]
fn budget_respects_hom_shape() {
    // the default budget admits the whole catalog
    let q8 = catalog::quaternion8();
    let f = GroupHom::identity_on(&q8);
    assert!(decide_normal(&f, &SearchBudget::default()).is_ok());
}
