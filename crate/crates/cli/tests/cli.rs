//! End-to-end tests of the binary: exit codes, emitted files, and
//! determinism of the catalog report.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_homnorm")
}

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(binary())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("homnorm-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write fixture");
    path
}

const Z4_TO_Z2: &str = r#"{
  "source": {"name": "Z/4", "order": 4, "identity": 0,
             "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]},
  "target": {"name": "Z/2", "order": 2, "identity": 0, "table": [[0,1],[1,0]]},
  "map": [0, 1, 0, 1]
}"#;

#[test]
fn normal_check_exit_codes() {
    let dir = scratch("normal");
    // the quotient map is normal: exit 0 plus a certificate
    let hom = write(&dir, "quotient.json", Z4_TO_Z2);
    let cert = dir.join("cert.json");
    let out = run(
        &[
            "normal-check",
            hom.to_str().unwrap(),
            "--out",
            cert.to_str().unwrap(),
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cert_text = std::fs::read_to_string(&cert).expect("certificate written");
    assert!(cert_text.contains("boundary"));

    // a transposition inclusion into S3 is not normal: exit 1
    let tr = write(
        &dir,
        "transposition.json",
        r#"{
          "source": {"name": "Z/2", "order": 2, "identity": 0, "table": [[0,1],[1,0]]},
          "target": {"name": "S3", "order": 6, "identity": 0,
                     "table": [[0,1,2,3,4,5],[1,0,4,5,2,3],[2,3,0,1,5,4],
                               [3,2,5,4,0,1],[4,5,1,0,3,2],[5,4,3,2,1,0]]},
          "map": [0, 1]
        }"#,
    );
    let out = run(&["normal-check", tr.to_str().unwrap()], &dir);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("not homotopy-normal"));

    // malformed table: exit 2
    let bad = write(
        &dir,
        "bad.json",
        r#"{"source": {"name": "x", "order": 2, "identity": 0, "table": [[0,1],[1,1]]},
            "target": {"name": "y", "order": 1, "identity": 0, "table": [[0]]},
            "map": [0, 0]}"#,
    );
    let out = run(&["normal-check", bad.to_str().unwrap()], &dir);
    assert_eq!(out.status.code(), Some(2));

    // missing file: exit 2
    let out = run(&["normal-check", "nope.json"], &dir);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certificate_reingests_through_gamma_and_homotopy() {
    let dir = scratch("gamma");
    let hom = write(&dir, "quotient.json", Z4_TO_Z2);
    let cert = dir.join("cert.json");
    let out = run(
        &[
            "normal-check",
            hom.to_str().unwrap(),
            "--out",
            cert.to_str().unwrap(),
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0));

    let gamma = dir.join("gamma.json");
    let out = run(
        &[
            "gamma",
            cert.to_str().unwrap(),
            "--levels",
            "4",
            "--out",
            gamma.to_str().unwrap(),
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ok"));

    let out = run(&["homotopy", cert.to_str().unwrap(), "--levels", "4"], &dir);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("pi_0 = 1"), "{text}");
    assert!(text.contains("pi_1 = Z/2"), "{text}");
    assert!(text.contains("pi_2 = 1"), "{text}");

    // the emitted simplicial set is Segal-checkable input
    let out = run(&["segal", gamma.to_str().unwrap()], &dir);
    // gamma of a non-nerve is not reduced: level 0 is Z/2, so this fails
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn nerve_segal_and_reingestion() {
    let dir = scratch("nerve");
    let nerve_file = dir.join("nerve.json");
    let out = run(
        &[
            "nerve",
            "--group",
            "S3",
            "--levels",
            "4",
            "--out",
            nerve_file.to_str().unwrap(),
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["segal", nerve_file.to_str().unwrap()], &dir);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    // emitted file parses back to the same json value
    let text = std::fs::read_to_string(&nerve_file).expect("nerve written");
    let value: serde_json::Value = serde_json::from_str(&text).expect("parses");
    let again = serde_json::to_string_pretty(&value).expect("serializes");
    let value2: serde_json::Value = serde_json::from_str(&again).expect("parses again");
    assert_eq!(value, value2);

    let out = run(&["nerve", "--group", "NoSuchGroup", "--levels", "3"], &dir);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cech_command() {
    let dir = scratch("cech");
    let map = write(&dir, "f.json", r#"{"domain": 3, "codomain": 2, "map": [0, 0, 1]}"#);
    let out_file = dir.join("pow.json");
    let out = run(
        &[
            "cech",
            "--map",
            map.to_str().unwrap(),
            "--levels",
            "3",
            "--out",
            out_file.to_str().unwrap(),
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_file).expect("file written");
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("parses");
    assert_eq!(
        parsed["level_sizes"],
        serde_json::json!([3, 5, 9, 17])
    );

    let out = run(
        &["cech", "--map", map.to_str().unwrap(), "--levels", "3", "--homology"],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("H_0 = Z^2"), "{text}");
    assert!(text.contains("H_1 = 0"), "{text}");
}

#[test]
fn rigidify_and_roundtrip_commands() {
    let dir = scratch("rigid");
    // Z/2 swapping two points, presented through its bar model
    let gset = write(
        &dir,
        "swap.json",
        r#"{
          "group": {"name": "Z/2", "order": 2, "identity": 0, "table": [[0,1],[1,0]]},
          "carrier_size": 2,
          "act": [[0,1],[1,0]]
        }"#,
    );
    let out = run(&["roundtrip", "--gset", gset.to_str().unwrap(), "--levels", "3"], &dir);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    // build the action files by hand from the library, then rigidify them
    let action = homnorm::actions::from_bar(
        &homnorm::groups::RightGSet::new(
            homnorm::catalog::cyclic(2),
            2,
            vec![vec![0, 1], vec![1, 0]],
        )
        .expect("swap action"),
        3,
    )
    .expect("bar model");
    let a_file = homnorm::files::SimplicialSetFile::from_simplicial(action.pi().source());
    let b_file = homnorm::files::SimplicialSetFile::from_simplicial(action.pi().target());
    let maps = homnorm::files::LevelMapsFile {
        level_maps: action.pi().level_maps().to_vec(),
    };
    let a_path = write(&dir, "a.json", &serde_json::to_string(&a_file).unwrap());
    let b_path = write(&dir, "b.json", &serde_json::to_string(&b_file).unwrap());
    let m_path = write(&dir, "m.json", &serde_json::to_string(&maps).unwrap());
    let out_group = dir.join("group.json");
    let out_gset = dir.join("gset.json");
    let out = run(
        &[
            "rigidify",
            "--source",
            a_path.to_str().unwrap(),
            "--target",
            b_path.to_str().unwrap(),
            "--maps",
            m_path.to_str().unwrap(),
            "--out-group",
            out_group.to_str().unwrap(),
            "--out-gset",
            out_gset.to_str().unwrap(),
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let group: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_group).unwrap()).unwrap();
    assert_eq!(group["order"], serde_json::json!(2));
    let gset_value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_gset).unwrap()).unwrap();
    assert_eq!(gset_value["act"], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn catalog_is_deterministic() {
    let dir = scratch("catalog");
    let run_once = || -> serde_json::Value {
        let out = run(
            &[
                "catalog",
                "--max-order",
                "4",
                "--levels",
                "3",
                "--format",
                "json",
            ],
            &dir,
        );
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let mut value: serde_json::Value =
            serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).expect("json report");
        value.as_object_mut().expect("object").remove("timing_ms");
        value
    };
    let first = run_once();
    let second = run_once();
    assert_eq!(first, second);
    assert!(first["verdicts"]
        .as_array()
        .expect("verdicts")
        .iter()
        .all(|v| v["pass"] == serde_json::json!(true)));

    // abelian-only sweep: every map is normal
    let out = run(
        &[
            "catalog",
            "--max-order",
            "6",
            "--levels",
            "3",
            "--abelian-only",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("normality on abelian maps"), "{text}");

    // order 1 leaves only the trivial homomorphism: vacuous pass
    let out = run(&["catalog", "--max-order", "1", "--levels", "3"], &dir);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("1 homomorphism"));

    // configuration errors
    let out = run(&["catalog", "--max-order", "30"], &dir);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["catalog", "--levels", "9"], &dir);
    assert_eq!(out.status.code(), Some(2));
}
