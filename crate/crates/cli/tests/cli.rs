use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_rankperm");

fn rankperm(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

fn ok(args: &[&str]) -> String {
    let o = rankperm(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn status(args: &[&str]) -> i32 {
    rankperm(args).status.code().expect("exited normally")
}

#[test]
fn structured_reports_match_golden_files() {
    let cases: &[(&str, &[&str])] = &[
        ("dist_example.json", &["dist", "2,1,4,3", "2,3,4,1"]),
        ("dist_identical.json", &["dist", "1,2,3", "1,2,3"]),
        ("invvec_perm.json", &["invvec", "--perm", "2,3,4,1"]),
        ("invvec_vector.json", &["invvec", "--vector", "0,1,2"]),
        ("volume_4_k2.json", &["volume", "--n", "4", "--k", "2"]),
        ("volume_4_r1.json", &["volume", "--n", "4", "--r", "1"]),
        (
            "volume_3_r2.json",
            &["volume", "--n", "3", "--r", "2", "--brute"],
        ),
        ("volume_5.json", &["volume", "--n", "5"]),
        ("bounds_4_3.json", &["bounds", "--n", "4", "--d", "3"]),
        ("bounds_3_1.json", &["bounds", "--n", "3", "--d", "1"]),
        ("bounds_12_42.json", &["bounds", "--n", "12", "--d", "42"]),
        ("optimal_3_3.json", &["optimal", "--n", "3", "--d", "3"]),
        ("optimal_5_5.json", &["optimal", "--n", "5", "--d", "5"]),
    ];
    for (name, args) in cases {
        let mut full = vec!["--format", "structured"];
        full.extend_from_slice(args);
        assert_golden(name, &ok(&full));
    }
}

#[test]
fn text_report_matches_golden_file() {
    assert_golden("dist_example.txt", &ok(&["dist", "2,1,4,3", "2,3,4,1"]));
}

#[test]
fn structured_values_are_strings_in_fixed_order() {
    let text = ok(&["--format", "structured", "dist", "2,1,4,3", "2,3,4,1"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let obj = v.as_object().unwrap();
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "n",
            "kendall",
            "l1",
            "inversion_vector_first",
            "inversion_vector_second",
            "footrule",
            "cayley"
        ]
    );
    assert_eq!(obj["kendall"], "3");
    assert_eq!(obj["cayley"], "1");
}

#[test]
fn construct_verify_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("code.json");
    let f = file.to_str().unwrap();
    let report = ok(&[
        "--format",
        "structured",
        "construct",
        "--n",
        "5",
        "--t",
        "2",
        "--out",
        f,
    ]);
    assert_golden("construct_5_2.json", &report);
    assert_golden(
        "codebook_5_2.json",
        &std::fs::read_to_string(&file).unwrap(),
    );
    assert_golden(
        "verify_5_2.json",
        &ok(&["--format", "structured", "verify", f]),
    );

    let decoded = ok(&["--format", "structured", "decode", f, "1,2,3,5,4"]);
    let v: serde_json::Value = serde_json::from_str(&decoded).unwrap();
    assert_eq!(v["status"], "decoded");
    assert_eq!(v["distance"], "1");
}

#[test]
fn construct_7_1_has_at_least_388_words_and_decodes_neighbours() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    let f = file.to_str().unwrap();
    let report = ok(&[
        "--format",
        "structured",
        "construct",
        "--n",
        "7",
        "--t",
        "1",
        "--out",
        f,
    ]);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert!(v["size"].as_str().unwrap().parse::<u64>().unwrap() >= 388);
    assert_eq!(v["m_t"], "13");
    assert_eq!(v["q"], serde_json::Value::Null);
    assert_eq!(v["min_distance_checked"], true);
    ok(&["verify", f]);

    let text = std::fs::read_to_string(&file).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let first = doc["codebook"][0].as_str().unwrap();
    let out = ok(&["--format", "structured", "decode", f, first]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["distance"], "0");
}

#[test]
fn verify_detects_a_perturbed_codeword() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    let f = file.to_str().unwrap();
    ok(&["construct", "--n", "7", "--t", "2", "--out", f]);
    let text = std::fs::read_to_string(&file).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let word = doc["codebook"][2].as_str().unwrap().to_string();
    let p: rankperm::perm::Permutation = word.parse().unwrap();
    let moved = p.adjacent_transposition(3).unwrap().to_string();
    std::fs::write(
        &file,
        text.replacen(&format!("\"{word}\""), &format!("\"{moved}\""), 1),
    )
    .unwrap();
    let o = rankperm(&["verify", f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verification failed"));
}

#[test]
fn malformed_codebook_is_a_verification_failure() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, "{\"n\": \"5\"}").unwrap();
    assert_eq!(status(&["verify", file.to_str().unwrap()]), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(status(&["verify", missing.to_str().unwrap()]), 1);
}

#[test]
fn decode_reports_uncorrectable_words() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    let f = file.to_str().unwrap();
    ok(&["construct", "--n", "6", "--t", "2", "--out", f]);
    let mut saw_uncorrectable = false;
    for received in rankperm::perm::all_permutations(6).step_by(7) {
        let r = received.to_string();
        let out = ok(&["--format", "structured", "decode", f, &r]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        match v["status"].as_str().unwrap() {
            "uncorrectable" => saw_uncorrectable = true,
            "decoded" => assert!(v["l1_distance"].as_str().unwrap().parse::<u64>().unwrap() <= 2),
            other => panic!("unexpected status {other}"),
        }
    }
    assert!(saw_uncorrectable);
    assert_eq!(status(&["decode", f, "1,2,3"]), 1);
}

#[test]
fn usage_errors_exit_with_1() {
    assert_eq!(status(&["dist", "1,2,3", "1,2"]), 1);
    assert_eq!(status(&["dist", "1,2,2", "1,2,3"]), 1);
    assert_eq!(status(&["bounds", "--n", "4", "--d", "7"]), 1);
    assert_eq!(status(&["bounds", "--n", "4", "--d", "0"]), 1);
    assert_eq!(status(&["invvec", "--vector", "2,0"]), 1);
    assert_eq!(status(&["invvec", "--perm", "1,2", "--vector", "0"]), 1);
    assert_eq!(
        status(&["construct", "--n", "3", "--t", "1", "--out", "/dev/null"]),
        1
    );
    assert_eq!(status(&["frobnicate"]), 1);
    assert_eq!(status(&["volume"]), 1);
    assert_eq!(status(&["--format", "xml", "volume", "--n", "3"]), 1);

    let o = rankperm(&["dist", "1,x,3", "1,2,3"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 2"));
}

#[test]
fn caps_exit_with_3() {
    assert_eq!(
        status(&["construct", "--n", "13", "--t", "2", "--out", "/dev/null"]),
        3
    );
    assert_eq!(status(&["optimal", "--n", "6", "--d", "3"]), 3);
    assert_eq!(status(&["volume", "--n", "9", "--brute"]), 3);
    assert_eq!(status(&["volume", "--n", "201"]), 3);
    assert_eq!(status(&["bounds", "--n", "500", "--d", "3"]), 3);
}

#[test]
fn help_and_version_succeed() {
    assert!(ok(&["--help"]).contains("construct"));
    assert!(ok(&["--version"]).contains("rankperm"));
}
