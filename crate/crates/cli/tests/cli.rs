use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concordia")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const ARTIFACTS: [&str; 8] =
    ["analysis.json", "lcat.json", "rcat.json", "omega.json", "somega.json", "phi.json", "icc.json", "report.txt"];

#[test]
fn roundtrip_writes_every_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b2");
    assert_eq!(code(&["roundtrip", "--preset", "brandt-B2", "--out", out.to_str().unwrap()]), Some(0));
    let mut names: Vec<String> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    let mut expected: Vec<String> = ARTIFACTS.iter().map(|s| s.to_string()).collect();
    expected.sort();
    assert_eq!(names, expected);
    let report = fs::read_to_string(out.join("report.txt")).unwrap();
    assert!(report.contains("all certificates pass") && !report.contains("FAIL"));
    let phi: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("phi.json")).unwrap()).unwrap();
    assert_eq!(phi["isomorphism"], true);
}

#[test]
fn roundtrip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        assert_eq!(code(&["roundtrip", "--preset", "full-transformation:2", "--out", d.to_str().unwrap()]), Some(0));
    }
    for f in ARTIFACTS {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn non_concordant_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["monogenic:2,2", "upper-triangular-F2", "null:2"] {
        let out = dir.path().join(name.replace([':', ','], "_"));
        let o = run(&["roundtrip", "--preset", name, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("not"));
        assert!(out.join("analysis.json").exists() && out.join("report.txt").exists());
    }
}

#[test]
fn bad_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"order": 2, "table": [[1, 0], [0, 0]]}"#).unwrap();
    assert_eq!(code(&["analyze", "--input", bad.to_str().unwrap()]), Some(1));
    assert_eq!(code(&["analyze", "--input", dir.path().join("missing.json").to_str().unwrap()]), Some(1));
    assert_eq!(code(&["analyze", "--preset", "no-such-thing"]), Some(1));
    assert_eq!(code(&["analyze"]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["search", "--max-order", "9"]), Some(1));
    assert_eq!(code(&["search", "--predicate", "shiny"]), Some(1));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn exhausted_budget_exits_4() {
    assert_eq!(code(&["search", "--max-order", "5", "--no-symmetry", "--budget", "0"]), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t3");
    let o = code(&["roundtrip", "--preset", "full-transformation:3", "--cone-mode", "full-enumeration", "--budget", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(o, Some(4));
}

#[test]
fn gen_output_feeds_back_as_input() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t2.json");
    assert_eq!(code(&["gen", "--preset", "full-transformation:2", "--out", file.to_str().unwrap()]), Some(0));
    let from_file = stdout(&["analyze", "--json", "--input", file.to_str().unwrap()]);
    let from_preset = stdout(&["analyze", "--json", "--preset", "full-transformation:2"]);
    assert_eq!(from_file, from_preset);
    let out = dir.path().join("rt");
    assert_eq!(code(&["roundtrip", "--input", file.to_str().unwrap(), "--out", out.to_str().unwrap()]), Some(0));
}

fn sorted_keys(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Object(m) => {
            let keys: Vec<&String> = m.keys().collect();
            keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(sorted_keys)
        }
        serde_json::Value::Array(a) => a.iter().all(sorted_keys),
        _ => true,
    }
}

#[test]
fn json_keys_are_sorted() {
    let text = stdout(&["analyze", "--json", "--preset", "ample-a2"]);
    // Key order in the text, not just in the parsed map.
    let first: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim().split('"').nth(1).unwrap()).collect();
    let mut sorted = first.clone();
    sorted.sort();
    assert_eq!(first, sorted);
    assert!(sorted_keys(&serde_json::from_str(&text).unwrap()));
}

#[test]
fn analyze_reports_the_ut_witness() {
    let text = stdout(&["analyze", "--preset", "upper-triangular-F2"]);
    assert!(text.contains("abundant         true"));
    assert!(text.contains("E-regular        false"));
    assert!(text.contains("is not regular in <E>"));
}

#[test]
fn export_counts() {
    let dot = stdout(&["export", "--preset", "semilattice-chain:2", "--what", "category"]);
    let edges = dot.matches("->").count();
    assert_eq!((dot.matches(" [label=").count() - edges, edges), (2, 5));

    let dot = stdout(&["export", "--preset", "cyclic:3", "--what", "icc"]);
    assert_eq!(dot.lines().filter(|l| l.trim_start().starts_with("e0 [")).count(), 1);
    assert_eq!(dot.matches("e0 -> e0").count(), 3);

    let text = stdout(&["export", "--preset", "brandt-B2", "--what", "eggbox", "--format", "text"]);
    assert_eq!(text.matches("D-class").count(), 2);
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["export", "--preset", "brandt-B2", "--what", "category", "--side", "right", "--format", "json"])).unwrap();
    assert_eq!(json["objects"].as_array().unwrap().len(), 3);
    assert_eq!(code(&["export", "--preset", "null:2", "--what", "icc"]), Some(2));
}

#[test]
fn search_is_deterministic_across_thread_counts() {
    let a = stdout(&["search", "--max-order", "4", "--jobs", "1"]);
    let b = stdout(&["search", "--max-order", "4", "--jobs", "4"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let tables: Vec<u64> = v["orders"].as_array().unwrap().iter().map(|o| o["tables"].as_u64().unwrap()).collect();
    assert_eq!(tables, vec![1, 5, 24, 188]);
}

#[test]
fn search_without_symmetry_counts_labelled_tables() {
    let sym: serde_json::Value = serde_json::from_str(&stdout(&["search", "--max-order", "3"])).unwrap();
    let raw: serde_json::Value = serde_json::from_str(&stdout(&["search", "--max-order", "3", "--no-symmetry"])).unwrap();
    for (a, b) in sym["orders"].as_array().unwrap().iter().zip(raw["orders"].as_array().unwrap()) {
        assert_eq!(a["labelled"], b["tables"]);
        assert_eq!(a["labelled"], b["labelled"]);
        let combos = |v: &serde_json::Value| {
            v["combinations"].as_object().unwrap().iter().map(|(k, c)| (k.clone(), c["labelled"].clone())).collect::<Vec<_>>()
        };
        assert_eq!(combos(a), combos(b));
    }
}
