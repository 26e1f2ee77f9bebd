use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
}

fn galconj(args: &[&str], cache: &Path, cwd: &Path) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_galconj"))
        .args(args)
        .env("GALCONJ_CACHE", cache)
        .current_dir(cwd)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

fn workspace_file(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn sorted_and_terminated(text: &str) {
    assert!(text.ends_with('\n'));
    let v: Value = serde_json::from_str(text).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, text, "keys are not in sorted order");
}

#[test]
fn chartab_of_s3_from_a_file() {
    let d = tempfile::tempdir().unwrap();
    let r = galconj(
        &["chartab", "--json", &workspace_file("examples/s3.json")],
        &d.path().join("c"),
        d.path(),
    );
    assert_eq!(r.code, 0);
    sorted_and_terminated(&r.stdout);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["order"], 6);
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
    assert_eq!(v["characters"].as_array().unwrap().len(), 3);
    let text = galconj(
        &["chartab", &workspace_file("examples/s3.json")],
        &d.path().join("c"),
        d.path(),
    );
    assert_eq!(text.code, 0);
    assert!(!text.stdout.is_empty());
}

#[test]
fn chartab_of_c3_has_cube_roots_of_unity() {
    let d = tempfile::tempdir().unwrap();
    let r = galconj(
        &["chartab", "--family", "cyclic", "3", "--json"],
        &d.path().join("c"),
        d.path(),
    );
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let conductors: Vec<u64> = v["characters"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|c| c["e"].as_u64().unwrap())
        })
        .collect();
    assert!(conductors.contains(&3));
}

#[test]
fn chartab_of_agl_1_25_has_degree_24() {
    let d = tempfile::tempdir().unwrap();
    let r = galconj(
        &[
            "chartab",
            "--json",
            "--family",
            "affine_frobenius",
            "5",
            "2",
            "1",
        ],
        &d.path().join("c"),
        d.path(),
    );
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["order"], 600);
    let degrees: Vec<&Value> = v["characters"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| &row[0])
        .collect();
    assert!(degrees
        .iter()
        .any(|c| c["coeffs"] == serde_json::json!([[24, 1]])));
}

#[test]
fn input_errors_exit_with_2() {
    let d = tempfile::tempdir().unwrap();
    let c = d.path().join("c");
    let bad = d.path().join("bad.json");
    fs::write(&bad, r#"{"kind": "mult-table", "table": [[0, 1], [1, 1]]}"#).unwrap();
    assert_eq!(
        galconj(&["check", bad.to_str().unwrap()], &c, d.path()).code,
        2
    );
    fs::write(&bad, "not json").unwrap();
    assert_eq!(
        galconj(&["chartab", bad.to_str().unwrap()], &c, d.path()).code,
        2
    );
    assert_eq!(
        galconj(&["check", "--family", "no_such_family", "3"], &c, d.path()).code,
        2
    );
    assert_eq!(
        galconj(
            &["check", "--family", "affine_frobenius", "5", "2", "7"],
            &c,
            d.path()
        )
        .code,
        2
    );
    assert_eq!(galconj(&["check"], &c, d.path()).code, 2);
    assert_eq!(
        galconj(
            &["make", "extraspecial", "3", "1", "sideways"],
            &c,
            d.path()
        )
        .code,
        2
    );
    assert_eq!(
        galconj(&["check", "/nonexistent/spec.json"], &c, d.path()).code,
        2
    );
}

#[test]
fn make_writes_specs_that_round_trip() {
    let d = tempfile::tempdir().unwrap();
    let c = d.path().join("c");
    for (args, order) in [
        (vec!["suzuki_frobenius", "3"], 448),
        (vec!["extraspecial", "3", "1", "exp-p"], 27),
        (vec!["cyclic", "1"], 1),
    ] {
        let out = d.path().join("g.json");
        let mut a = vec!["make"];
        a.extend(&args);
        a.extend(["-o", out.to_str().unwrap()]);
        assert_eq!(galconj(&a, &c, d.path()).code, 0);
        sorted_and_terminated(&fs::read_to_string(&out).unwrap());
        let r = galconj(&["check", "--json", out.to_str().unwrap()], &c, d.path());
        assert_eq!(r.code, 0, "{args:?}");
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["order"], order, "{args:?}");
    }
}

#[test]
fn check_examples() {
    let d = tempfile::tempdir().unwrap();
    let c = d.path().join("c");
    let v = |args: &[&str]| -> Value {
        let r = galconj(args, &c, d.path());
        assert_eq!(r.code, 0, "{args:?}");
        sorted_and_terminated(&r.stdout);
        serde_json::from_str(&r.stdout).unwrap()
    };
    let b1 = v(&["check", "--json", "--family", "v_rtimes_q8", "3"]);
    assert_eq!(
        (b1["gcstar"].clone(), b1["structural"]["tag"].clone()),
        (true.into(), "TypeB1".into())
    );
    let neg = v(&["check", "--json", "--family", "v_rtimes_q8", "7"]);
    assert_eq!(neg["gcstar"], false);
    assert_eq!(neg["structural"]["tag"], "NotGCStar");
    assert_eq!(neg["consistent"], true);
    assert!(neg["witness"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w["predicate"] == "gcstar" && w["degree"] == 8));
    let m16 = v(&[
        "check",
        "--json",
        "--family",
        "modular_maximal_cyclic",
        "2",
        "4",
    ]);
    assert_eq!(m16["structural"]["params"], serde_json::json!([2]));
    let ex = v(&["check", "--json", "--family", "extraspecial", "2", "2", "-"]);
    assert_eq!(ex["order"], 32);
    assert_eq!(ex["corollary_b"]["label"], "extraspecial-2");
}

#[test]
fn orbits_of_a5_and_c5() {
    let d = tempfile::tempdir().unwrap();
    let c = d.path().join("c");
    let shape = |fam: &str| -> Vec<(u64, usize)> {
        let r = galconj(&["orbits", "--json", "--family", fam, "5"], &c, d.path());
        assert_eq!(r.code, 0);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        v.as_array()
            .unwrap()
            .iter()
            .map(|o| {
                (
                    o["degree"].as_u64().unwrap(),
                    o["rows"].as_array().unwrap().len(),
                )
            })
            .collect()
    };
    assert_eq!(shape("cyclic"), vec![(1, 1), (1, 4)]);
    let r = galconj(
        &["orbits", "--json", "--family", "alternating5"],
        &c,
        d.path(),
    );
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let degs: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["degree"].as_u64().unwrap())
        .collect();
    assert_eq!(degs, vec![1, 3, 4, 5]);
}

#[test]
fn warm_cache_output_matches_cold() {
    let d = tempfile::tempdir().unwrap();
    let c = d.path().join("c");
    let args = ["check", "--json", "--family", "suzuki_frobenius", "3"];
    let cold = galconj(&args, &c, d.path());
    assert_eq!(fs::read_dir(&c).unwrap().count(), 1, "one cached table");
    let warm = galconj(&args, &c, d.path());
    assert_eq!(cold.stdout, warm.stdout);
    let none = galconj(
        &[
            "check",
            "--json",
            "--no-cache",
            "--family",
            "suzuki_frobenius",
            "3",
        ],
        &c,
        d.path(),
    );
    assert_eq!(cold.stdout, none.stdout);
    let text_cold = galconj(
        &["chartab", "--no-cache", "--family", "psl27"],
        &c,
        d.path(),
    );
    let _ = galconj(&["chartab", "--family", "psl27"], &c, d.path());
    let text_warm = galconj(&["chartab", "--family", "psl27"], &c, d.path());
    assert_eq!(text_cold.stdout, text_warm.stdout);
}

#[test]
fn default_cache_directory_is_used_without_the_variable() {
    let d = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_galconj"))
        .args(["chartab", "--family", "cyclic", "4"])
        .env_remove("GALCONJ_CACHE")
        .current_dir(d.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        fs::read_dir(d.path().join(".galconj-cache"))
            .unwrap()
            .count(),
        1
    );
}

#[test]
fn corrupted_cache_entry_is_caught() {
    let d = tempfile::tempdir().unwrap();
    let c = d.path().join("c");
    assert_eq!(
        galconj(&["chartab", "--family", "alternating5"], &c, d.path()).code,
        0
    );
    let entry = fs::read_dir(&c).unwrap().next().unwrap().unwrap().path();
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&entry).unwrap()).unwrap();
    v["characters"][2][1] = serde_json::json!({"e": 1, "coeffs": [[7, 1]]});
    fs::write(&entry, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(
        galconj(&["chartab", "--family", "alternating5"], &c, d.path()).code,
        1
    );
    // the bad row is no longer closed under the Galois action
    assert_eq!(
        galconj(
            &["check", "--json", "--family", "alternating5"],
            &c,
            d.path()
        )
        .code,
        1
    );
    assert_eq!(
        galconj(&["orbits", "--family", "alternating5"], &c, d.path()).code,
        1
    );
    // unreadable entries are ignored and recomputed
    fs::write(&entry, "{").unwrap();
    assert_eq!(
        galconj(&["check", "--family", "alternating5"], &c, d.path()).code,
        0
    );
}

#[test]
fn corpus_with_a_wrong_expectation_fails_and_names_it() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path().join("corpus");
    fs::create_dir(&dir).unwrap();
    fs::write(
        dir.join("a.json"),
        r#"{"name": "Q8 mislabelled", "spec": {"kind": "family", "name": "extraspecial", "params": [2, 1, 1]},
            "expected": {"tag": "TypeB1"}, "gcstar": true}"#,
    )
    .unwrap();
    fs::write(
        dir.join("b.json"),
        fs::read_to_string(workspace_file("examples/s3.json")).unwrap(),
    )
    .unwrap();
    let report = d.path().join("out.json");
    let r = galconj(
        &[
            "corpus",
            dir.to_str().unwrap(),
            "-o",
            report.to_str().unwrap(),
        ],
        &d.path().join("c"),
        d.path(),
    );
    assert_eq!(r.code, 1);
    let text = fs::read_to_string(&report).unwrap();
    sorted_and_terminated(&text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        v["summary"]["failed_entries"],
        serde_json::json!(["Q8 mislabelled"])
    );
    assert_eq!(v["summary"]["passed"], 1);
}

#[test]
fn corpus_report_is_independent_of_jobs_and_cache() {
    let d = tempfile::tempdir().unwrap();
    let c = d.path().join("c");
    let one = d.path().join("one.json");
    let four = d.path().join("four.json");
    assert_eq!(
        galconj(&["corpus", "-o", one.to_str().unwrap()], &c, d.path()).code,
        0
    );
    assert_eq!(
        galconj(
            &["corpus", "--jobs", "4", "-o", four.to_str().unwrap()],
            &c,
            d.path()
        )
        .code,
        0
    );
    let a = fs::read_to_string(&one).unwrap();
    assert_eq!(a, fs::read_to_string(&four).unwrap());
    sorted_and_terminated(&a);
    let default = galconj(&["corpus"], &c, d.path());
    assert_eq!(default.code, 0);
    assert_eq!(a, fs::read_to_string(d.path().join("report.json")).unwrap());
}
