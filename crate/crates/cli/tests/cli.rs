use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

const SELFTEST_QUICK_LIMIT: Duration = Duration::from_secs(60);

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn bkcomp(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bkcomp")).arg("--out").arg(out).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Data rows of a TSV file, header comments dropped.
fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cobar_descent_concentrates_and_recovers_the_base() {
    let dir = tempfile::tempdir().unwrap();
    let o = bkcomp(dir.path(), &["cobar", path_str(&fixture("descent.json"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for r in rows(&dir.path().join("e2.tsv")) {
        let (s, dim, flags) = (&r[0], &r[2], &r[3]);
        if !flags.contains("unreliable") && s != "0" {
            assert_eq!(dim, "0");
        }
    }
    let homology = rows(&dir.path().join("homology.tsv"));
    let zero = homology.iter().find(|r| r[0] == "0").unwrap();
    assert_eq!(&zero[1..6], ["1", "1", "1", "1", "true"]);
    for r in homology.iter().filter(|r| r[5] == "true" && r[0] != "0") {
        assert_eq!(r[1], "0");
    }
}

#[test]
fn rational_field_gives_the_same_dimension_table() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let f = fixture("descent.json");
    assert_eq!(code(&bkcomp(a.path(), &["cobar", path_str(&f)])), 0);
    assert_eq!(code(&bkcomp(b.path(), &["cobar", path_str(&f), "--field", "rational"])), 0);
    for page in ["e1.tsv", "e2.tsv", "e3.tsv", "homology.tsv"] {
        assert_eq!(rows(&a.path().join(page)), rows(&b.path().join(page)), "{page}");
    }
}

#[test]
fn empty_and_malformed_fixtures_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    fs::write(&empty, "\n").unwrap();
    let o = bkcomp(&dir.path().join("out"), &["cobar", path_str(&empty)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("empty"));
    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\n  \"characteristic\": 2,\n  \"algebra\": [\n}").unwrap();
    let o = bkcomp(&dir.path().join("out"), &["cobar", path_str(&broken)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn non_associative_algebra_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    let table = r#"{"characteristic": 2, "module_dim": 1, "algebra": {"dim": 3, "unit": [1, 0, 0],
        "products": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[0,2,2,1],[2,0,2,1],[1,1,2,1],[1,2,1,1]]}}"#;
    fs::write(&f, table).unwrap();
    let o = bkcomp(&dir.path().join("out"), &["cobar", path_str(&f)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("does not give a triple"));
}

#[test]
fn zero_bounds_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = bkcomp(dir.path(), &["cobar", path_str(&fixture("descent.json")), "--smax", "0"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("s_max must be positive"));
}

#[test]
fn constant_algebra_experiment_completes() {
    let dir = tempfile::tempdir().unwrap();
    let o = bkcomp(dir.path(), &["aq", path_str(&fixture("ground.json")), "--smax", "1", "--tmax", "1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report = json(&dir.path().join("experiment.json"));
    assert_eq!(report["result"]["invariants_hold"], true);
    assert_eq!(report["result"]["connected"], true);
    let dims: Vec<String> = rows(&dir.path().join("levels.tsv")).into_iter().map(|r| r[1].clone()).collect();
    assert_eq!(dims, ["4,4,4", "10,10,10", "35,35,35"]);
}

#[test]
fn abelian_input_reports_the_concentration_check() {
    let dir = tempfile::tempdir().unwrap();
    let ground = fixture("ground.json");
    let args = ["aq", path_str(&ground), "--degree", "1", "--smax", "2", "--tmax", "2"];
    let o = bkcomp(dir.path(), &args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let summary: Vec<Vec<String>> = fs::read_to_string(dir.path().join("summary.tsv"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect();
    let get = |k: &str| summary.iter().find(|r| r[0] == k).unwrap()[1].clone();
    assert_eq!(get("e2_checked"), "3");
    assert_eq!(get("e2_concentrated_in_s0"), "true");
}

#[test]
fn over_cap_run_names_the_level_and_size() {
    let dir = tempfile::tempdir().unwrap();
    let o = bkcomp(dir.path(), &["aq", path_str(&fixture("free_sphere.json")), "--degree", "2"]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("level 2") && err.contains("2^32") && err.contains("4096"), "{err}");
}

#[test]
fn too_short_algebra_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = bkcomp(dir.path(), &["aq", path_str(&fixture("ground.json")), "--tmax", "3"]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
}

#[test]
fn point_gains_two_horn_fillers_at_stage_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = bkcomp(dir.path(), &["kan", "--shape", "point", "--bound-stages", "1", "--bound-dim", "1", "--report", "ledger"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let ledger = rows(&dir.path().join("ledger.tsv"));
    assert_eq!(ledger.len(), 2);
    assert!(ledger.iter().all(|r| r[0] == "1"));
    let generators: Vec<&str> = ledger.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(generators, ["horn 1 0", "horn 1 1"]);
}

#[test]
fn empty_set_attaches_nothing() {
    let dir = tempfile::tempdir().unwrap();
    for side in ["fibrant", "cofibrant"] {
        let o = bkcomp(dir.path(), &["kan", "--shape", "empty", "--side", side, "--bound-stages", "3", "--bound-dim", "2", "--report", "ledger"]);
        assert_eq!(code(&o), 0);
        assert_eq!(json(&dir.path().join("ledger.json"))["result"]["attachments"], 0);
    }
}

#[test]
fn axiom_reports_pass_on_the_bounded_region() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["kan", "--shape", "point", "--report", "axioms"],
        vec!["kan", "--shape", "standard:1", "--bound-stages", "2", "--bound-dim", "2", "--report", "kan"],
        vec!["kan", "--shape", "standard:1", "--side", "cofibrant", "--bound-stages", "3", "--report", "kan"],
        vec!["kan", "--shape", "boundary:2", "--side", "cofibrant", "--bound-stages", "2", "--bound-dim", "2", "--report", "axioms"],
    ] {
        let o = bkcomp(dir.path(), &args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        let name = if args.contains(&"kan") && args.last() == Some(&"kan") { "kan.json" } else { "axioms.json" };
        let checks = json(&dir.path().join(name))["result"]["checks"].as_array().unwrap().clone();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c["passed"] == true));
    }
}

#[test]
fn fixture_file_is_read_as_a_simplicial_set() {
    let dir = tempfile::tempdir().unwrap();
    let set = bkcomp::FiniteSimplicialSet::horn(2, 1);
    let f = dir.path().join("horn.json");
    fs::write(&f, serde_json::to_string(&set).unwrap()).unwrap();
    let o = bkcomp(&dir.path().join("out"), &["kan", path_str(&f), "--bound-stages", "1", "--bound-dim", "2", "--report", "kan"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn budget_stops_with_a_capacity_exit() {
    let dir = tempfile::tempdir().unwrap();
    let o = bkcomp(dir.path(), &["kan", "--shape", "standard:1", "--side", "cofibrant", "--bound-stages", "3", "--budget", "5"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&dir.path().join("ledger.json"))["result"]["ledger"]["complete"], false);
}

#[test]
fn subdivision_checks_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = bkcomp(dir.path(), &["subdiv", "--bijection", "1,2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let table = rows(&dir.path().join("subdiv.tsv"));
    // pairs l <= l' for k = 1, 2, 3 fit in truncation 5
    assert_eq!(table.len(), 1 + 3 + 6);
    assert!(table.iter().all(|r| r[4..7] == ["true", "true", "true"]));
    assert_eq!(json(&dir.path().join("bijection.json"))["result"]["error"], serde_json::Value::Null);
}

#[test]
fn selftest_quick_passes_in_time() {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let o = bkcomp(dir.path(), &["selftest", "--quick"]);
    assert!(start.elapsed() < SELFTEST_QUICK_LIMIT);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn selftest_full_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = bkcomp(dir.path(), &["selftest"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn corrupted_fixture_fails_the_selftest() {
    let dir = tempfile::tempdir().unwrap();
    let o = bkcomp(dir.path(), &["selftest", "--quick", "--inject-corruption"]);
    assert_eq!(code(&o), 3);
    let outcomes = json(&dir.path().join("selftest.json"))["result"].as_array().unwrap().clone();
    assert!(outcomes.iter().any(|c| c["passed"] == false));
}

#[test]
fn identical_configs_give_identical_files_with_headers() {
    let dir = tempfile::tempdir().unwrap();
    let (descent, ground) = (fixture("descent.json"), fixture("ground.json"));
    let runs: [&[&str]; 3] = [
        &["--seed", "17", "cobar", path_str(&descent)],
        &["--seed", "17", "aq", path_str(&ground)],
        &["--seed", "17", "kan", "--shape", "standard:1", "--bound-stages", "2", "--bound-dim", "2", "--report", "kan"],
    ];
    for args in runs {
        let out = dir.path().join(args[2]);
        assert_eq!(code(&bkcomp(&out, args)), 0);
        let first = snapshot(&out);
        fs::remove_dir_all(&out).unwrap();
        assert_eq!(code(&bkcomp(&out, args)), 0);
        assert_eq!(first, snapshot(&out), "{args:?}");
        for (name, body) in first {
            assert!(body.contains("\"seed\":17") || body.contains("\"seed\": 17"), "{name} lacks the seed");
            assert!(body.contains("window"), "{name} lacks the windows");
        }
    }
}

fn snapshot(dir: &Path) -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    files.sort();
    files
}
