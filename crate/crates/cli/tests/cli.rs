use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const TERNARY_ROWS: &str = "1,0,1,1;0,1,1,2";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codedcache")).args(args).env_remove("CODEDCACHE_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes the ternary (4, 2) scheme certified at alpha = 3.
fn ternary_file(dir: &TempDir) -> PathBuf {
    let p = dir.path().join("ternary.toml");
    let o = run(&["construct", "matrix", "--q", "3", "--rows", TERNARY_ROWS, "--alpha", "3", "--out", path_str(&p)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    p
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn construct_spc_reports_the_sixty_four_user_point() {
    let o = run(&["construct", "spc", "--k", "15", "--q", "4"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("base point: K = 64, M/N = 1/4, F_s = 1073741824, R = 3, gain = 16"), "{s}");
    assert!(s.contains("certificate: satisfied"));
}

#[test]
fn construct_cyclic_example_over_gf3() {
    let o = run(&["construct", "cyclic", "--n", "8", "--q", "3", "--g", "2,1,0,1,1"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("(8, 4) code over GF(3)"), "{s}");
    assert!(s.contains("alpha: 5 (z = 5)"));
    assert!(s.contains("certificate: satisfied"));
}

#[test]
fn construct_mds_over_too_small_field_fails() {
    let o = run(&["construct", "mds", "--n", "3", "--k", "2", "--q", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("too small"));
    let o = run(&["--error-json", "construct", "mds", "--n", "3", "--k", "2", "--q", "2"]);
    let e: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(e["error"], "FieldTooSmall");
    assert_eq!(e["exit_code"], 1);
}

#[test]
fn construct_rejects_a_polynomial_that_is_not_a_divisor() {
    let o = run(&["--error-json", "construct", "cyclic", "--n", "8", "--q", "3", "--g", "1,1,1"]);
    assert_eq!(code(&o), 1);
    let e: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(e["error"], "NotADivisor");
}

#[test]
fn construct_non_ccp_matrix_exits_three_but_writes_the_file() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.toml");
    let o = run(&["construct", "matrix", "--q", "2", "--rows", "1,0,1,0;0,1,0,1", "--out", path_str(&p)]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    assert!(p.exists());
    assert_eq!(code(&run(&["verify", path_str(&p)])), 3);
}

#[test]
fn malformed_arguments_are_usage_errors() {
    assert_eq!(code(&run(&["construct", "spc", "--k", "x", "--q", "4"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["construct", "cyclic", "--n", "8", "--q", "3", "--g", "2,,1"])), 2);
}

#[test]
fn verify_ternary_code_at_alpha_three() {
    let dir = TempDir::new().unwrap();
    let p = ternary_file(&dir);
    let o = run(&["verify", path_str(&p), "--alpha", "3"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert_eq!(s.matches(": ok").count(), 4, "{s}");
    assert!(s.trim_end().ends_with("satisfied"));
    let o = run(&["verify", path_str(&p), "--alpha", "3", "--json"]);
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["satisfied"], true);
    assert_eq!(v["certificates"][0]["windows"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_corrupted_file_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let p = ternary_file(&dir);
    let text = std::fs::read_to_string(&p).unwrap().replacen("[1, 0, 1, 1]", "[1, 0, 1 1]", 1);
    std::fs::write(&p, text).unwrap();
    let o = run(&["--error-json", "verify", path_str(&p)]);
    assert_eq!(code(&o), 1);
    let e: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(e["error"], "Parse");
}

#[test]
fn tampered_matrix_is_rejected_on_load() {
    let dir = TempDir::new().unwrap();
    let p = ternary_file(&dir);
    let text = std::fs::read_to_string(&p).unwrap().replacen("[0, 1, 1, 2]", "[0, 1, 1, 1]", 1);
    std::fs::write(&p, text).unwrap();
    let o = run(&["--error-json", "verify", path_str(&p)]);
    assert_eq!(code(&o), 1);
    let e: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert!(e["error"] == "CertificateMismatch" || e["error"] == "DigestMismatch", "{e}");
}

#[test]
fn verify_cyclic_code_at_alpha_k() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("c8.toml");
    assert_eq!(code(&run(&["construct", "cyclic", "--n", "8", "--q", "3", "--g", "2,1,0,1,1", "--out", path_str(&p)])), 0);
    assert_eq!(code(&run(&["verify", path_str(&p), "--alpha", "4"])), 0);
    assert_eq!(code(&run(&["verify", path_str(&p), "--shortcut"])), 0);
    // Any k consecutive columns of a cyclic code are independent, so alpha = k holds as well as k + 1.
    assert_eq!(code(&run(&["verify", path_str(&p), "--alpha", "5"])), 0);
}

#[test]
fn simulate_ternary_scheme_with_random_demands() {
    let dir = TempDir::new().unwrap();
    let p = ternary_file(&dir);
    let o = run(&["simulate", path_str(&p), "--alpha", "3", "--files", "12", "--bytes", "16", "--seed", "9"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rate"], "8/3");
    assert_eq!(v["expected_rate"], "8/3");
    assert_eq!(v["num_equations"], 72);
    assert_eq!(v["subpacketization"], 27);
    assert_eq!(v["load_bytes"], 72 * 16);
    assert_eq!(v["all_exact"], true);
    let users = v["user_results"].as_array().unwrap();
    assert_eq!(users.len(), 12);
    assert!(users.iter().all(|u| u["exact"] == true && u["recovered"] == 18));
}

#[test]
fn simulate_transposed_scheme() {
    let dir = TempDir::new().unwrap();
    let p = ternary_file(&dir);
    let o = run(&["simulate", path_str(&p), "--alpha", "3", "--files", "12", "--transpose"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["transposed"], true);
    assert_eq!(v["rate"], "3/8");
    assert_eq!(v["expected_rate"], "3/8");
    assert_eq!(v["subpacketization"], 72);
    assert_eq!(v["num_equations"], 27);
    assert_eq!(v["all_exact"], true);
}

#[test]
fn simulate_single_file_with_identical_demands() {
    let dir = TempDir::new().unwrap();
    let p = ternary_file(&dir);
    let o = run(&["simulate", path_str(&p), "--alpha", "3", "--files", "1", "--demands", "all-same:0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["all_exact"], true);
}

#[test]
fn simulate_explicit_demands_and_bad_indices() {
    let dir = TempDir::new().unwrap();
    let p = ternary_file(&dir);
    let list = "0,1,2,0,1,2,0,1,2,0,1,2";
    let o = run(&["simulate", path_str(&p), "--alpha", "3", "--files", "3", "--demands", list]);
    assert_eq!(code(&o), 0);
    let demands: Vec<u64> = json(&o)["demands"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    assert_eq!(demands, vec![0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2]);
    assert_eq!(code(&run(&["simulate", path_str(&p), "--alpha", "3", "--files", "2", "--demands", list])), 1);
    assert_eq!(code(&run(&["simulate", path_str(&p), "--alpha", "3", "--demands", "0,1"])), 1);
}

#[test]
fn simulate_uncertified_alpha_is_a_failure() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("rep.toml");
    // Two identical columns break every window containing both.
    assert_eq!(code(&run(&["construct", "matrix", "--q", "2", "--rows", "1,1,0;0,0,1", "--out", path_str(&p)])), 3);
    assert_eq!(code(&run(&["simulate", path_str(&p), "--alpha", "3", "--files", "4"])), 3);
}

#[test]
fn simulate_crt_scheme() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("crt.toml");
    let o = run(&["construct", "crt", "--n", "4", "--component", "2:1,1", "--component", "3:1,1", "--out", path_str(&p)]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.contains("[crt]") && text.contains("component_certificates"), "{text}");
    let o = run(&["simulate", path_str(&p), "--files", "5", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["users"], 24);
    assert_eq!(v["all_exact"], true);
}

#[test]
fn search_marks_k_max_within_budget() {
    let o = run(&["search", "--n", "12", "--q", "5", "--budget", "1500000"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let marked: Vec<&str> = s.lines().filter(|l| l.starts_with('*')).collect();
    assert_eq!(marked.len(), 1, "{s}");
    assert!(marked[0].split_whitespace().nth(1) == Some("8"), "{}", marked[0]);
    assert!(s.contains("k_max = 8 within budget 1500000: F_s = 1171875, gain = 9"));
    let o = run(&["search", "--n", "12", "--q", "5", "--budget", "1500000", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["k_max"], 8);
    let found: Vec<u64> = v["rows"].as_array().unwrap().iter().filter(|r| r["found"] == true).map(|r| r["k"].as_u64().unwrap()).collect();
    assert_eq!(found, vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 11]);
}

#[test]
fn search_over_z6_uses_ring_constructions_only() {
    let o = run(&["search", "--n", "6", "--q", "6", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let mut rows = s.lines();
    assert_eq!(rows.next(), Some("k,n_prime,z,alpha,construction,found,inconclusive,subpacketization,k_max"));
    for r in rows {
        let cons = r.split(',').nth(4).unwrap();
        assert!(cons.starts_with("spc") || cons.starts_with("ring-band") || cons == "-", "{r}");
    }
}

#[test]
fn search_with_unit_budget_has_no_feasible_k() {
    let o = run(&["--error-json", "search", "--n", "12", "--q", "5", "--budget", "1"]);
    assert_eq!(code(&o), 1);
    let e: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(e["error"], "NoFeasibleK");
}

#[test]
fn compare_spc_family_against_subset_placement() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("t.csv");
    let js = dir.path().join("t.json");
    let o = run(&["compare", "--spc-family", "16:4", "--mn", "--csv", path_str(&csv), "--json", path_str(&js)]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["scheme_id", "K", "M_over_N", "R", "F_s", "gain"]);
    let rows: Vec<Vec<String>> = reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    let find = |id: &str| rows.iter().find(|r| r[0] == id).unwrap_or_else(|| panic!("{id} missing from {text}"));
    assert_eq!(find("spc(16,15)/q=4")[1..], ["64", "1/4", "3/1", "1073741824", "16/1"]);
    assert_eq!(find("spc(16,15)/q=4^T")[1..], ["64", "3/4", "1/3", "3221225472", "48/1"]);
    // Subset placement at M/N = 1/4 needs C(64, 16) subfiles.
    assert_eq!(find("mn[spc(16,15)/q=4]")[1..], ["64", "1/4", "48/17", "488526937079580", "17/1"]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rows"].as_array().unwrap().len(), rows.len());
}

#[test]
fn compare_nine_five_code_with_memory_sharing_bound() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("nine.toml");
    assert_eq!(code(&run(&["construct", "identity-band", "--t", "3", "--z", "2", "--q", "2", "--out", path_str(&p)])), 0);
    let o = run(&["compare", path_str(&p), "--memory-sharing"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let bound: Vec<&str> = s.lines().filter(|l| l.starts_with("mn-sharing-bound[nine]")).collect();
    assert_eq!(bound.len(), 1, "{s}");
    assert!(bound[0].split_whitespace().any(|c| c == "8568"), "{}", bound[0]);
}

#[test]
fn compare_without_inputs_is_a_usage_error() {
    let o = run(&["compare"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&["compare", "--spc-family", "16"])), 2);
}

#[test]
fn exponent_emits_csv() {
    let o = run(&["exponent", "--q", "2", "--eta", "0.5", "--finite", "16"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "q,eta,regime,n,users,exponent");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("2,0.5,low-memory,,,0.75"));
    assert_eq!(code(&run(&["exponent", "--eta", "1.5"])), 1);
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = ternary_file(&dir);
    for args in [
        vec!["simulate", path_str(&p), "--alpha", "3", "--files", "7", "--seed", "11"],
        vec!["search", "--n", "12", "--q", "5", "--format", "json"],
        vec!["compare", "--spc-family", "12:3", "--mn", "--memory-sharing"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = std::fs::read(&p).unwrap();
    let q = dir.path().join("again.toml");
    run(&["construct", "matrix", "--q", "3", "--rows", TERNARY_ROWS, "--alpha", "3", "--out", path_str(&q)]);
    assert_eq!(a, std::fs::read(&q).unwrap());
}

#[test]
fn thread_count_does_not_change_output() {
    let one = run(&["--threads", "1", "search", "--n", "12", "--q", "5", "--format", "json"]);
    let two = Command::new(env!("CARGO_BIN_EXE_codedcache"))
        .args(["search", "--n", "12", "--q", "5", "--format", "json"])
        .env("CODEDCACHE_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(code(&run(&["--threads", "0", "search", "--n", "4", "--q", "2"])), 2);
}

#[test]
fn kron_and_extend_read_stored_codes() {
    let dir = TempDir::new().unwrap();
    let base = dir.path().join("spc.toml");
    assert_eq!(code(&run(&["construct", "spc", "--k", "2", "--q", "2", "--out", path_str(&base)])), 0);
    // A Kronecker product is certified at alpha = k.
    let o = run(&["construct", "kron", "--base", path_str(&base), "--t", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("(6, 4) code over GF(2)"));
    assert!(stdout(&o).contains("alpha: 4 (z = 2)"));
    assert_eq!(code(&run(&["construct", "kron", "--base", path_str(&base), "--t", "2", "--alpha", "5"])), 3);
    let o = run(&["construct", "extend", "--base", path_str(&base), "--s", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("(9, 2) code over GF(2)"));
}

#[test]
fn scheme_file_to_stdout_round_trips() {
    let dir = TempDir::new().unwrap();
    let o = run(&["construct", "cyclic", "--n", "8", "--q", "3", "--g", "2,1,0,1,1", "--out", "-"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("certificate: satisfied"));
    let p = dir.path().join("piped.toml");
    std::fs::write(&p, &o.stdout).unwrap();
    assert_eq!(code(&run(&["verify", path_str(&p)])), 0);
}
