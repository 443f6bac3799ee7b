use std::path::PathBuf;

use serde_json::Value;
use stable_resolve_cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn ideal(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "ideals", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("stable-resolve").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn resolve_json_has_the_expected_ranks() {
    let m2 = ideal("m2.ideal");
    let (code, out, _) = call(&["resolve", &m2, "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["ranks"], serde_json::json!([1, 6, 8, 3]));
}

#[test]
fn check_principal_is_stable() {
    let (code, out, _) = call(&["check", &ideal("principal.ideal")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "stable\n");
}

#[test]
fn check_reports_instability_with_exit_two() {
    let (code, out, _) = call(&["check", &ideal("not_stable.ideal")]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("a^2"), "{out}");
}

#[test]
fn resolve_rejects_unstable_input() {
    let (code, out, err) = call(&["resolve", &ideal("not_stable.ideal")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("not stable") && err.contains("a^2"), "{err}");
}

#[test]
fn verify_full_passes() {
    for name in ["m2.ideal", "principal.ideal", "lex_segment.ideal"] {
        let (code, out, _) = call(&["verify", &ideal(name), "--depth", "full"]);
        assert_eq!(code, EXIT_OK, "{name}\n{out}");
        assert!(!out.contains("FAIL"));
    }
}

#[test]
fn verify_json_lists_each_check() {
    let (code, out, _) = call(&["verify", &ideal("m2.ideal"), "--json", "--depth", "quick"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for expected in [
        "stability",
        "el_shelling",
        "diamond",
        "cycles",
        "cone_coefficients",
        "complex",
        "minimal",
        "exact",
        "oracle",
        "cellular",
        "subcomplex_acyclicity",
    ] {
        assert!(names.contains(&expected), "missing {expected}");
    }
}

#[test]
fn oracle_single_degree() {
    let (code, out, _) = call(&["oracle", &ideal("m2.ideal"), "--degree", "1,1,1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("koszul     [0, 0, 2, 0]"), "{out}");
    let (code, _, err) = call(&["oracle", &ideal("m2.ideal"), "--degree", "1,1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("3 variables"));
}

#[test]
fn output_is_deterministic() {
    let m2 = ideal("m2.ideal");
    for args in [
        vec!["resolve", m2.as_str(), "--json"],
        vec!["cw", m2.as_str(), "--format", "json"],
        vec!["hasse", m2.as_str(), "--format", "dot"],
        vec!["verify", m2.as_str(), "--json", "--depth", "exhaustive", "--seed", "5"],
        vec!["corpus", "--count", "5", "--json", "--depth", "quick"],
    ] {
        assert_eq!(call(&args), call(&args), "{args:?}");
    }
}

#[test]
fn cw_json_counts() {
    let (code, out, _) = call(&["cw", &ideal("m2.ideal"), "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 18);
    assert_eq!(v["grading"].as_array().unwrap().len(), 18);
    assert!(!v["incidence"].as_array().unwrap().is_empty());
}

#[test]
fn hasse_dot_node_count() {
    let (code, out, _) = call(&["hasse", &ideal("m2.ideal")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().filter(|l| l.trim_start().starts_with('n') && !l.contains("->")).count(), 18);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(call(&["resolve"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["resolve", "/nonexistent/ideal"]).0, EXIT_USAGE);
    assert_eq!(call(&["cw", &ideal("m2.ideal"), "--format", "svg"]).0, EXIT_USAGE);
    assert_eq!(call(&["betti", &ideal("m2.ideal"), "--prime", "9"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", &ideal("m2.ideal"), "--depth", "deep"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn parse_errors_name_the_line() {
    let dir = std::env::temp_dir().join(format!("stable-resolve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.ideal");
    std::fs::write(&path, "vars: a b\na^2\na*q\n").unwrap();
    let (code, _, err) = call(&["check", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 3"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corpus_small_run_passes() {
    let (code, out, _) = call(&["corpus", "--count", "8", "--seed", "3", "--depth", "quick"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.ends_with("8 ideals, all passed\n"));
}

#[test]
fn betti_in_another_characteristic() {
    let (code, out, _) = call(&["betti", &ideal("m2.ideal"), "--prime", "2"]);
    // 2 is not odd
    assert_eq!(code, EXIT_USAGE, "{out}");
    let (code, out, _) = call(&["betti", &ideal("m2.ideal"), "--prime", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("total: 1 6 8 3"));
}
