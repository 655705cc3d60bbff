//! End to end runs of the `forge` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge")).args(args).current_dir(repo()).output().expect("run forge")
}

fn repo() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn rca_mul_normal_form() {
    let o = forge(&["rca", "mul", "--group", "groups/z2.json", "--a", "u1", "--b", "y1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "y1*u1 + t - 2*c1*s1");
    let o = forge(&["rca", "mul", "--group", "S2", "--a", "s1", "--b", "y1"]);
    assert_eq!(stdout(&o).trim(), "y2*s1");
}

#[test]
fn dunkl_commute_on_shipped_group() {
    for g in ["groups/z2.json", "groups/z3.json", "groups/s2.json", "groups/s3.json"] {
        let o = forge(&["verify", "dunkl-commute", "--group", g]);
        assert_eq!(o.status.code(), Some(0), "{g}: {}", stdout(&o));
    }
}

#[test]
fn dunkl_show_and_apply() {
    let o = forge(&["dunkl", "show", "--group", "groups/z2.json", "--xi", "e1"]);
    assert_eq!(stdout(&o).trim(), "c1/x1*s1 + d1 - c1/x1");
    let o = forge(&["dunkl", "apply", "--group", "S2", "--xi", "e1", "--f", "x1^2"]);
    assert_eq!(stdout(&o).trim(), "(-c1 + 2)*x1 - c1*x2");
}

#[test]
fn verify_all_lists_every_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = forge(&["verify", "all", "--quick", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    let suites: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    for s in ["pbw", "dunkl-commute", "dunkl-embed", "hc", "jets", "gluing", "induction"] {
        assert!(suites.contains(&s), "{s} missing from {suites:?}");
    }
    assert_eq!(v["reports"][0]["conventions"]["epsilon"], -1);
    let o = forge(&["report", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("18 suites"));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let o = forge(&["verify", "pbw", "--group", "Z3", "--quick", "--seed", "9", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(p).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn named_verifications() {
    for args in [
        vec!["verify", "gluing", "--n", "2", "--group", "Z2", "--orders", "4,4", "--quick"],
        vec!["verify", "induction", "--G", "S3", "--H", "S2", "--A", "C[x]/(x^3)", "--seed", "7", "--quick"],
        vec!["verify", "hc", "--group", "groups/gl3_reflection.json", "--codim", "3", "--order", "3", "--quick"],
        vec!["jets", "flat-check", "--dim", "1", "--order", "3", "--op", "x^2*d1", "--paths", "auto"],
    ] {
        let o = forge(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ \"dim\": 1 }").unwrap();
    let singular = dir.path().join("singular.json");
    std::fs::write(&singular, r#"{ "cyclotomic_order": 1, "dim": 1, "generators": [[["2"]]] }"#).unwrap();
    for args in [
        vec!["rca", "mul", "--group", "no-such-group", "--a", "u1", "--b", "y1"],
        vec!["rca", "mul", "--group", broken.to_str().unwrap(), "--a", "u1", "--b", "y1"],
        vec!["group", "list", "--group", singular.to_str().unwrap()],
        vec!["rca", "mul", "--group", "Z2", "--a", "u7", "--b", "y1"],
        vec!["verify", "hc", "--group", "groups/gl3_reflection.json", "--codim", "2"],
        vec!["verify", "induction", "--G", "Z4", "--H", "Z3"],
        vec!["verify", "gluing", "--orders", "4"],
        vec!["verify", "nonsense"],
    ] {
        assert_eq!(forge(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn group_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_forge"))
        .args(["group", "list", "--group", "groups/s3.json"])
        .current_dir(repo())
        .env("FORGE_MAX_GROUP", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap of 4"));
}

#[test]
fn group_define_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s2.json");
    let o = forge(&["group", "define", "--dim", "2", "--gen", "0,1;1,0", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = forge(&["group", "reflections", "--group", p.to_str().unwrap()]);
    assert!(stdout(&o).contains("1 reflections"));
}

#[test]
fn failing_report_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("failed.json");
    let text = r#"{ "tool": "forge", "passed": false, "reports": [
        { "suite": "pbw", "group": "Z2", "passed": false, "checks": [ { "name": "associativity", "passed": false } ] } ] }"#;
    std::fs::write(&p, text).unwrap();
    let o = forge(&["report", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL pbw Z2: 0/1"));
}
