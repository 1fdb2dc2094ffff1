use std::path::PathBuf;
use std::process::{Command, Output};

fn input(name: &str) -> &'static str {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs").join(name);
    Box::leak(p.to_str().unwrap().to_string().into_boxed_str())
}

fn dgcyc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgcyc")).args(args).env_remove("DGCYC_CACHE_DIR").output().unwrap()
}

fn arg(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_all_inputs() {
    for f in ["unit.dgc", "free_x.dgc", "dual_resolution.dgc", "dual_numbers.dgc", "kronecker.dgc"] {
        let out = dgcyc(&["validate", input(f)]);
        assert!(out.status.success(), "{f}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn parse_error_is_positioned() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dgc");
    std::fs::write(&bad, "objects: pt\nx: pt->pt deg=0 wt=1\ny: pt->pt deg=1 wt=2 d=x*z\n").unwrap();
    let out = dgcyc(&["validate", arg(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3, column 25"));
    let out = dgcyc(&["check", "sbi", arg(&bad), "--weights", "0..2", "--degrees", "-2..2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_passed"], false);
}

#[test]
fn windows_are_mandatory() {
    let out = dgcyc(&["check", "homotopy", input("free_x.dgc")]);
    assert!(!out.status.success());
}

#[test]
fn check_homotopy_free() {
    let out = dgcyc(&["check", "homotopy", input("free_x.dgc"), "--n-max", "3", "--weights", "0..3", "--degrees", "-1..5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn reduced_cc_of_free_algebra() {
    let out = dgcyc(&[
        "homology", input("free_x.dgc"), "--complex", "CC", "--reduced", "--weights", "1..4", "--degrees", "-1..3",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for row in v["homology"].as_array().unwrap() {
        let expected = if row["d"] == 0 { 1 } else { 0 };
        assert_eq!(row["dim"], expected, "{row}");
    }
    assert_eq!(v["homology"].as_array().unwrap().len(), 4 * 3);
}

#[test]
fn check_hodge_on_dual_numbers_pair() {
    let out = dgcyc(&[
        "check", "hodge", input("dual_resolution.dgc"), "--target", input("dual_numbers.dgc"),
        "--hodge-r", "1", "--weights", "0..2", "--degrees", "-6..6",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn failing_check_exits_nonzero() {
    // Q is not a resolution of D above weight 2.
    let out = dgcyc(&[
        "check", "hodge", input("dual_resolution.dgc"), "--target", input("dual_numbers.dgc"),
        "--hodge-r", "1", "--weights", "0..3", "--degrees", "-6..6", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn report_is_deterministic() {
    let args = ["report", input("free_x.dgc"), "--weights", "0..2", "--degrees", "-3..3", "--n-max", "2", "--format", "json"];
    let a = dgcyc(&args);
    let b = dgcyc(&[&args[..], &["--jobs", "4"]].concat());
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.get("timings_ms").is_none());
}

#[test]
fn cache_hits_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["homology", input("dual_resolution.dgc"), "--complex", "CN", "--weights", "0..3", "--degrees", "-4..4"];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_dgcyc")).args(args).env("DGCYC_CACHE_DIR", dir.path()).output().unwrap()
    };
    let cold = run();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let warm = run();
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, dgcyc(&args).stdout);
}

#[test]
fn gs_grading_flag() {
    let out = dgcyc(&[
        "--gs-grading", "homology", input("dual_resolution.dgc"), "--complex", "Xtot", "--hodge-r", "1",
        "--weights", "0..1", "--degrees", "-3..3", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // d = -2, r = 1 gives (p, q) = (2, -3).
    assert!(text.lines().any(|l| l.contains(",0,-2,,1,2,-3,")), "{text}");
}
