use std::path::PathBuf;
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matroidlab"))
        .args(args)
        .env_remove("MATROIDLAB_WORKERS")
        .output()
        .unwrap()
}

/// Runs `args` with `--input` pointing into the golden directory.
fn against(args: &[&str], input: &str, expected: &str, code: i32) {
    let input = golden(input);
    let mut full = args.to_vec();
    full.extend(["--input", input.to_str().unwrap()]);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stderr));
    let want = std::fs::read_to_string(golden(expected)).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), want, "{expected}");
}

#[test]
fn generators_match_golden() {
    for (args, file) in [
        (&["gen", "named", "DualK33"][..], "dual_k33.json"),
        (&["gen", "named", "K4"], "k4.json"),
        (&["gen", "theta", "2,3"], "theta_2_3.json"),
        (&["gen", "theta", "3,3"], "theta_3_3.json"),
    ] {
        let out = run(args);
        assert!(out.status.success());
        assert_eq!(String::from_utf8(out.stdout).unwrap(), std::fs::read_to_string(golden(file)).unwrap(), "{file}");
    }
}

#[test]
fn dual_k33_check() {
    against(&["nbc", "check", "--field", "gf2"], "dual_k33.json", "check_dual_k33_gf2.json", 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(golden("check_dual_k33_gf2.json")).unwrap()).unwrap();
    assert_eq!(v["verdict"], "basis");
    assert_eq!(v["l_size"], 20);
}

#[test]
fn theta_reports() {
    against(&["nbc", "check"], "theta_2_3.json", "check_theta_2_3.json", 0);
    against(&["lsop", "--field", "q"], "theta_2_3.json", "lsop_theta_2_3_q.json", 0);
    against(&["nbc", "split"], "theta_3_3.json", "split_theta_3_3.json", 0);
}

#[test]
fn hvector_and_info() {
    against(&["hvector"], "u45.json", "hvector_u45.json", 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(golden("hvector_u45.json")).unwrap()).unwrap();
    assert_eq!(v["h"], serde_json::json!([1, 1, 1, 1, 0]));
    against(&["info"], "k4.json", "info_k4.json", 0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let input = golden("theta_3_3.json");
    let args = ["nbc", "search", "--policy", "sample:50:7", "--input", input.to_str().unwrap()];
    let a = run(&[&args[..], &["--workers", "1"]].concat());
    let b = run(&[&args[..], &["--workers", "3"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    serde_json::from_slice::<serde_json::Value>(&a.stdout).unwrap();
}

#[test]
fn split_without_hypothesis_is_an_error() {
    let input = golden("theta_2_3.json");
    let out = run(&["nbc", "split", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a cocircuit"));
}
