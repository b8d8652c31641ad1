use std::process::{Command, Output};

fn soergel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soergel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn hecke_of_inverse_pair_is_one() {
    let o = soergel(&["hecke", "s1 s1'"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1");
}

#[test]
fn empty_braid_is_unit() {
    let o = soergel(&["rouquier", ""]);
    assert_eq!(stdout(&o), "R @ 0");
}

#[test]
fn reduced_reidemeister_two() {
    let o = soergel(&["rouquier", "s1' s1", "--reduce"]);
    assert_eq!(stdout(&o), "R @ 0");
}

#[test]
fn suites_pass_with_exit_zero() {
    for suite in ["r2", "r3", "farcomm", "hloc", "decat"] {
        let o = soergel(&["verify", suite, "--max-len", "3"]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", suite, stdout(&o));
        assert!(stdout(&o).ends_with(&format!("{}: pass", suite)));
    }
}

#[test]
fn json_reports_are_deterministic() {
    let a = soergel(&["--json", "verify", "r3", "--strands", "3"]);
    let b = soergel(&["--json", "verify", "r3", "--strands", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "soergel.report/1");
    assert_eq!(v["verdict"], "pass");
    assert!(v["checks"][0].get("seconds").is_none());
}

#[test]
fn hom_dimensions() {
    let o = soergel(&["--json", "hom", "R", "B1", "--deg", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "soergel.hom/1");
    assert_eq!(v["dimension"], 1);
    let o = soergel(&["hom", "B1", "B1", "--deg", "0"]);
    assert_eq!(stdout(&o), "dim Hom^0(B1, B1) = 1");
}

#[test]
fn braid_relation_classes() {
    let o = soergel(&["--json", "classes", "s1 s2 s1", "s2 s1 s2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["dimension"].as_u64(), v["chain_maps"].as_u64()), (Some(1), Some(2)));
}

#[test]
fn usage_and_input_errors_exit_three() {
    assert_eq!(soergel(&["frobnicate"]).status.code(), Some(3));
    let o = soergel(&["--json", "hecke", "s5", "--strands", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "soergel.error/1");
    assert_eq!(v["reason"], "parse");
}

#[test]
fn config_file_is_read() {
    let dir = std::env::temp_dir().join(format!("soergel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.toml");
    std::fs::write(&good, "max_len = 1\nthreads = 1\n").unwrap();
    let o = soergel(&["--config", good.to_str().unwrap(), "verify", "decat"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "max_len = 1\nunknown = 2\n").unwrap();
    let o = soergel(&["--config", bad.to_str().unwrap(), "verify", "decat"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}
