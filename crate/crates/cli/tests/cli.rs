use std::process::{Command, Output};

fn vypoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vypoly"))
        .args(args)
        .env_remove("VYPOLY_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_classical_q2() {
    let o = vypoly(&["gen", "--n", "2", "--N", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["coeffs"], serde_json::json!(["4", "0", "0", "1"]));
    assert_eq!(doc["N"], 1);
}

#[test]
fn gen_writes_file_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = vypoly(&["gen", "--n", "4", "--N", "2", "--time", "3=2/7", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn corners_n2() {
    let o = vypoly(&["corners", "--N", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("2.36021"));
}

#[test]
fn verify_freak_passes() {
    let o = vypoly(&["verify", "--suite", "freak", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("PASS").count(), 4);
    assert!(!text.contains("FAIL"));
}

#[test]
fn bad_config_exit_code() {
    assert_eq!(vypoly(&["--precision", "64", "corners", "--N", "2"]).status.code(), Some(4));
    assert_eq!(vypoly(&["gen", "--n", "2", "--N", "1", "--time", "4=1"]).status.code(), Some(4));
    assert_eq!(vypoly(&["corners", "--N", "0"]).status.code(), Some(4));
    assert_eq!(vypoly(&["frobnicate"]).status.code(), Some(4));
    let o = Command::new(env!("CARGO_BIN_EXE_vypoly"))
        .args(["roots", "--n", "3"])
        .env("VYPOLY_PRECISION", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn roots_locus_render_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("roots.csv");
    let l = dir.path().join("locus.csv");
    let s = dir.path().join("figure.svg");
    assert_eq!(vypoly(&["roots", "--n", "5", "--N", "1", "--out", r.to_str().unwrap()]).status.code(), Some(0));
    let csv = std::fs::read_to_string(&r).unwrap();
    assert!(csv.starts_with("# n=5,N=1,scaled=true"));
    assert_eq!(csv.lines().count(), 2 + 15);
    let o = vypoly(&["locus", "--N", "1", "--grid", "40", "--out", l.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let again = vypoly(&["locus", "--N", "1", "--grid", "40", "--threads", "1"]);
    assert_eq!(std::fs::read_to_string(&l).unwrap(), stdout(&again));
    let o = vypoly(&["render", "--roots", r.to_str().unwrap(), "--locus", l.to_str().unwrap(), "--out", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&s).unwrap();
    assert!(svg.contains("<polyline") && svg.contains("<circle"));
}
