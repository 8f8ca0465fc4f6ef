use std::process::{Command, Output};

fn sscx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sscx")).args(args).output().unwrap()
}

#[test]
fn full_n3_fiber_suite_exits_zero() {
    let o =
        sscx(&["verify-fiber", "--n", "3", "--t", "all", "--checks", "cohomology,bicomplex,snake,koszul,ces,d2zero"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    for l in text.lines() {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["status"], "pass", "{l}");
        assert_eq!(v["elapsed_ms"], 0);
    }
    assert!(text.lines().count() >= 5 * 4);
}

#[test]
fn weights_example_exits_zero() {
    let o = sscx(&["verify-weights", "--n", "4", "--k", "3", "--checks", "bbw,staircase,euler,phics,pieri,vanishing"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn failing_check_exits_one() {
    // the halved Pieri range is short for k = 4, i = j = 2
    let o = sscx(&["verify-weights", "--n", "4", "--k", "4", "--checks", "pieri"]);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8(o.stdout).unwrap();
    let failing: Vec<&str> = text.lines().filter(|l| l.contains(r#""status":"fail""#)).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].contains(r#""params":{"i":2,"j":2,"k":4}"#));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify-fiber", "--n", "3", "--t", "99"][..],
        &["verify-fiber", "--n", "3", "--checks", "nonsense"],
        &["verify-fiber", "--bogus"],
        &["frobnicate"],
        &["verify-weights", "--n", "3"],
    ] {
        let o = sscx(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("sscx-out-{}.jsonl", std::process::id()));
    let o = sscx(&["verify-fiber", "--n", "3", "--t", "2", "--checks", "koszul", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(
        text,
        "{\"suite\":\"koszul\",\"params\":{\"n\":3,\"t\":2},\"expected\":{\"cokernel\":1,\"exact_except_end\":true},\"computed\":{\"cokernel\":1,\"exact_except_end\":true},\"status\":\"pass\",\"elapsed_ms\":0}\n"
    );
}
