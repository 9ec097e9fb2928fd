use std::process::Command;

fn twist(args: &[&str], seed: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twist"));
    cmd.args(args).env_remove("TWIST_SEED");
    if let Some(s) = seed {
        cmd.env("TWIST_SEED", s);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = vec!["--format", "json"];
    a.extend_from_slice(args);
    let (code, out, err) = twist(&a, None);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn every_subcommand_emits_schema() {
    let cases: &[&[&str]] = &[
        &["root-system", "--type", "D4"],
        &["struct-consts", "--type", "G2"],
        &["torus", "--matrix", "[[2,1],[1,1]]"],
        &["unipotent", "--type", "A2", "--chi", "[2,2]"],
        &["gan", "--matrix", "[[2,0],[0,3]]"],
        &["semidirect", "--weights", "[[1],[-1]]", "--torus", "[-1]", "--vector", "[[0,2],[3,0]]", "--field", "Fq:p=7"],
        &["witt", "--p", "5", "--n", "2", "--op", "add", "--a", "[1,2]", "--b", "[3,4]"],
        &["orbit-count", "torus", "--matrix", "[[0,1],[1,0]]", "--field", "Fq:p=5"],
        &["selftest"],
    ];
    for c in cases {
        let v = json(c);
        assert_eq!(v["schema"], "twist/1", "{c:?}");
    }
}

#[test]
fn known_answers() {
    assert_eq!(json(&["torus", "--matrix", "[[0,1],[1,0]]"])["verdict"], "Infinite");
    let v = json(&["unipotent", "--type", "A2", "--chi", "[2,2]", "--count"]);
    assert_eq!(v["verdict"], "One");
    assert_eq!(v["count"], 1);
    let v = json(&["orbit-count", "unipotent", "--type", "A2", "--field", "Fq:p=5"]);
    assert_eq!(v["count"], 29);
}

#[test]
fn validation_errors_exit_2_and_name_the_flag() {
    let cases: &[(&[&str], &str)] = &[
        (&["torus", "--matrix", "[[2,0],[0,1]]"], "--matrix"),
        (&["unipotent", "--type", "Z9"], "--type"),
        (&["unipotent", "--type", "A2", "--chi", "[0,1]"], "--chi"),
        (&["unipotent", "--type", "A2", "--field", "Fq:p=6"], "--field"),
        (&["--jobs", "0", "selftest"], "--jobs"),
        (&["witt", "--p", "4", "--n", "2", "--op", "add", "--a", "[1,1]", "--b", "[1,1]"], "--p"),
    ];
    for (args, flag) in cases {
        let (code, _, err) = twist(args, None);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(err.contains(flag), "{args:?}: {err}");
    }
}

#[test]
fn seed_from_env_is_deterministic() {
    let args = ["--format", "json", "unipotent", "--type", "B2", "--random"];
    let a = twist(&args, Some("17"));
    let b = twist(&args, Some("17"));
    assert_eq!(a.0, 0, "{}", a.2);
    assert_eq!(a.1, b.1);
    let c = twist(&["--format", "json", "--seed", "17", "unipotent", "--type", "B2", "--random"], None);
    assert_eq!(a.1, c.1);
}

#[test]
fn jobs_do_not_change_output() {
    let base = ["orbit-count", "unipotent", "--type", "A2", "--field", "Fq:p=5", "--chi", "[2,3]"];
    let one = twist(&[&["--format", "json", "--jobs", "1"][..], &base].concat(), None);
    let four = twist(&[&["--format", "json", "--jobs", "4"][..], &base].concat(), None);
    assert_eq!(one.0, 0, "{}", one.2);
    assert_eq!(one.1, four.1);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = twist(&["selftest"], None);
    assert_eq!(code, 0);
    assert!(!out.contains("FAIL"));
}
