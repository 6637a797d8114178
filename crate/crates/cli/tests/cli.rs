use std::process::{Command, Output};

fn acstk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acstk"))
        .args(args)
        .env_remove("ACSTK_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_text() {
    let out = acstk(&["classify", "4"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "S^4: ruled_out (pontryagin_euler), pairing -4; signature witness -4/3"
    );
    let out = acstk(&["classify", "6"]);
    assert!(stdout(&out).starts_with("S^6: exists (explicit_construction)"));
}

#[test]
fn classify_json_schema() {
    let out = acstk(&["classify", "8", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "ruled_out");
    assert_eq!(v["reason"], "pontryagin_euler");
    assert_eq!(v["certificate"]["pairing"], "4");
    assert_eq!(v["corroborating"][0]["reason"], "signature_L_genus");
    assert_eq!(v["corroborating"][0]["witness"], "28/45");
    assert!(!v["assumed_axioms"].as_array().unwrap().is_empty());
}

#[test]
fn classify_range_json() {
    let out = acstk(&["classify", "--range", "1..20", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let verdicts = v.as_array().unwrap();
    assert_eq!(verdicts.len(), 20);
    let exists: Vec<u64> = verdicts
        .iter()
        .filter(|v| v["status"] == "exists")
        .map(|v| v["n"].as_u64().unwrap())
        .collect();
    assert_eq!(exists, [2, 6]);
    assert_eq!(verdicts[13]["reason"], "chern_divisibility");
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        &["classify", "--range", "1..12", "--json"][..],
        &["verify-j", "--sphere", "6", "--samples", "20", "--json"][..],
    ] {
        let a = acstk(args);
        let b = acstk(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn seed_env_override() {
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_acstk"));
        cmd.args(["verify-j", "--sphere", "2", "--samples", "5", "--json"]);
        match seed {
            Some(s) => cmd.env("ACSTK_SEED", s),
            None => cmd.env_remove("ACSTK_SEED"),
        };
        let v: serde_json::Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["seed"].as_u64().unwrap()
    };
    assert_eq!(run(None), 0);
    assert_eq!(run(Some("42")), 42);
}

#[test]
fn lpoly_and_series() {
    let out = acstk(&["lpoly", "--k", "3"]);
    assert_eq!(
        stdout(&out),
        "L1 = 1/3*p1\nL2 = -1/45*p1^2 + 7/45*p2\nL3 = 2/945*p1^3 - 13/945*p1*p2 + 62/945*p3\n"
    );
    let out = acstk(&["lpoly", "--k", "1", "--latex"]);
    assert_eq!(stdout(&out).trim(), r"L_{1} = \frac{1}{3} p_{1}");
    let out = acstk(&["series", "q", "--order", "3"]);
    assert_eq!(stdout(&out), "z^0: 1\nz^1: 1/3\nz^2: -1/45\nz^3: 2/945\n");
}

#[test]
fn bernoulli_values() {
    let out = acstk(&["bernoulli", "--k", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v["bernoulli"],
        serde_json::json!(["1/6", "1/30", "1/42", "1/30"])
    );
}

#[test]
fn nijenhuis_golden() {
    // stereographic origin is -e7; e2, e4 are tangent there
    let out = acstk(&[
        "nijenhuis",
        "--sphere",
        "6",
        "--point",
        "0,0,0,0,0,0",
        "--u",
        "0,1,0,0,0,0,0",
        "--v",
        "0,0,0,1,0,0,0",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["sphere"], 6);
    assert_eq!(v["is_zero"], false);
    for key in ["point", "u", "v", "nijenhuis"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }

    let out = acstk(&[
        "nijenhuis",
        "--sphere",
        "2",
        "--point",
        "1/2,-3",
        "--u",
        "1,2,3",
        "--v",
        "-1,0,2",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["is_zero"], true);
}

#[test]
fn assoc_compare_runs() {
    let out = acstk(&[
        "assoc-compare",
        "--sphere",
        "6",
        "--point",
        "0,0,0,0,0,0",
        "--u",
        "0,1,0,0,0,0,0",
        "--v",
        "0,0,0,1,0,0,0",
        "--w",
        "0,0,1,0,0,0,0",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("associator").is_some() && v.get("nijenhuis_pairing").is_some());
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["classify", "0"][..],
        &["verify-j", "--sphere", "4"][..],
        &[
            "nijenhuis",
            "--sphere",
            "2",
            "--point",
            "1",
            "--u",
            "1,0,0",
            "--v",
            "0,1,0",
        ][..],
        &[
            "assoc-compare",
            "--sphere",
            "2",
            "--point",
            "1,1",
            "--u",
            "1,0,0",
            "--v",
            "0,1,0",
            "--w",
            "0,0,1",
        ][..],
        &["lpoly", "--k", "0"][..],
        &["classify", "--range", "5..2"][..],
        &[
            "nijenhuis",
            "--sphere",
            "2",
            "--point",
            "1,x",
            "--u",
            "1,0,0",
            "--v",
            "0,1,0",
        ][..],
    ] {
        let out = acstk(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}
