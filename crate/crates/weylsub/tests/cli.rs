//! End-to-end checks of the installed binary: schemas, determinism, exit
//! codes.

use std::process::Command;

fn weylsub(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_weylsub"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn classify_json_schema_and_counts() {
    let (code, stdout, _) = weylsub(&["classify", "A2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);

    let (code, stdout, _) = weylsub(&["classify", "B2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 6);
}

#[test]
fn usage_and_validation_exit_codes() {
    let (code, _, stderr) = weylsub(&["classify", "Z9"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("invalid"));

    let (code, _, _) = weylsub(&["no-such-command"]);
    assert_eq!(code, 1);

    // Malformed f sign → validation error, exit 1.
    let bad = r#"{"schema":1,"gamma":[[1],[-1]],"f":[0,0]}"#;
    let (code, _, stderr) = weylsub(&["subgroup", "A1", "--gf", bad, "--action", "volume"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("f("));
}

#[test]
fn subgroup_volume_index_cosets() {
    let gf0 = r#"{"schema":1,"gamma":[[1],[-1]],"f":[0,1]}"#;
    let (code, stdout, _) = weylsub(&["subgroup", "A1", "--gf", gf0, "--action", "volume"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "1/2*sqrt(2)");

    let gf2 = r#"{"schema":1,"gamma":[[1],[-1]],"f":[0,2]}"#;
    let (code, stdout, _) = weylsub(&[
        "subgroup", "A1", "--gf", gf2, "--action", "index", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["index"], "2");

    let (code, stdout, _) = weylsub(&[
        "subgroup", "A1", "--gf", gf2, "--action", "cosets", "--lattice", "p", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["count"], 4);
}

#[test]
fn bij_inverse_cross_validates_and_round_trips() {
    let psix = r#"{"schema":1,"psi":[[1],[-1]],"a":["0"],"xprime":[{"kind":"P","m":1}]}"#;
    let (code, stdout, _) = weylsub(&[
        "bij", "A1", "--direction", "inverse", "--psix", psix, "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["f"], serde_json::json!([0, 1]));

    let gf = stdout.trim().to_string();
    let (code, stdout, _) = weylsub(&[
        "bij", "A1", "--direction", "forward", "--gf", &gf, "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["xprime"][0]["kind"], "P");
    assert_eq!(v["xprime"][0]["m"], 1);
}

#[test]
fn identity_command_all_pass() {
    let (code, stdout, _) = weylsub(&[
        "identity", "--type", "A2", "--mmax", "10", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["all_pass"], true);

    let (code, stdout, _) = weylsub(&["identity", "--type", "A1", "--mmax", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["all_pass"], true);
}

#[test]
fn diagram_renders() {
    let (code, stdout, _) = weylsub(&["diagram", "B3xG2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "o---o=2=o\no=3=o");
}

#[test]
fn psix_converts_for_gf_actions() {
    // Volume of a subgroup given on the (Ψ, X) side goes through the inverse
    // bijection first.
    let psix = r#"{"schema":1,"psi":[[1],[-1]],"a":["0"],"xprime":[{"kind":"P","m":2}]}"#;
    let (code, stdout, _) = weylsub(&["subgroup", "A1", "--psix", psix, "--action", "volume"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "1*sqrt(2)");
}

#[test]
fn lattice_flag_accepts_documented_spellings() {
    for spelling in ["P", "p", "Pdual", "pdual"] {
        let (code, _, _) = weylsub(&[
            "identity", "--type", "B2", "--lattice", spelling, "--mmax", "2",
        ]);
        assert_eq!(code, 0, "spelling {spelling}");
    }
    let gf = r#"{"schema":1,"gamma":[[1],[-1]],"f":[0,1]}"#;
    for spelling in ["Q", "q", "P", "p"] {
        let (code, _, _) = weylsub(&[
            "subgroup", "A1", "--gf", gf, "--action", "cosets", "--lattice", spelling,
        ]);
        assert_eq!(code, 0, "spelling {spelling}");
    }
}

#[test]
fn classify_certified_against_oracle() {
    let (code, stdout, _) = weylsub(&["classify", "B3", "--certify", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 13);
}

#[test]
fn classify_decomposable_type() {
    let (code, stdout, _) = weylsub(&["classify", "A1xA1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    // The two A1 factors are non-conjugate classes of the same type.
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
}

#[test]
fn byte_identical_output_across_runs() {
    for args in [
        vec!["classify", "B2", "--format", "json"],
        vec!["identity", "--type", "G2", "--mmax", "5", "--format", "json"],
    ] {
        let (_, a, _) = weylsub(&args);
        let (_, b, _) = weylsub(&args);
        assert_eq!(a, b, "non-deterministic output for {args:?}");
    }
}
