//! End-to-end checks of the binary: exit codes and report shape.

use std::process::Command;

fn locapn(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_locapn"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn spectrum_raw_mode_emits_json() {
    let out = locapn(&["spectrum", "--n", "4", "--d", "7"]);
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["n"], 4);
    assert_eq!(v["d"], 7);
    assert_eq!(v["modulus"], "0x13");
    assert_eq!(v["locally_apn"], true);
    // omega_0 = 9, omega_2 = 6, omega_4 = 1 serialized as sorted pairs
    assert_eq!(
        v["diff"]["omega"],
        serde_json::json!([[0, 9], [2, 6], [4, 1]])
    );
    assert!(v["niho"].is_null());
}

#[test]
fn spectrum_niho_mode_checks_closed_forms() {
    let out = locapn(&["spectrum", "--m", "3", "--k", "2"]);
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["niho"]["s"], 2);
    assert_eq!(v["niho"]["d"], 15);
    assert_eq!(v["prediction"]["match_ds"], true);
    assert_eq!(v["prediction"]["match_bs"], true);
}

#[test]
fn spectrum_csv_format() {
    let out = locapn(&["spectrum", "--n", "4", "--d", "7", "--format", "csv"]);
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("kind,value,count\n"), "{text}");
    assert!(text.contains("diff,4,1"), "{text}");
    assert!(text.contains("boom,6,2"), "{text}");
}

#[test]
fn boomerang_is_an_alias_for_spectrum() {
    let a = locapn(&["spectrum", "--n", "6", "--d", "15"]);
    let b = locapn(&["boomerang", "--n", "6", "--d", "15"]);
    assert!(a.status.success() && b.status.success());
    let va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(va["boom"], vb["boom"]);
}

#[test]
fn usage_errors_exit_2_with_json_on_stderr() {
    // mixing raw and Niho selectors
    let out = locapn(&["spectrum", "--n", "4", "--d", "7", "--m", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(v["error"].is_string());

    // invalid Niho parameters (gcd(2^1 + 1, 2^3 + 1) = 3)
    let out = locapn(&["spectrum", "--m", "3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    // reducible modulus override: x^4 + 1 = (x + 1)^4
    let out = locapn(&["spectrum", "--n", "4", "--d", "7", "--modulus", "0x11"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    // slow survey sizes need the opt-in flag
    let out = locapn(&["survey", "--m", "9"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn lemmas_run_exits_clean_and_reports_tallies() {
    let out = locapn(&["lemmas", "--seed", "7", "--samples", "50"]);
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total_failures"], 0);
    assert_eq!(v["vacuous"], false);
    assert_eq!(v["tallies"]["lemma4/n=10"]["cases"], 50);
    assert_eq!(v["manifest"]["seed"], 7);

    let out = locapn(&["lemmas", "--samples", "0", "--only", "lemma4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vacuous"], true);
}

#[test]
fn verify_grid_exits_zero_on_match() {
    let out = locapn(&["verify", "--max-m", "3"]);
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("m = 2, k = 1: diff ok boom ok"), "{text}");
}

#[test]
fn survey_writes_json_and_csv() {
    let dir = std::env::temp_dir().join(format!("locapn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = locapn(&["survey", "--m", "3", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let json: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join("survey_m3.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(json["covered"], true);
    let csv = std::fs::read_to_string(dir.join("survey_m3.csv")).unwrap();
    assert!(csv.starts_with("s,d,delta,locally_apn,in_theorem_orbit"));
    assert_eq!(csv.lines().count(), 9); // header + s in [1, 8]
    std::fs::remove_dir_all(&dir).unwrap();
}
