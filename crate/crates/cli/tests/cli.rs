use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qcoherence"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).env_remove("QCOHERENCE_NMAX").output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn gen_first_polynomial() {
    let (code, out, _) = run(&["gen", "--family", "L", "--a", "2/1", "--b", "3/1", "--c", "0/1", "--q", "1/2", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)[1], serde_json::json!(["-5/1", "1/1"]));
}

#[test]
fn gen_csv_lists_recurrence() {
    let (code, out, _) = run(&[
        "gen", "--family", "L", "--a", "2", "--b", "3", "--c", "0", "--q", "1/2", "--n", "2", "--output", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,beta,gamma");
    // beta_n = 5 (1/2)^n, gamma_1 = -6 (1 - 1/2)
    assert_eq!(lines[1], "0,5/1,");
    assert_eq!(lines[2], "1,5/2,-3/1");
}

#[test]
fn n_max_from_environment() {
    let out = bin()
        .args(["gen", "--family", "LittleQLaguerre", "--a", "1/3", "--q", "1/2"])
        .env("QCOHERENCE_NMAX", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(std::str::from_utf8(&out.stdout).unwrap()).as_array().unwrap().len(), 4);
}

#[test]
fn moments_start_at_one() {
    let (code, out, _) = run(&["moments", "--family", "L", "--a", "2", "--b", "3", "--c", "0", "--q", "1/2", "--order", "4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["moments"][0], "1/1");
    // m_1 = beta_0
    assert_eq!(v["moments"][1], "5/1");
    assert_eq!(v["moments"].as_array().unwrap().len(), 5);
}

#[test]
fn reduction_round_trip_exits_zero() {
    let (code, out, _) = run(&["verify", "reduction", "--identity", "asc-roundtrip", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn classify_case_one() {
    let (code, out, _) = run(&["classify", "--pi", "1", "--beta0", "5", "--gamma1", "-3", "--q", "1/2", "--omega", "0"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["case"], "I");
    assert_eq!(v["family"], "L");
    assert_eq!(v["params"], serde_json::json!(["2/1", "3/1", "0/1"]));
}

#[test]
fn classify_degenerate_reports_error_name() {
    // pi = x - w0 + c with c + beta0 = w0
    let (code, _, err) = run(&["classify", "--pi=-4,1", "--beta0", "4", "--gamma1", "2", "--q", "1/2"]);
    assert_eq!(code, 1);
    assert_eq!(json(&err)["error"], "DegenerateInput");
}

#[test]
fn pearson_from_recurrence_and_family() {
    // Case I functional: phi = 1, psi = -(q / gamma1)(x - beta0)
    let (code, out, _) = run(&["verify", "pearson", "--phi", "1", "--psi", "-5/6,1/6", "--q", "1/2"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = run(&[
        "verify", "pearson", "--family", "L", "--a", "2", "--b", "3", "--c", "0", "--phi", "1", "--psi", "-5/6,1/6",
        "--q", "1/2",
    ]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&[
        "verify", "pearson", "--family", "L", "--a", "2", "--b", "3", "--c", "0", "--phi", "1", "--psi", "-1,1/6",
        "--q", "1/2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["reports"][0]["status"], "fails");
}

#[test]
fn structure_and_coherence_of_case_two_pair() {
    let common = [
        "--family", "L", "--a", "2", "--b", "3", "--c", "5", "--q", "1/2", "--omega", "1/3", "--offset-omega0",
        "--pi=-46/15,1",
    ];
    let mut args = vec!["verify", "structure"];
    args.extend(common);
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert!(json(&out)["detail"]["first_violation"].is_null());
    let mut args = vec!["verify", "coherence", "--order", "16"];
    args.extend(common);
    let (code, out, _) = run(&args);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn unrelated_pair_is_not_coherent() {
    let other = r#"{"family":"J","params":["1/1","5/1","3/1","1/7"],"base":"1/2","scale":"1/1","offset":"0/1"}"#;
    let (code, out, _) = run(&[
        "verify", "structure", "--family", "L", "--a", "2", "--b", "3", "--c", "0", "--q", "1/2", "--other", other, "--n",
        "4",
    ]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["holds"], false);
}

#[test]
fn leibniz_with_seeded_multiplier() {
    let (code, out, _) = run(&[
        "verify", "leibniz", "--family", "J", "--a", "1", "--b", "5", "--c", "3", "--d", "1/7", "--q", "2/3", "--omega",
        "1/5", "--seed", "3", "--power", "4",
    ]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "reduction", "--identity", "big-q-jacobi", "--seed", "11", "--points", "3"][..],
        &["verify", "leibniz", "--family", "L", "--a", "2", "--b", "3", "--c", "5", "--q", "1/2", "--seed", "5"][..],
        &["classify", "--pi", "3,-4,1", "--beta0", "-3", "--gamma1", "24", "--q", "1/2"][..],
    ] {
        let first = bin().args(args).output().unwrap();
        let second = bin().args(args).output().unwrap();
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["gen", "--family", "L", "--q", "1/2"]).0, 2);
    assert_eq!(run(&["gen", "--family", "L", "--a", "x", "--b", "1", "--c", "0", "--q", "1/2"]).0, 2);
    assert_eq!(run(&["verify", "reduction", "--identity", "no-such"]).0, 2);
    // library failure carries its name
    let (code, _, err) = run(&["gen", "--family", "L", "--a", "1", "--b", "3", "--c", "2", "--q", "1/2", "--n", "3"]);
    assert_eq!(code, 1);
    assert_eq!(json(&err)["error"], "RegularityViolation");
    assert_eq!(run(&["--help"]).0, 0);
}
