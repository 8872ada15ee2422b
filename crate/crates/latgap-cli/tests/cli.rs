//! End-to-end tests of the installed binary: JSON contracts, exit codes,
//! batch ordering, certificate re-validation.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn write_input(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latgap"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn frobenius_inline_reference_values() {
    let out = run(&["frobenius", "--a", "3,5,7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["frobenius"], 4);
    assert_eq!(v["gap"], "11");
    assert_eq!(v["det"], 7);

    let out = run(&["frobenius", "--a", "3,5"]);
    assert_eq!(stdout_json(&out)["frobenius"], 7);
}

#[test]
fn gap_certificate_round_trips() {
    let path = write_input(
        "gap.json",
        r#"{"kind":"group","basis":[[1,5],[0,7]],"l":["3","5"]}"#,
    );
    let out = run(&["gap", "--input", path.to_str().unwrap(), "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["gap"], "11");
    assert_eq!(v["cosets"], 7);
    assert_eq!(v["verified"], true);
    // The witness must price out to the gap: 3·2 + 5·1 = 11.
    assert_eq!(v["witness_x"], serde_json::json!([2, 1]));
}

#[test]
fn solve_reports_the_cheapest_representative() {
    let path = write_input(
        "solve.json",
        r#"{"kind":"group","basis":[[1,0],[0,3]],"l":["1","1"],"r":[0,2]}"#,
    );
    let out = run(&["solve", "--input", path.to_str().unwrap(), "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["value"], "2");
    assert_eq!(v["minimizer"], serde_json::json!([0, 2]));

    // The oracle subcommand agrees on the same file.
    let out = run(&["oracle", "--input", path.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["value"], "2");
}

#[test]
fn solve_without_r_is_invalid_input() {
    let path = write_input(
        "no-r.json",
        r#"{"kind":"group","basis":[[1,0],[0,3]],"l":["1","1"]}"#,
    );
    let out = run(&["solve", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn relax_emits_bound_and_tight_rhs() {
    let path = write_input(
        "relax.json",
        r#"{"kind":"ip","A":[[3,5,7]],"b":[10],"c":["1","1","1"]}"#,
    );
    let out = run(&[
        "relax",
        "--input",
        path.to_str().unwrap(),
        "--witness",
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["bound"]["bound"], "2");
    assert_eq!(v["bound"]["group_value"], "4/7");
    assert_eq!(v["lp"]["value"], "10/7");
    assert_eq!(v["lp"]["basic"], serde_json::json!([2]));
    assert_eq!(v["lp"]["reduced"], serde_json::json!(["4/7", "2/7"]));
    assert_eq!(v["lp"]["unique"], true);
    assert_eq!(v["witness"]["rhs"], serde_json::json!([9]));
    assert_eq!(v["witness"]["predicted"], "3");

    // The single-row relaxation of a one-row system is the same relaxation.
    let out = run(&["relax", "--input", path.to_str().unwrap(), "--row", "0"]);
    assert_eq!(stdout_json(&out)["bound"]["bound"], "2");

    // And the brute-force oracle confirms both optima.
    let out = run(&["oracle", "--input", path.to_str().unwrap(), "--box", "10"]);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "optimal");
    assert_eq!(v["value"], "2");
    assert_eq!(v["minimizer"], serde_json::json!([0, 2, 0]));
}

#[test]
fn bounds_carry_rounding_tags_and_enclose_the_gap() {
    let path = write_input(
        "bounds.json",
        r#"{"kind":"group","basis":[[1,5],[0,7]],"l":["3","5"]}"#,
    );
    let out = run(&["bounds", "--input", path.to_str().unwrap(), "--with-gap"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["gap"], "11");
    assert_eq!(v["lower_rho"]["rounding"], "down");
    assert_eq!(v["upper"]["rounding"], "up");
    assert!(v["lower_rho"]["value"].as_f64().unwrap() <= 11.0);
    assert!(v["upper"]["value"].as_f64().unwrap() >= 11.0);
}

#[test]
fn cover_check_covers_at_the_covering_radius() {
    let path = write_input(
        "cover.json",
        r#"{"kind":"group","basis":[[1,5],[0,7]],"l":["3","5"]}"#,
    );
    let out = run(&[
        "cover-check",
        "--input",
        path.to_str().unwrap(),
        "--grid-h",
        "1/4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["rho"], "19");
    assert_eq!(v["covered"], true);
    assert_eq!(v["uncovered"], serde_json::json!([]));
}

#[test]
fn malformed_input_exits_two() {
    let path = write_input("broken.json", r#"{"kind":"group","basis":[[1,5]"#);
    let out = run(&["gap", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn degenerate_inputs_exit_two() {
    // Not a primitive coin set.
    let out = run(&["frobenius", "--a", "2,4"]);
    assert_eq!(out.status.code(), Some(2));

    // A float hiding in a rational string.
    let path = write_input(
        "floaty.json",
        r#"{"kind":"group","basis":[[1,0],[0,3]],"l":["1","0.5"]}"#,
    );
    let out = run(&["gap", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // A float hiding in an integer field.
    let path = write_input(
        "floaty2.json",
        r#"{"kind":"group","basis":[[1.5,0],[0,3]],"l":["1","1"]}"#,
    );
    let out = run(&["gap", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Kind does not fit the subcommand.
    let path = write_input(
        "wrongkind.json",
        r#"{"kind":"ip","A":[[3,5,7]],"b":[10],"c":["1","1","1"]}"#,
    );
    let out = run(&["gap", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // A zero reduced cost makes the relaxation non-generic.
    let path = write_input(
        "nongeneric.json",
        r#"{"kind":"ip","A":[[2,4]],"b":[4],"c":["1","2"]}"#,
    );
    let out = run(&["relax", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_limits_exit_three() {
    let path = write_input(
        "big.json",
        r#"{"kind":"group","basis":[[1000,5],[0,2000]],"l":["3","5"]}"#,
    );
    let out = run(&[
        "gap",
        "--input",
        path.to_str().unwrap(),
        "--max-cosets",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn batch_keeps_input_order_and_reports_per_instance_errors() {
    let path = write_input(
        "batch.json",
        r#"[
            {"kind":"frobenius","a":[3,5]},
            {"kind":"frobenius","a":[2,4]},
            {"kind":"frobenius","a":[6,10,15]},
            {"kind":"frobenius","a":[17,19]}
        ]"#,
    );
    let out = run(&["frobenius", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "one bad instance sets the code");
    let v = stdout_json(&out);
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 4);
    assert_eq!(items[0]["frobenius"], 7);
    assert!(items[1]["error"].is_string());
    assert_eq!(items[2]["frobenius"], 29);
    assert_eq!(items[3]["frobenius"], 287);
}

#[test]
fn batch_of_valid_instances_exits_zero() {
    let path = write_input(
        "batch-ok.json",
        r#"[
            {"kind":"group","basis":[[1,0],[0,3]],"l":["1","1"],"r":[0,2]},
            {"kind":"group","basis":[[1,5],[0,7]],"l":["3","5"],"r":[1,0]}
        ]"#,
    );
    let out = run(&["solve", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v[0]["value"], "2");
    assert_eq!(v[1]["value"], "3");
}

#[test]
fn huge_integers_survive_the_json_round_trip() {
    // 2^100 is far beyond both i64 and exact f64 range; the two-coin
    // formula gives frob(2^100, 3) = 3·2^100 − 3 − 2^100 = 2^101 − 3.
    // The modulus is the last entry, so the small coin goes last.
    let big = "1267650600228229401496703205376";
    let path = write_input(
        "huge.json",
        &format!(r#"{{"kind":"frobenius","a":[{big},3]}}"#),
    );
    let out = run(&["frobenius", "--input", path.to_str().unwrap(), "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(
        v["frobenius"].to_string(),
        "2535301200456458802993406410749"
    );
    assert_eq!(v["gap"], "2535301200456458802993406410752");
    assert_eq!(v["det"], 3);
}
