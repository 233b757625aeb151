use std::io::Write;
use std::process::{Command, Stdio};

use loadout::cli::{run, Outcome};
use serde_json::{json, Value};

fn call(args: &[&str]) -> Outcome {
    call_with_input(args, "")
}

fn call_with_input(args: &[&str], input: &str) -> Outcome {
    let argv = std::iter::once("loadout").chain(args.iter().copied());
    run(argv, &mut input.as_bytes())
}

fn parsed(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", out.stdout))
}

const COLLINEAR: &str = r#"{"m":2,"n":3,"A":[["1/4","1/2","3/4"],[1,1,1]],"c":["2","17/8","9/4"]}"#;

#[test]
fn moment_design_matches_table() {
    let out = call(&["design", "--kind", "moment", "--n", "6", "--m", "4"]);
    assert_eq!(out.code, 0);
    let v = parsed(&out);
    assert_eq!(v["kind"], "moment_curve");
    assert_eq!(v["params"]["M"], "1297");
    assert_eq!(v["A"][0], json!(["1", "2", "3", "4", "5", "6"]));
    assert_eq!(v["A"][1], json!(["1296", "1293", "1288", "1281", "1272", "1261"]));
    assert_eq!(v["A"][2], json!(["1", "8", "27", "64", "125", "216"]));
    assert_eq!(v["A"][3], json!(["1296", "1281", "1216", "1041", "672", "1"]));
    assert_eq!(v["c"], json!(["1", "1", "1", "1", "1", "1"]));
}

#[test]
fn bounds_example() {
    let v = parsed(&call(&["bounds", "--n", "5", "--m", "3", "--k", "3"]));
    assert_eq!(v["upper"], 5);
    assert_eq!(v["lower"], 5);
    let v = parsed(&call(&["bounds", "--n", "6", "--m", "4", "--k", "4"]));
    assert_eq!((v["upper"].clone(), v["lower"].clone()), (json!(10), json!("9/4")));
}

#[test]
fn piped_design_equals_file_design() {
    let design = call(&["design", "--kind", "exact_m2", "--n", "4"]);
    assert_eq!(design.code, 0);
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("exact_m2_4.json");
    std::fs::write(&path, &design.stdout).unwrap();

    let args = ["loadouts", "--k", "2", "--mode", "inequality", "--design"];
    let piped = call_with_input(&[&args[..], &["-"]].concat(), &design.stdout);
    let from_file = call(&[&args[..], &[path.to_str().unwrap()]].concat());
    assert_eq!(piped, from_file);
    let v = parsed(&piped);
    assert_eq!(v["count"], 3);
    assert_eq!(v["loadouts"], json!([[1, 2], [2, 3], [3, 4]]));
}

#[test]
fn binary_round_trip_through_a_pipe() {
    let exe = env!("CARGO_BIN_EXE_loadout");
    let design = Command::new(exe).args(["design", "--kind", "exact_m2", "--n", "5"]).output().unwrap();
    assert!(design.status.success());
    let mut child = Command::new(exe)
        .args(["loadouts", "--design", "-", "--k", "2", "--method", "oracle"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&design.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["loadouts"], json!([[1, 2], [2, 3], [3, 4], [4, 5]]));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--kind", "exact_m2", "--n", "6", "--subset", "3,4", "--seed", "9"];
    let (a, b) = (call(&args), call(&args));
    assert_eq!(a.code, 0);
    assert_eq!(a, b);
    assert_eq!(parsed(&a)["confirmed"], true);
}

#[test]
fn usage_errors_exit_2_with_payload() {
    for args in [
        &["loadouts", "--kind", "exact_m2", "--n", "4", "--k", "2", "--bogus"][..],
        &["frobnicate"],
        &["loadouts", "--kind", "exact_m2", "--n", "4"],
        &["loadouts", "--kind", "exact_m2", "--n", "2", "--k", "1"],
        &["loadouts", "--kind", "moment_curve", "--n", "5", "--m", "2", "--t", "3,1,2,4,5", "--k", "1"],
        &["loadouts", "--design", "/nonexistent/design.json", "--k", "1"],
        &["cyclic", "--n", "40", "--m", "6", "--k", "6", "--cap", "1000"],
        &["arrays", "--n", "4", "--k", "1", "--s", "2"],
    ] {
        let out = call(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
        let v = parsed(&out);
        assert!(v["error"].is_string() && v["detail"].is_string(), "{args:?}: {v}");
    }
}

#[test]
fn non_generic_designs_exit_3_with_status() {
    for mode in ["equality", "inequality"] {
        let out = call_with_input(&["loadouts", "--design", "-", "--k", "2", "--mode", mode], COLLINEAR);
        assert_eq!(out.code, 3);
        let v = parsed(&out);
        assert_eq!(v["status"], "non_generic");
        assert_eq!(v["witness"], json!([1, 2, 3]));
    }
}

#[test]
fn uniform_perturbation_shifts_costs() {
    let out = call(&["design", "--kind", "exact_m2", "--n", "3", "--perturb", "1/2"]);
    let v = parsed(&out);
    assert_eq!(v["c"], json!(["3/2", "5/2", "7/2"]));
    assert_eq!(v["params"]["perturbation"], "1/2");
    let reloaded = call_with_input(&["design", "--design", "-"], &out.stdout);
    assert_eq!(reloaded.stdout, out.stdout);
    // The all-ones row absorbs a uniform shift, so the collinear cell survives.
    let out = call_with_input(
        &["loadouts", "--design", "-", "--k", "2", "--mode", "equality", "--perturb", "1/100"],
        COLLINEAR,
    );
    assert_eq!(out.code, 3);
}

#[test]
fn sweep_csv_has_header_and_rows() {
    let out = call(&["sweep", "--kind", "exact_m2", "--n", "3..5", "--k", "2", "--format", "csv", "--jobs", "2"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "n,m,k,kind,lower,achieved,upper,tight,runtime_ms");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("3,2,2,exact_m2,2,2,2,true,"), "{}", lines[1]);
}

#[test]
fn approx_renders_decimals() {
    let args = ["bounds", "--n", "6", "--m", "4", "--k", "4"];
    assert_eq!(parsed(&call(&args))["lower"], "9/4");
    let approx = parsed(&call(&[&args[..], &["--approx"]].concat()));
    assert!(approx["lower"].as_str().unwrap().starts_with("2.25"), "{}", approx["lower"]);
}

#[test]
fn cyclic_and_arrays() {
    let v = parsed(&call(&["cyclic", "--n", "6", "--m", "4", "--parity", "odd"]));
    assert_eq!(v["facets"], json!([[1, 2, 3, 6], [1, 3, 4, 6], [1, 4, 5, 6]]));
    let v = parsed(&call(&["arrays", "--n", "4", "--k", "2", "--s", "0"]));
    assert_eq!(v["count"], 4);
    let v = parsed(&call(&["cyclic", "--n", "7", "--m", "4"]));
    assert_eq!(v["fvector"], json!([7, 21, 28, 14]));
}

#[test]
fn facet_verification() {
    let v = parsed(&call(&["verify", "--kind", "moment_curve", "--n", "6", "--m", "4", "--subset", "1,3,4,6", "--check", "facet"]));
    assert_eq!(v["outcome"], "certified");
    assert_eq!(v["coefficient_sign"], -1);
    let v = parsed(&call(&["verify", "--kind", "moment_curve", "--n", "6", "--m", "4", "--subset", "1,2,4,6", "--check", "facet"]));
    assert_eq!(v["outcome"], "not_a_facet");
}
