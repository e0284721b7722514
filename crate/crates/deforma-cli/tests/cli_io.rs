//! End-to-end checks of the binary's output formats, reproducibility,
//! atomic file writes, and exit-code contract.

use std::process::{Command, Output};

fn deforma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deforma"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn stdout_of(args: &[&str]) -> String {
    let out = deforma(args);
    assert!(
        out.status.success(),
        "args {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn exit_code(args: &[&str]) -> i32 {
    deforma(args).status.code().expect("no signal")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn wkb_spectrum_table_is_exact() {
    let got = stdout_of(&["spectrum", "--method", "wkb", "--alpha", "1", "--nmax", "3"]);
    assert_eq!(
        got,
        "n,energy,method,param\n0,0.5,wkb,1\n1,1.5,wkb,1\n2,2.5,wkb,1\n3,3.5,wkb,1\n"
    );
}

#[test]
fn dunkl_and_q_spectrum_tables() {
    let got = stdout_of(&["spectrum", "--method", "dunkl", "--D", "1.5", "--nmax", "2"]);
    assert_eq!(
        got,
        "n,energy,method,param\n0,0.75,dunkl,1.5\n1,1.75,dunkl,1.5\n2,2.75,dunkl,1.5\n"
    );
    let got = stdout_of(&["spectrum", "--method", "q", "--q", "2", "--nmax", "1"]);
    assert_eq!(got, "n,energy,method,param\n0,0.5,q,2\n1,1.75,q,2\n");
}

#[test]
fn spectrum_json_schema() {
    let got = stdout_of(&[
        "spectrum", "--method", "wkb", "--alpha", "1", "--nmax", "2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&got).expect("valid JSON");
    assert_eq!(v["meta"]["command"], "spectrum");
    assert_eq!(v["meta"]["method"], "wkb");
    assert_eq!(v["meta"]["param"], 1.0);
    let energy = v["data"]["energy"].as_array().expect("energy column");
    assert_eq!(energy.len(), 3);
    assert_eq!(energy[2], 2.5);
    assert_eq!(v["data"]["n"].as_array().unwrap().len(), 3);
}

#[test]
fn density_profile_is_constant_column() {
    let got = stdout_of(&[
        "profile", "--kind", "density", "--D", "1", "--p", "1", "-L", "5", "-N", "101",
    ]);
    let rows = csv_rows(&got);
    assert_eq!(rows.len(), 101);
    assert!(got.starts_with("xi,rho\n"));
    for row in &rows {
        assert_eq!(row[1], rows[0][1], "density must be constant");
    }
    let rho: f64 = rows[0][1].parse().unwrap();
    assert!((rho - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-10);
}

#[test]
fn qp_profile_matches_closed_form() {
    let got = stdout_of(&[
        "profile",
        "--kind",
        "qp",
        "--parity",
        "even",
        "--D",
        "1.5",
        "--r",
        "exp(-x^2/2)",
    ]);
    assert!(got.starts_with("xi,value_re,value_im\n"));
    let rows = csv_rows(&got);
    assert_eq!(rows.len(), 401);
    for row in rows {
        let xi: f64 = row[0].parse().unwrap();
        let v: f64 = row[1].parse().unwrap();
        assert!(xi > 0.0);
        assert!((v - (1.5 - xi * xi) / 2.0).abs() < 1e-5, "QP at {xi}: {v}");
        assert_eq!(row[2], "0");
    }
}

#[test]
fn qp_check_profile_is_near_zero() {
    let got = stdout_of(&[
        "profile",
        "--kind",
        "qp-check",
        "--parity",
        "odd",
        "--D",
        "1.5",
        "--r",
        "x*exp(-x^2/2)",
    ]);
    for row in csv_rows(&got) {
        let v: f64 = row[1].parse().unwrap();
        assert!(v.abs() < 1e-4, "residual at {}: {v}", row[0]);
    }
}

#[test]
fn deriv_point_values() {
    assert_eq!(
        stdout_of(&["deriv", "--op", "q", "--q", "2", "--f", "x^3", "--at", "1"]),
        "5.25\n"
    );
    let caputo: f64 = stdout_of(&[
        "deriv", "--op", "caputo", "--alpha", "0.5", "--f", "x", "--at", "1",
    ])
    .trim()
    .parse()
    .unwrap();
    // Half-order derivative of x at 1 is 1/gamma(1.5) = 2/sqrt(pi).
    assert!((caputo - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-4);
    let dunkl: f64 = stdout_of(&[
        "deriv", "--op", "dunkl", "--D", "1.5", "--f", "x^3", "--at", "1.2",
    ])
    .trim()
    .parse()
    .unwrap();
    assert!((dunkl - 5.04).abs() < 1e-6);
    let one_sided: f64 = stdout_of(&["deriv", "--op", "Q", "--Q", "2", "--f", "x^2", "--at", "1"])
        .trim()
        .parse()
        .unwrap();
    assert!((one_sided - 3.0).abs() < 1e-12);
}

#[test]
fn deriv_grid_mode_and_json() {
    let got = stdout_of(&[
        "deriv", "--op", "q", "--q", "2", "--f", "x^3", "-L", "2", "-N", "5",
    ]);
    assert!(got.starts_with("x,value\n"));
    assert_eq!(got.lines().count(), 6);
    let got = stdout_of(&[
        "deriv", "--op", "q", "--q", "2", "--f", "x^3", "--at", "1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["meta"]["op"], "q");
    assert_eq!(v["meta"]["f"], "x^3");
    assert_eq!(v["data"]["value"][0], 5.25);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let args = [
        "profile",
        "--kind",
        "qp",
        "--parity",
        "even",
        "--D",
        "1.5",
        "--r",
        "exp(-x^2/2)",
        "--format",
        "json",
    ];
    assert_eq!(stdout_of(&args), stdout_of(&args));
    let args = [
        "spectrum", "--method", "numeric", "--alpha", "1", "--nmax", "2", "-N", "120",
    ];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

#[test]
fn output_file_is_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let args = ["spectrum", "--method", "wkb", "--alpha", "1", "--nmax", "3"];
    let on_stdout = stdout_of(&args);
    let mut with_file: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap();
    with_file.extend(["--output", path_str]);
    assert_eq!(exit_code(&with_file), 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), on_stdout);
    // Replacing an existing file works and leaves no temp droppings.
    assert_eq!(exit_code(&with_file), 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), on_stdout);
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(leftovers, vec![std::ffi::OsString::from("table.csv")]);
}

#[test]
fn usage_errors_exit_2() {
    // Missing required parameter for the chosen method.
    assert_eq!(exit_code(&["spectrum", "--method", "q", "--nmax", "1"]), 2);
    assert_eq!(exit_code(&["profile", "--kind", "qp", "--D", "1.5"]), 2);
    // Unknown module filter.
    assert_eq!(exit_code(&["verify", "--only", "nosuch"]), 2);
    // Clap-level violations.
    assert_eq!(exit_code(&["nosuch-command"]), 2);
    assert_eq!(exit_code(&["spectrum", "--method", "warp"]), 2);
    // Degenerate grid.
    assert_eq!(
        exit_code(&["profile", "--kind", "density", "--D", "1", "--p", "1", "-N", "1"]),
        2
    );
}

#[test]
fn numeric_domain_errors_exit_3() {
    // Dimension parameter outside (0, 2).
    assert_eq!(
        exit_code(&["spectrum", "--method", "dunkl", "--D", "3", "--nmax", "1"]),
        3
    );
    // Caputo order outside its range.
    assert_eq!(
        exit_code(&["deriv", "--op", "caputo", "--alpha", "-0.5", "--f", "x", "--at", "1"]),
        3
    );
    // Expression syntax error surfaces as a positioned message.
    let out = deforma(&["deriv", "--op", "q", "--q", "2", "--f", "x^", "--at", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error at byte"));
}

#[test]
fn verify_module_filter() {
    let out = deforma(&["verify", "--only", "qcalc", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().filter(|l| l.starts_with('[')) {
        assert!(line.starts_with("[qcalc"), "unexpected line: {line}");
    }
    assert!(text.contains("seed 7"));
}
