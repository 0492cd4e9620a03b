use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hbill(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbill"))
        .args(args)
        .output()
        .expect("hbill runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = hbill(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

#[test]
fn classify_collared() {
    let v = json(&["classify", "3", "6", "9", "--format", "json"]);
    assert_eq!(v["kind"], "collared");
    assert_eq!(floats(&v["klein"]), vec![2.0, 3.0]);
    assert!(ok(&["classify", "3", "6", "9"]).contains("kind: collared"));
}

#[test]
fn classify_transverse_foci() {
    let v = json(&["classify", "3", "-3", "6", "--format", "json"]);
    assert_eq!(v["kind"], "transverse");
    assert_eq!(floats(&v["klein"]), vec![-1.0, 2.0]);
    let (r2, r3) = (2f64.sqrt(), 3f64.sqrt());
    for p in v["foci"][1].as_array().unwrap() {
        let p = floats(p);
        assert!(
            close(p[0].abs(), r2, 1e-15) && p[1] == 0.0 && close(p[2].abs(), r3, 1e-15),
            "{p:?}"
        );
    }
}

#[test]
fn bad_table_exits_2() {
    let o = hbill(&["classify", "6", "3", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported table"));
    assert_eq!(hbill(&["classify", "3", "6"]).status.code(), Some(2));
}

#[test]
fn jacobi_reports_region() {
    let v = json(&[
        "jacobi", "3", "-3", "6", "--point", "0,0,1", "--format", "json",
    ]);
    assert_eq!(floats(&v["roots"]), vec![-3.0, 3.0]);
    assert_eq!(v["region"], "B");
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn period_four_orbit_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "orbit.cfg",
        "# period-4 orbit on the transverse table\n\
         table = 3,-3,6\n\
         point = -1,0,1.4142135623730951\n\
         toward = 0,0.5773502691896258,0.816496580927726\n\
         bounces = 8\n",
    );
    let v = json(&["simulate", "--config", &cfg]);
    assert_eq!(v["status"], "complete");
    assert_eq!(v["closure"]["period"], 4);
    assert!(v["closure"]["residual"].as_f64().unwrap() <= 1e-6);
    assert!(close(v["nu"].as_f64().unwrap(), -6.0, 1e-9));
    // The x0 = 0 bounces project to infinity.
    assert!(v["klein"][1].is_null());
    // Command-line flags win over the file.
    let v = json(&["simulate", "--config", &cfg, "--bounces", "3"]);
    assert_eq!(v["states"].as_array().unwrap().len(), 4);
}

#[test]
fn light_like_run_is_tagged() {
    let v = json(&[
        "simulate",
        "3",
        "6",
        "9",
        "--at",
        "0.7",
        "--caustic",
        "inf",
        "--bounces",
        "12",
    ]);
    assert_eq!(v["nu"], "inf");
    for s in v["segments"].as_array().unwrap() {
        assert_eq!(s["class"], "light-like");
        assert_eq!(s["nu"], "inf");
    }
    for s in v["states"].as_array().unwrap() {
        assert_eq!(s["class"], "light-like");
    }
}

#[test]
fn caustic_constant_over_100_bounces() {
    let v = json(&[
        "simulate",
        "3",
        "6",
        "9",
        "--at",
        "0.4",
        "--caustic",
        "-2.5",
        "--bounces",
        "100",
    ]);
    assert_eq!(v["status"], "complete");
    let segs = v["segments"].as_array().unwrap();
    assert_eq!(segs.len(), 100);
    for s in segs {
        assert!(close(s["nu"].as_f64().unwrap(), -2.5, 1e-8), "{}", s["nu"]);
    }
}

#[test]
fn chord_caustic_report() {
    let v = json(&[
        "caustic",
        "3",
        "-3",
        "6",
        "--point=-1,0,1.4142135623730951",
        "--toward",
        "0,0.5773502691896258,0.816496580927726",
        "--format",
        "json",
    ]);
    assert!(close(v["nu"].as_f64().unwrap(), -6.0, 1e-12));
    assert_eq!(v["connectivity"], "time-like");
    assert_eq!(v["class"], "time-like");
}

fn root_nus(v: &Value) -> Vec<f64> {
    v["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["nu"].as_f64().unwrap())
        .collect()
}

#[test]
fn cayley_period_five() {
    let v = json(&["cayley", "3", "6", "9", "--period", "5", "--format", "json"]);
    let nus = root_nus(&v);
    let want = [
        -4.396981399138337,
        2.062241150823308,
        2.999816894724413,
        9.391963482610239,
    ];
    assert_eq!(nus.len(), want.len(), "{nus:?}");
    for (g, w) in nus.iter().zip(want) {
        assert!(close(*g, w, 1e-6), "{nus:?}");
    }
    let first = &v["roots"][0]["verify"];
    assert_eq!(first["closed"], true);
}

#[test]
fn cayley_period_six_lists_degenerate_root() {
    let v = json(&["cayley", "3", "6", "9", "--period", "6", "--format", "json"]);
    assert_eq!(floats(&v["degenerate"]), vec![6.0]);
    assert_eq!(root_nus(&v).len(), 5);
    for r in v["roots"].as_array().unwrap() {
        assert!(r["closed_form_diff"].as_f64().unwrap() <= 1e-9);
    }
}

#[test]
fn cayley_period_four_transverse() {
    let v = json(&[
        "cayley", "3", "-3", "6", "--period", "4", "--format", "json",
    ]);
    let nus = root_nus(&v);
    for (g, w) in nus.iter().zip([-6.0, -2.0, 1.2]) {
        assert!(close(*g, w, 1e-9), "{nus:?}");
    }
    for r in v["roots"].as_array().unwrap() {
        assert_eq!(r["verify"]["closed"], true);
        assert_eq!(r["verify"]["period"], 4);
    }
}

#[test]
fn verify_command() {
    let v = json(&[
        "verify", "3", "-3", "6", "--nu=-6", "--period", "4", "--format", "json",
    ]);
    assert_eq!(v["closed"], true);
    let text = ok(&["verify", "3", "6", "9", "--nu", "1.5", "--period", "4"]);
    assert!(text.contains("no real trajectory"), "{text}");
}

fn simulate_to_file(dir: &Path, args: &[&str]) -> String {
    let out = dir.join("traj.json");
    let out = out.to_str().unwrap().to_string();
    let mut all = vec!["simulate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &out]);
    ok(&all);
    out
}

#[test]
fn aa_twice_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let input = simulate_to_file(
        dir.path(),
        &[
            "3",
            "6",
            "9",
            "--at",
            "0.7",
            "--caustic=-4.396981399138337",
            "--bounces",
            "10",
        ],
    );
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    ok(&["aa", "--input", &input, "--out", once.to_str().unwrap()]);
    ok(&[
        "aa",
        "--input",
        once.to_str().unwrap(),
        "--out",
        twice.to_str().unwrap(),
    ]);
    let a = std::fs::read(&input).unwrap();
    let c = std::fs::read(&twice).unwrap();
    assert_eq!(a, c);
    let mapped: Value = serde_json::from_slice(&std::fs::read(&once).unwrap()).unwrap();
    assert_eq!(mapped["domain"], "exterior");
    assert_eq!(mapped["closure"]["period"], 5);
}

#[test]
fn aa_rejects_transverse() {
    let dir = tempfile::tempdir().unwrap();
    let input = simulate_to_file(
        dir.path(),
        &[
            "3",
            "-3",
            "6",
            "--at",
            "0.3",
            "--caustic=-2",
            "--bounces",
            "4",
        ],
    );
    let o = hbill(&["aa", "--input", &input]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_round_trip_through_export() {
    let dir = tempfile::tempdir().unwrap();
    let input = simulate_to_file(
        dir.path(),
        &[
            "3",
            "6",
            "9",
            "--at",
            "0.3",
            "--caustic",
            "12",
            "--bounces",
            "15",
        ],
    );
    let again = ok(&["export", "--input", &input]);
    assert_eq!(again, std::fs::read_to_string(&input).unwrap());
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let input = simulate_to_file(
        dir.path(),
        &[
            "3",
            "6",
            "9",
            "--at",
            "0.3",
            "--caustic",
            "12",
            "--bounces",
            "5",
        ],
    );
    let csv = ok(&["export", "--input", &input, "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "bounce,x0,x1,x2,xi1,xi2,at_infinity");
    assert_eq!(lines.len(), 7);
    let svg = ok(&["export", "--input", &input, "--format", "svg"]);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn svg_is_deterministic() {
    let args = [
        "simulate",
        "3",
        "-3",
        "6",
        "--point=-1,0,1.4142135623730951",
        "--caustic=-6",
        "--bounces",
        "8",
        "--format",
        "svg",
    ];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    // Bounces at x0 = 0 are drawn as arrows at the edge of the view.
    assert!(a.contains("marker-end=\"url(#arrow)\""));
}

#[test]
fn report_verbs_reject_trajectory_formats() {
    assert_eq!(
        hbill(&["classify", "3", "6", "9", "--format", "svg"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn missing_inputs_exit_2() {
    assert_eq!(
        hbill(&["simulate", "3", "6", "9", "--at", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hbill(&["aa"]).status.code(), Some(2));
    assert_eq!(
        hbill(&["simulate", "3", "6", "9", "--at", "0.5", "--caustic", "1.5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn partial_run_exits_3() {
    // A light-like chord leaving the collar outward never comes back.
    let o = hbill(&[
        "simulate",
        "3",
        "6",
        "9",
        "--at",
        "0",
        "--caustic",
        "inf",
        "--domain",
        "exterior",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["status"],
        "stopped: geodesic never returns to the boundary"
    );
    assert_eq!(v["states"].as_array().unwrap().len(), 1);
}
