use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use uav_hitch::{Eligibility, HitchPlan};

fn uavhitch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uavhitch"))
        .args(args)
        .env_remove("UAVHITCH_SEED")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = uavhitch(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn slow_vehicle_is_rejected() {
    let out = ok(&[
        "plan", "--x", "5", "--u", "60", "--v", "12", "--gamma", "0", "--theta", "0.3", "--omega",
        "0.8",
    ]);
    assert!(out.contains("eligible         no (SpeedTooLow)"), "{out}");
    assert!(out.contains("saving           0\n"), "{out}");
}

#[test]
fn pure_energy_weight_rides_to_the_perpendicular_foot() {
    let v = json(&[
        "plan", "--x", "5", "--v", "40", "--omega", "1", "--gamma", "0", "--theta", "0.4",
        "--format", "json",
    ]);
    let y = v["plan"]["y_star"].as_f64().unwrap();
    assert!((y - 5.0 * 0.4f64.cos()).abs() < 1e-12, "{y}");
}

#[test]
fn just_inside_the_threshold_saves_nothing() {
    let phi = (-0.06f64).acos();
    let theta = format!("{}", phi - 0.5e-9);
    let v = json(&[
        "plan", "--x", "5", "--v", "40", "--gamma", "0.3", "--theta", &theta, "--format", "json",
    ]);
    assert!(v["plan"]["y_star"].as_f64().unwrap() < 1e-6);
    assert!(v["plan"]["saving"].as_f64().unwrap() < 1e-9);
}

#[test]
fn plan_json_reparses() {
    let text = ok(&[
        "plan",
        "--x",
        "8",
        "--v",
        "40",
        "--gamma",
        "0.3",
        "--theta",
        "25",
        "--degrees",
        "--deadline",
        "0.2",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let plan: HitchPlan = serde_json::from_value(v["plan"].clone()).unwrap();
    let elig: Eligibility = serde_json::from_value(v["eligibility"].clone()).unwrap();
    assert!(elig.eligible);
    assert!(plan.saving > 0.0);

    let radians = format!("{}", 25f64.to_radians());
    let same = json(&[
        "plan",
        "--x",
        "8",
        "--v",
        "40",
        "--gamma",
        "0.3",
        "--theta",
        &radians,
        "--deadline",
        "0.2",
        "--format",
        "json",
    ]);
    assert_eq!(same, v);
}

#[test]
fn swap_vehicle_plan() {
    let v = json(&[
        "plan", "--x", "8", "--v", "40", "--gamma", "inf", "--theta", "2.5", "--format", "json",
    ]);
    assert!(v["eligibility"].is_null());
    assert_eq!(v["plan"]["departs_after_swap"], Value::Bool(true));
}

#[test]
fn invalid_parameters_exit_2() {
    for args in [
        &["plan", "--x", "-1", "--v", "40", "--theta", "0"][..],
        &["plan", "--x", "5", "--v", "40", "--theta", "4"],
        &[
            "plan", "--x", "5", "--v", "40", "--theta", "0", "--omega", "1.5",
        ],
        &[
            "plan", "--x", "5", "--v", "40", "--theta", "0", "--gamma", "2", "--omega", "0.9",
        ],
        &["plan", "--x", "5"],
        &["sweep", "--kind", "speed", "--v-grid", "10:1:5"],
        &["simulate", "--case", "3", "--trials", "1"],
        &["simulate", "--trials", "0"],
        &["validate", "/nonexistent/scenario.json"],
    ] {
        let out = uavhitch(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = uavhitch(&["plan", "--x", "-1", "--v", "40", "--theta", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid x"));
}

const EMPTY: &str = r#"{"config": {"omega": 0.8}, "uavs": [], "vehicles": [], "theta": []}"#;

// UAV 0 gains most on vehicle 0 but can also use vehicle 1; UAV 1 can only use vehicle 0.
const TRAP: &str = r#"{
  "config": {"omega": 0.8},
  "uavs": [{"x": 10, "u": 60}, {"x": 5, "u": 60}],
  "vehicles": [{"v": 40, "gamma": 0.3}, {"v": 40, "gamma": 0.3}],
  "theta": [[0.0, 0.1], [0.0, 3.0]]
}"#;

#[test]
fn empty_scenario_matches_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "empty.json", EMPTY);
    for solver in ["msa", "greedy", "brute"] {
        let v = json(&["match", &path, "--solver", solver, "--format", "json"]);
        assert_eq!(v["total_saving"].as_f64(), Some(0.0));
        assert_eq!(v["assignment"], Value::Array(vec![]));
    }
}

#[test]
fn optimal_matching_beats_greedy_on_trap() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "trap.json", TRAP);
    let msa = json(&["match", &path, "--format", "json"]);
    let greedy = json(&["match", &path, "--solver", "greedy", "--format", "json"]);
    let brute = json(&["match", &path, "--solver", "brute", "--format", "json"]);
    assert_eq!(msa["assignment"], serde_json::json!([1, 0]));
    assert_eq!(greedy["assignment"], serde_json::json!([0, null]));
    assert_eq!(msa["duals_verified"], Value::Bool(true));
    let total = |v: &Value| v["total_saving"].as_f64().unwrap();
    assert!(total(&msa) > total(&greedy));
    assert!((total(&msa) - total(&brute)).abs() < 1e-12);

    let human = ok(&["match", &path]);
    assert!(human.contains("uav 0 -> vehicle 1"), "{human}");
    assert!(human.contains("certificate   verified"), "{human}");
}

#[test]
fn brute_force_refuses_large_instances() {
    let vehicles = [r#"{"v": 40, "gamma": 0.3}"#; 9].join(",");
    let theta = ["0.1"; 9].join(",");
    let text = format!(
        r#"{{"config": {{"omega": 0.8}}, "uavs": [{{"x": 5, "u": 60}}], "vehicles": [{vehicles}], "theta": [[{theta}]]}}"#
    );
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "big.json", &text);
    let out = uavhitch(&["match", &path, "--solver", "brute"]);
    assert_eq!(out.status.code(), Some(3));
    ok(&["match", &path]);
}

#[test]
fn emitted_scenarios_validate_and_solvers_agree() {
    let dir = tempfile::tempdir().unwrap();
    let scen = dir.path().join("scen");
    let scen_s = scen.to_str().unwrap();
    ok(&[
        "simulate",
        "--case",
        "2",
        "--uavs",
        "3,5",
        "--vehicles",
        "4",
        "--trials",
        "4",
        "--emit-scenarios",
        scen_s,
    ]);
    let mut files: Vec<_> = fs::read_dir(&scen)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), 8);
    let names: Vec<&str> = files.iter().map(|p| p.to_str().unwrap()).collect();
    let mut args = vec!["validate"];
    args.extend(&names);
    let out = ok(&args);
    assert_eq!(out.lines().count(), 8);
    for f in &names {
        let msa = json(&["match", f, "--format", "json"]);
        let brute = json(&["match", f, "--solver", "brute", "--format", "json"]);
        let (a, b) = (
            msa["total_saving"].as_f64().unwrap(),
            brute["total_saving"].as_f64().unwrap(),
        );
        assert!((a - b).abs() <= 1e-9, "{f}: {a} vs {b}");
    }
}

#[test]
fn validate_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = write(
        dir.path(),
        "ragged.json",
        r#"{"config": {"omega": 0.8}, "uavs": [{"x": 5, "u": 60}], "vehicles": [{"v": 40, "gamma": 0}], "theta": [[0.1, 0.2]]}"#,
    );
    let junk = write(dir.path(), "junk.json", "{ not json");
    let good = write(dir.path(), "good.json", TRAP);
    for f in [&ragged, &junk] {
        assert_eq!(uavhitch(&["validate", &good, f]).status.code(), Some(2));
        assert_eq!(uavhitch(&["match", f]).status.code(), Some(2));
    }
}

#[test]
fn simulation_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| {
        let path = dir.path().join(name);
        let mut args = vec![
            "simulate",
            "--case",
            "1",
            "--uavs",
            "5,10,20",
            "--vehicles",
            "20",
            "--trials",
            "100",
            "--seed",
            "7",
            "--output",
            path.to_str().unwrap(),
        ];
        args.extend(extra);
        ok(&args);
        fs::read(path).unwrap()
    };
    let a = run("a.csv", &[]);
    assert_eq!(a, run("b.csv", &[]));
    assert_eq!(a, run("c.csv", &["--threads", "1"]));
    assert_eq!(a, run("d.csv", &["--threads", "4"]));
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("uav_count,n_trials,mean_direct,mean_greedy,mean_msa,std_msa,mean_saving_msa,mean_saving_greedy,mean_iterations\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn seed_comes_from_environment() {
    let args = [
        "simulate",
        "--uavs",
        "4",
        "--vehicles",
        "5",
        "--trials",
        "3",
    ];
    let with_env = |seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_uavhitch"))
            .args(args)
            .env("UAVHITCH_SEED", seed)
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let mut flagged = args.to_vec();
    flagged.extend(["--seed", "9"]);
    assert_eq!(with_env("9"), ok(&flagged).into_bytes());
    assert_ne!(with_env("9"), with_env("10"));
    let mut default = args.to_vec();
    default.extend(["--seed", "42"]);
    assert_eq!(ok(&args), ok(&default));
}

#[test]
fn simulate_accepts_parameter_file() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(
        dir.path(),
        "params.json",
        r#"{"n_uavs": 0, "n_vehicles": 6, "theta_range": [0, 1.0], "x_max": 10, "u": 60, "v": 40,
            "gamma": 0.3, "omega": 0.8, "deadline": {"slack": {"kappa": 1.5}},
            "capacity": {"uniform": {"min": 1, "max": 2}}}"#,
    );
    let out = ok(&[
        "simulate", "--params", &params, "--uavs", "4,8", "--trials", "5",
    ]);
    assert_eq!(out.lines().count(), 3);
    let bad = write(dir.path(), "bad.json", r#"{"n_uavs": 0, "bogus": 1}"#);
    assert_eq!(
        uavhitch(&["simulate", "--params", &bad]).status.code(),
        Some(2)
    );
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn speed_sweep_crosses_baseline_at_twelve() {
    let out = ok(&[
        "sweep", "--kind", "speed", "--x", "5", "--omega", "0.8", "--u", "60",
    ]);
    assert!(out.starts_with("v,value\n"));
    let baseline = 5.0 / 60.0;
    for r in rows(&out) {
        if r[0] <= 12.0 {
            assert_eq!(r[1], baseline, "{r:?}");
        } else {
            assert!(r[1] < baseline, "{r:?}");
        }
    }
}

/// Optimal consumption for `theta = 0` by golden-section search over the
/// rides that meet the deadline.
fn surface_reference(x: f64, u: f64, omega: f64, v: f64, gamma: f64, d: f64) -> f64 {
    let time = |y: f64| y / v + (x - y).abs() / u;
    let cost = |y: f64| {
        let flight = (x - y).abs() / u;
        omega * (flight - gamma * y / v) + (1.0 - omega) * (y / v + flight)
    };
    let (mut lo, mut hi) = (0.0, v * d);
    if time(hi) > d {
        let mut a = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (a + hi);
            if time(mid) <= d {
                a = mid;
            } else {
                hi = mid;
            }
        }
        hi = a;
    }
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let top = hi;
    for _ in 0..300 {
        let c = hi - g * (hi - lo);
        let e = lo + g * (hi - lo);
        if cost(c) < cost(e) {
            hi = e;
        } else {
            lo = c;
        }
    }
    cost(0.5 * (lo + hi)).min(cost(0.0)).min(cost(top))
}

#[test]
fn surface_sweep_matches_direct_evaluation() {
    let out = ok(&[
        "sweep",
        "--kind",
        "surface",
        "--x",
        "5",
        "--u",
        "60",
        "--omega",
        "0.8",
        "--deadline",
        "0.125",
    ]);
    assert!(out.starts_with("v,gamma,value\n"));
    let table = rows(&out);
    assert_eq!(table.len(), 61 * 11);
    for k in 0..10 {
        let r = &table[(k * 67) % table.len()];
        let expected = surface_reference(5.0, 60.0, 0.8, r[0], r[1], 0.125);
        assert!((r[2] - expected).abs() <= 1e-9, "{r:?} vs {expected}");
    }
}

#[test]
fn other_sweeps_write_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gamma.csv");
    ok(&[
        "sweep",
        "--kind",
        "gamma",
        "--gamma-grid",
        "0:0.5:6",
        "-o",
        path.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("gamma,value\n"));
    assert_eq!(text.lines().count(), 7);
    let out = ok(&["sweep", "--kind", "battery", "--headroom-grid", "0:0.05:11"]);
    assert!(out.starts_with("headroom,value\n"));
    assert_eq!(out.lines().count(), 12);
}
