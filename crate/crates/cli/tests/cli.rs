//! Command-line behaviour: exit codes, determinism, output contracts.

use ndt_core::rational::{parse_rational, rat, Rational};
use num_traits::Signed;
use std::process::{Command, Output};

fn ndtlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ndtlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = ndtlab(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8")
}

#[test]
fn usage_errors_exit_with_code_two() {
    for args in [
        vec!["bounds", "--K", "2", "--M", "4", "--mu", "2", "--alpha", "1"],
        vec!["bounds", "--K", "2", "--M", "4", "--mu", "1/2", "--alpha", "3/2"],
        vec!["bounds", "--K", "2", "--M", "4", "--N", "5", "--mu", "1/2", "--alpha", "1"],
        vec!["regions", "--K", "2", "--mu-step", "1/10", "--m-max", "0"],
        vec!["regions", "--K", "2", "--mu-step", "0", "--m-max", "5"],
        vec!["schedule", "--K", "2", "--M", "4", "--mu", "1/3", "--alpha", "1"],
        vec!["simulate", "--alpha", "1/2", "--snr", "1e4", "--trials", "10"],
        vec!["simulate", "--alpha", "1/2", "--snr", "1e8,1e6,1e4", "--trials", "10"],
        vec!["sweep", "--K", "2", "--M", "2"], // missing --alpha
        vec![
            "schedule", "--K", "2", "--M", "2", "--mu", "1/2", "--alpha", "1", "--demand",
            "1,2,3",
        ],
    ] {
        let out = ndtlab(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {:?}: status {:?} stderr {}",
            args,
            out.status,
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn failed_slope_checks_exit_with_code_one() {
    let out = ndtlab(&[
        "simulate",
        "--alpha",
        "1/2",
        "--trials",
        "200",
        "--seed",
        "5",
        "--tol-desired",
        "0.0000000001",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let body: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("simulate still emits JSON");
    assert_eq!(body["outputs"]["all_pass"], serde_json::json!(false));
}

#[test]
fn outputs_are_byte_deterministic() {
    let args_list: Vec<Vec<&str>> = vec![
        vec!["sweep", "--K", "2", "--M", "4", "--alpha", "1", "--mu-grid", "1/8"],
        vec!["bounds", "--K", "3", "--M", "2", "--mu", "1/2", "--alpha", "1/2"],
        vec!["regions", "--K", "2", "--mu-step", "1/20", "--m-max", "8"],
        vec!["simulate", "--alpha", "1/2", "--trials", "300", "--seed", "9"],
        vec!["schedule", "--K", "2", "--M", "4", "--mu", "1/2", "--alpha", "1"],
    ];
    for args in args_list {
        let first = stdout_of(&args);
        let second = stdout_of(&args);
        assert_eq!(first, second, "non-deterministic output for {:?}", args);
    }
}

#[test]
fn bounds_reports_unicast_value_at_zero_cache() {
    let body: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "bounds", "--K", "2", "--M", "4", "--mu", "0", "--alpha", "1/2",
    ]))
    .unwrap();
    assert_eq!(body["outputs"]["optimality"]["lower"]["num"], "6");
    assert_eq!(body["outputs"]["optimality"]["lower"]["den"], "1");
    assert_eq!(body["outputs"]["optimality"]["upper"]["num"], "6");
    assert_eq!(body["outputs"]["optimality"]["optimal"], true);
    assert_eq!(body["schema"], 1);
}

#[test]
fn bounds_one_shot_matches_known_value() {
    let body: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "bounds", "--K", "3", "--M", "2", "--mu", "1/2", "--alpha", "1/2",
    ]))
    .unwrap();
    assert_eq!(body["outputs"]["one_shot"]["value"]["num"], "7");
    assert_eq!(body["outputs"]["one_shot"]["value"]["den"], "3");
    assert_eq!(
        body["outputs"]["one_shot"]["limiting_channel"],
        "interference"
    );
}

#[test]
fn float_shadows_agree_with_exact_values() {
    let body: serde_json::Value = serde_json::from_str(&stdout_of(&[
        "bounds", "--K", "3", "--M", "2", "--mu", "1/2", "--alpha", "1/2",
    ]))
    .unwrap();
    let mut checked = 0usize;
    fn walk(value: &serde_json::Value, checked: &mut usize) {
        if let Some(obj) = value.as_object() {
            if let (Some(num), Some(den), Some(float)) =
                (obj.get("num"), obj.get("den"), obj.get("float"))
            {
                let exact = parse_rational(&format!(
                    "{}/{}",
                    num.as_str().unwrap(),
                    den.as_str().unwrap()
                ))
                .unwrap();
                let shadow = float.as_f64().unwrap();
                let shadow_rat = Rational::from_float(shadow).unwrap();
                if exact != Rational::from_integer(0.into()) {
                    let rel = ((shadow_rat - &exact) / &exact).abs();
                    assert!(rel <= rat(1, 1_000_000_000_000), "shadow off for {}", exact);
                }
                *checked += 1;
            }
            for v in obj.values() {
                walk(v, checked);
            }
        } else if let Some(arr) = value.as_array() {
            for v in arr {
                walk(v, checked);
            }
        }
    }
    walk(&body, &mut checked);
    assert!(checked >= 8, "only {} rational fields found", checked);
}

#[test]
fn sweep_flags_the_optimal_corners() {
    // gap must vanish at mu in {1/2, 3/4, 1}
    let text = stdout_of(&["sweep", "--K", "2", "--M", "4", "--alpha", "1"]);
    let mut optimal_mus = Vec::new();
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields[0] == "corner" && fields[14] == "true" {
            optimal_mus.push(fields[1].to_string());
        }
    }
    for mu in ["1/2", "3/4", "1"] {
        assert!(optimal_mus.contains(&mu.to_string()), "mu={} not optimal", mu);
    }
}

#[test]
fn sweep_includes_requested_envelope_samples() {
    let text = stdout_of(&[
        "sweep", "--K", "3", "--M", "3", "--alpha", "0", "--mu-grid", "1/6",
    ]);
    let sample_rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && l.starts_with("sample"))
        .collect();
    // 1/6, 1/2 and 5/6 are corners of M = 3, so only the strict in-betweens remain
    assert!(sample_rows.iter().any(|l| l.split(',').nth(1) == Some("1/6")));
    assert!(sample_rows.iter().any(|l| l.split(',').nth(1) == Some("5/6")));
}

#[test]
fn regions_map_for_single_terminal_has_no_region_c() {
    let text = stdout_of(&["regions", "--K", "1", "--mu-step", "1/20", "--m-max", "10"]);
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() == 6 {
            assert_ne!(fields[2], "C", "unexpected region C in {}", line);
        }
    }
}

#[test]
fn schedule_writes_file_and_reports_to_stdout() {
    let dir = std::env::temp_dir().join("ndtlab-test-schedule");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("schedule.txt");
    let _ = std::fs::remove_file(&path);
    let out = ndtlab(&[
        "schedule", "--K", "1", "--M", "1", "--mu", "1", "--alpha", "1", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("# verify overall: pass"));
    // K = M + 1 with a full cache delivers at the reference rate
    assert!(stdout.contains("# verify ndt: 1/1 (1)"));
    let file = std::fs::read_to_string(&path).unwrap();
    assert!(file.contains("P2 UE1 dof 1/1"));
    assert!(!file.contains("# verify"));
}

#[test]
fn schedule_accepts_explicit_demands() {
    let out = ndtlab(&[
        "schedule", "--K", "2", "--M", "2", "--N", "5", "--mu", "1/2", "--alpha", "1",
        "--demand", "5,5,1,2",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("# demand: 5,5,1,2"));
    assert!(stdout.contains("# verify overall: pass"));
}

#[test]
fn unwritable_output_path_exits_with_code_three() {
    let out = ndtlab(&[
        "regions", "--K", "2", "--mu-step", "1/10", "--m-max", "4", "--out",
        "/nonexistent-ndtlab-dir/map.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn csv_headers_carry_schema_and_column_docs() {
    for args in [
        vec!["sweep", "--K", "2", "--M", "2", "--alpha", "1"],
        vec!["regions", "--K", "2", "--mu-step", "1/10", "--m-max", "4"],
        vec![
            "bounds", "--K", "2", "--M", "2", "--mu", "1/2", "--alpha", "1", "--format", "csv",
        ],
        vec![
            "simulate", "--alpha", "1/2", "--trials", "100", "--format", "csv",
        ],
    ] {
        let text = stdout_of(&args);
        assert!(text.starts_with("# schema: 1"), "missing schema in {:?}", args);
        assert!(
            text.lines().any(|l| l.starts_with("# columns:")),
            "missing column docs in {:?}",
            args
        );
    }
}
