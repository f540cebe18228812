//! End-to-end runs of the `mm-toeplitz` binary.

use std::process::{Command, Output};

use mm_toeplitz::report::{self, FsJson, ReportJson};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mm-toeplitz"))
        .env_remove("MM_TOEPLITZ_SEED")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> String {
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    let o = run(&full);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn bounds_sine_starlike() {
    let r: ReportJson =
        serde_json::from_str(&json(&["bounds", "--class", "sine", "--kind", "starlike"])).unwrap();
    assert_eq!(r.class, "sine");
    assert!((r.t22.value - 1.25).abs() < 1e-12);
    assert!((r.t31.value - 3.75).abs() < 1e-12);
    assert!(r.t22.sharp && r.t31.sharp);
}

#[test]
fn bounds_parabolic_convex_flags_t31() {
    let o = run(&["bounds", "--class", "parabolic", "--kind", "convex"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0.2040827"), "{text}");
    assert!(text.contains("hypothesis not satisfied"), "{text}");

    let r: ReportJson = serde_json::from_str(&json(&[
        "bounds",
        "--class",
        "parabolic",
        "--kind",
        "convex",
    ]))
    .unwrap();
    assert!(r.t22.hypothesis_ok);
    assert!(!r.t31.hypothesis_ok && !r.t31.sharp);
    assert!((r.t22.value - 0.204083).abs() < 1e-5);
}

#[test]
fn strict_custom_exits_2() {
    let o = run(&[
        "bounds", "--class", "custom", "--b1", "1", "--b2", "-0.9", "--kind", "starlike",
        "--strict",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "bounds", "--class", "custom", "--b1", "1", "--b2", "-0.9", "--kind", "starlike",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["bounds"][..],
        &["bounds", "--class", "janowski", "--A", "1", "--B", "2"],
        &["bounds", "--class", "custom", "--b1", "-1", "--b2", "0"],
        &["extremal", "--class", "sine", "--order", "2"],
        &["verify", "--class", "sine", "--samples", "0"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("table"));
}

#[test]
fn verify_exp_starlike() {
    let o = run(&[
        "verify",
        "--class",
        "exp",
        "--alpha",
        "0",
        "--kind",
        "starlike",
        "--samples",
        "200000",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("T2(2): bound 1.5625, extremal 1.5625"));

    let r: ReportJson = serde_json::from_str(&json(&[
        "verify",
        "--class",
        "exp",
        "--alpha",
        "0",
        "--kind",
        "starlike",
        "--samples",
        "200000",
        "--seed",
        "7",
    ]))
    .unwrap();
    let o = r.oracle.unwrap();
    assert_eq!(o.t22.status, "PASS");
    assert!((o.t22.bound - 1.5625).abs() < 1e-12);
    assert!(o.t22.sup_estimate >= 1.5615);
    assert_eq!((o.t22.samples, o.t22.seed), (200_000, 7));
}

#[test]
fn verify_custom_is_estimate_only() {
    let o = run(&[
        "verify", "--class", "custom", "--b1", "1", "--b2", "-0.9", "--kind", "starlike",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("estimate only (open case)"));
}

#[test]
fn verify_nephroid_convex() {
    let r: ReportJson = serde_json::from_str(&json(&[
        "verify", "--class", "nephroid", "--kind", "convex",
    ]))
    .unwrap();
    let o = r.oracle.unwrap();
    assert!((o.t31.bound - 14.0 / 9.0).abs() < 1e-12);
    assert_eq!(o.t31.status, "PASS");
}

#[test]
fn verify_small_budget_still_passes() {
    // the distinguished points alone reach the extremal value
    let o = run(&[
        "verify",
        "--class",
        "cardioid",
        "--kind",
        "convex",
        "--samples",
        "1",
        "--polish-steps",
        "0",
        "--tol",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn seed_env_is_the_default() {
    let base = [
        "verify",
        "--class",
        "lune",
        "--kind",
        "convex",
        "--samples",
        "5000",
        "--output",
        "json",
    ];
    let with_env = Command::new(env!("CARGO_BIN_EXE_mm-toeplitz"))
        .env("MM_TOEPLITZ_SEED", "11")
        .args(base)
        .output()
        .unwrap();
    let r: ReportJson = serde_json::from_slice(&with_env.stdout).unwrap();
    assert_eq!(r.oracle.unwrap().t22.seed, 11);

    let mut explicit = base.to_vec();
    explicit.extend(["--seed", "11"]);
    assert_eq!(with_env.stdout, run(&explicit).stdout);
}

#[test]
fn fs_json_matches_closed_form() {
    let text = json(&["fs", "--class", "sine", "--kind", "both", "--mu", "0.5"]);
    let rows: Vec<FsJson> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 2);
    assert!((rows[0].bound - 0.5).abs() < 1e-12);
    assert!((rows[1].bound - 1.0 / 6.0).abs() < 1e-12);
    assert!(rows.iter().all(|r| r.pass));
    assert_eq!(report::to_json(&rows).unwrap(), text);
}

#[test]
fn extremal_json_reports_coefficients() {
    let text = json(&[
        "extremal", "--class", "janowski", "--A", "1", "--B", "-1", "--kind", "starlike",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let s = v.to_string();
    assert!(s.contains("residual"), "{s}");
}

#[test]
fn json_output_round_trips() {
    for args in [
        &["bounds", "--class", "cardioid", "--kind", "both"][..],
        &["bounds", "--class", "limacon", "--kind", "convex"],
        &[
            "bounds",
            "--class",
            "order-alpha",
            "--alpha",
            "0.3",
            "--kind",
            "starlike",
        ],
        &[
            "verify",
            "--class",
            "parabolic",
            "--kind",
            "starlike",
            "--samples",
            "20000",
        ],
    ] {
        let text = json(args);
        let rerendered = match serde_json::from_str::<Vec<ReportJson>>(&text) {
            Ok(v) => report::to_json(&v).unwrap(),
            Err(_) => report::to_json(&serde_json::from_str::<ReportJson>(&text).unwrap()).unwrap(),
        };
        assert_eq!(rerendered, text, "{args:?}");
    }
}

#[test]
fn table_strict_flags_unproven_row() {
    let o = run(&["table", "--strict"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["table", "--output", "human"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("limacon"));
}
