use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rindler-noise"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for cmd in ["sweep", "figure", "concurrence", "esd", "validate"] {
        assert!(text.contains(cmd), "{cmd} missing from help");
    }
}

#[test]
fn bad_arguments_exit_three() {
    for args in [
        &["figure", "fig9"][..],
        &["sweep", "--state", "ghz"],
        &["sweep", "--mu", "0:2:5"],
        &["concurrence", "--p", "1.5"],
        &["concurrence", "--state", "custom:1,1"],
        &["frobnicate"],
        &["figure", "fig4", "--format", "svg", "--out", "/tmp/never-written"],
    ] {
        assert_eq!(run(args).status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn strict_rejects_unphysical_preset() {
    let out = run(&["concurrence", "--state", "general", "--strict"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "concurrence",
        "--state",
        "general",
        "--paper-convention",
        "--method",
        "xform",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn concurrence_point() {
    let out = run(&["concurrence", "--channel", "bf", "--p", "0.25", "--method", "wootters"]);
    assert!(out.status.success());
    // (1 - 2p)^2 for a memoryless bit flip on a Bell pair.
    assert!(
        stdout(&out).contains("single wootters 0.250000000000"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn concurrence_from_physical_acceleration() {
    let out = run(&["concurrence", "--accel", "1e30", "--omega", "1", "--method", "xform"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("single xform 0.707106781187"), "{}", stdout(&out));
}

#[test]
fn esd_reports_boundary() {
    let out = run(&["esd", "--channel", "bf", "--to", "0.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let b: f64 = text
        .trim()
        .strip_prefix("single boundary p = ")
        .unwrap()
        .parse()
        .unwrap();
    assert!((b - 0.5).abs() <= 1e-6, "{text}");
    let out = run(&["esd", "--mu", "0.8", "--r", "0.785398163397448"]);
    assert_eq!(stdout(&out).trim(), "single no boundary");
}

#[test]
fn sweep_to_stdout() {
    let out = run(&[
        "sweep",
        "--channel",
        "dep",
        "--mu",
        "0.5",
        "--p",
        "0:1:3",
        "--r",
        "pi/4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "mu,p,r,channel,state,c_closed,c_oracle,delta");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0.5,0,0.785398163397,dep,bell,"));
}

#[test]
fn figure_both_modes_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("fig3.out");
    let out = run(&[
        "figure",
        "fig3",
        "--format",
        "both",
        "--application",
        "both",
        "--out",
        base.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in [
        "fig3-single.csv",
        "fig3-double.csv",
        "fig3-single.svg",
        "fig3-double.svg",
    ] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    let svg = std::fs::read_to_string(dir.path().join("fig3-single.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 27);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("single dep bell: max delta"));
    assert!(stderr.contains("double dep bell: max delta"));
}

#[test]
fn delta_breach_can_fail_the_run() {
    let args = ["sweep", "--channel", "bf", "--mu", "0", "--p", "0.8", "--r", "0"];
    assert_eq!(run(&args).status.code(), Some(0));
    let mut strict = args.to_vec();
    strict.push("--fail-on-delta");
    assert_eq!(run(&strict).status.code(), Some(2));
}

#[test]
fn validate_reports_every_criterion() {
    let out = run(&["validate"]);
    let text = stdout(&out);
    for id in 1..=10 {
        let prefix = format!("{id} ");
        let found = text
            .lines()
            .any(|l| (l.starts_with("[PASS] ") || l.starts_with("[FAIL] ")) && l[7..].starts_with(&prefix));
        assert!(found, "criterion {id} missing");
    }
    let failed = text.lines().any(|l| l.starts_with("[FAIL]"));
    assert_eq!(out.status.code(), Some(if failed { 2 } else { 0 }));
}
