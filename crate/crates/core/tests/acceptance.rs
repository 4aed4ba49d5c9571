//! Acceptance criteria 1-10, one test each. Every test prints a single
//! `[PASS]`/`[FAIL]` line (run with `--nocapture` to see them).

use std::process::{Command, Stdio};

use rindler_noise::validation::{self, CriterionReport, StateLog};

fn check(report: CriterionReport) {
    println!("{report}");
    assert!(report.passed, "criterion {} failed", report.id);
}

/// States from criteria 1-8, regenerated for criterion 9.
fn full_log() -> StateLog {
    let mut log = StateLog::default();
    validation::criterion_1(&mut log).unwrap();
    validation::criterion_3(&mut log).unwrap();
    validation::criterion_4(&mut log).unwrap();
    validation::criterion_5(&mut log).unwrap();
    validation::criterion_6(&mut log).unwrap();
    validation::criterion_7(&mut log).unwrap();
    validation::criterion_8(&mut log).unwrap();
    log
}

#[test]
fn criterion_01_unruh_oracle_equivalence() {
    check(validation::criterion_1(&mut StateLog::default()).unwrap());
}

#[test]
fn criterion_02_kraus_completeness() {
    check(validation::criterion_2().unwrap());
}

#[test]
fn criterion_03_closed_form_vs_oracle() {
    check(validation::criterion_3(&mut StateLog::default()).unwrap());
}

#[test]
fn criterion_04_inertial_memoryless_reduction() {
    check(validation::criterion_4(&mut StateLog::default()).unwrap());
}

#[test]
fn criterion_05_no_esd_depolarizing_with_memory() {
    check(validation::criterion_5(&mut StateLog::default()).unwrap());
}

#[test]
fn criterion_06_esd_avoidance_threshold() {
    check(validation::criterion_6(&mut StateLog::default()).unwrap());
}

#[test]
fn criterion_07_bit_flip_extremum_and_rebound() {
    check(validation::criterion_7(&mut StateLog::default()).unwrap());
}

#[test]
fn criterion_08_unruh_monotonicity() {
    check(validation::criterion_8(&mut StateLog::default()).unwrap());
}

#[test]
fn criterion_09_method_agreement() {
    check(validation::criterion_9(&full_log()).unwrap());
}

#[test]
fn criterion_10_determinism() {
    let in_process = validation::criterion_10().unwrap();

    // Same check through the binary, writing to disk.
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_rindler-noise"))
            .args(["figure", "fig1", "--format", "csv", "--out"])
            .arg(&path)
            .stderr(Stdio::null())
            .status()
            .unwrap();
        assert!(status.success(), "figure fig1 exited with {status}");
        std::fs::read(path).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    let cli_same = !a.is_empty() && a == b;
    check(CriterionReport {
        passed: in_process.passed && cli_same,
        detail: format!(
            "{}; CLI `figure fig1` twice, {} bytes, identical: {cli_same}",
            in_process.detail,
            a.len()
        ),
        ..in_process
    });
}
