//! End-to-end runs of the `ou-kit` binary: the file-based workflow, the
//! verify/replay loop, and the documented exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn ou_kit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ou-kit"))
        .args(args)
        .current_dir(dir)
        .env_remove("OU_KIT_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn build_theta_factorize_decompose_workflow() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    let out = ou_kit(
        &["build-form", "--ring", "int", "--m", "2", "--n", "1", "--out", "form.json",
          "--psi-out", "psi.json"],
        dir,
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(dir.join("form.json").exists());
    assert!(dir.join("psi.json").exists());

    let out = ou_kit(
        &["theta", "--form", "form.json", "--vector", "5,7,11,13", "--out", "theta.json"],
        dir,
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let theta = ou_kit::io::parse_matrix_file(&dir.join("theta.json")).unwrap();
    let z = ou_kit::ring::Ring::integers();
    assert_eq!(*theta.at(0, 1), z.from_i64(11));
    assert_eq!(*theta.at(0, 2), z.from_i64(-7));
    assert_eq!(*theta.at(0, 3), z.from_i64(-13));

    let out = ou_kit(
        &["factorize", "--kind", "theta", "--form", "form.json", "--vector", "5,7,11,13",
          "--out", "word.json"],
        dir,
    );
    assert!(out.status.success(), "{}", stderr(&out));
    match ou_kit::io::parse_word_file(&dir.join("word.json")).unwrap() {
        ou_kit::io::WordFile::Elementary(w) => {
            assert_eq!(w.len(), 3);
            assert_eq!(w.evaluate().unwrap(), theta);
        }
        _ => panic!("expected an elementary word"),
    }

    let out = ou_kit(
        &["preimage", "--side", "row", "--i", "2", "--a", "3", "--form", "form.json"],
        dir,
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0,0,3,0");

    let out = ou_kit(
        &["decompose", "--i", "2", "--j", "3", "--a", "5", "--form", "form.json",
          "--out", "gen.json"],
        dir,
    );
    assert!(out.status.success(), "{}", stderr(&out));
    match ou_kit::io::parse_word_file(&dir.join("gen.json")).unwrap() {
        ou_kit::io::WordFile::Generator(w) => assert_eq!(w.len(), 4),
        _ => panic!("expected a generator word"),
    }
}

#[test]
fn verify_reports_are_deterministic_across_jobs() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let base = [
        "verify", "--ring", "int,twisted", "--checks", "forms,theta-eta", "--trials", "10",
        "--seed", "42", "--m-max", "2", "--n-max", "1",
    ];

    let mut one = base.to_vec();
    one.extend(["--jobs", "1", "--report", "r1.json"]);
    let out = ou_kit(&one, dir);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("PASS"));

    let mut eight = base.to_vec();
    eight.extend(["--jobs", "8", "--report", "r8.json"]);
    let out = ou_kit(&eight, dir);
    assert!(out.status.success(), "{}", stderr(&out));

    let parse_body = |name: &str| -> serde_json::Value {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        doc.as_object_mut().unwrap().remove("body").unwrap()
    };
    assert_eq!(parse_body("r1.json"), parse_body("r8.json"));
}

#[test]
fn fault_injection_fails_and_replays() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let out = ou_kit(
        &["verify", "--ring", "int", "--checks", "forms", "--trials", "5", "--seed", "1",
          "--jobs", "1", "--m-max", "1", "--n-max", "0", "--inject-fault", "psi-sign",
          "--counterexample-out", "ce.json"],
        dir,
    );
    assert_eq!(out.status.code(), Some(1), "fault run must fail: {}", stdout(&out));
    assert!(dir.join("ce.json").exists());

    let out = ou_kit(&["replay", "--counterexample", "ce.json"], dir);
    assert_eq!(out.status.code(), Some(1), "replay must reproduce");
    assert!(stdout(&out).contains("reproduced"));
}

#[test]
fn symplectic_command_verifies_membership() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let z = ou_kit::ring::Ring::integers();
    let phi = ou_kit::matrix::Mat::from_i64_rows(
        &z,
        &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]],
    );
    ou_kit::io::write_matrix_file(&dir.join("phi.json"), &phi).unwrap();

    let out = ou_kit(
        &["symplectic", "--phi", "phi.json", "--vector", "1,2,3", "--verify",
          "--out-lower", "lower.json"],
        dir,
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("lower symplectic: true"));
    assert!(stdout(&out).contains("upper symplectic: true"));
    let lower = ou_kit::io::parse_matrix_file(&dir.join("lower.json")).unwrap();
    assert!(ou_kit::vaserstein::is_symplectic(&phi, &lower).unwrap());
}

#[test]
fn usage_and_data_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    // Unknown subcommand.
    let out = ou_kit(&["frobnicate"], dir);
    assert_eq!(out.status.code(), Some(2));

    // Bad ring descriptor.
    let out = ou_kit(
        &["build-form", "--ring", "gaussian", "--m", "1", "--n", "0", "--out", "x.json"],
        dir,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("descriptor"));

    // Ring mismatch between the session ring and a matrix file header.
    let m7 = ou_kit::ring::Ring::modular(7).unwrap();
    let phi = ou_kit::matrix::Mat::identity(m7, 1);
    ou_kit::io::write_matrix_file(&dir.join("phi7.json"), &phi).unwrap();
    let out = ou_kit(
        &["build-form", "--ring", "int", "--m", "2", "--n", "1", "--phi", "phi7.json",
          "--out", "x.json"],
        dir,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ring mismatch"), "{}", stderr(&out));

    // Malformed element literal in a vector.
    let out = ou_kit(
        &["build-form", "--ring", "int", "--m", "2", "--n", "0", "--out", "form.json"],
        dir,
    );
    assert!(out.status.success());
    let out = ou_kit(
        &["theta", "--form", "form.json", "--vector", "1,2,oops"],
        dir,
    );
    assert_eq!(out.status.code(), Some(2));

    // Quadratic literals parse under quad:-1.
    let out = ou_kit(
        &["build-form", "--ring", "quad:-1", "--m", "1", "--n", "0", "--out", "qform.json"],
        dir,
    );
    assert!(out.status.success());
    let out = ou_kit(&["theta", "--form", "qform.json", "--vector", "2+3w"], dir);
    assert!(out.status.success(), "{}", stderr(&out));
}
