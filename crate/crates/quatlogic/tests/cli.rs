//! End-to-end tests of the command-line binary: pipelines, exit codes and
//! byte-level determinism of the emitted files.

use std::path::Path;
use std::process::{Command, Output};

use quatlogic::table::QFunction;

fn quatlogic(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatlogic"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn min_qtt() -> String {
    QFunction::tabulate(2, |x| x[0].min(x[1])).unwrap().to_qtt()
}

#[test]
fn synth_lower_verify_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("min.qtt"), min_qtt()).unwrap();

    for form in ["1", "2"] {
        let out = quatlogic(
            dir.path(),
            &["synth", "min.qtt", "--form", form, "-o", "min.qsop"],
        );
        assert!(out.status.success(), "{out:?}");
        let out = quatlogic(
            dir.path(),
            &[
                "lower", "min.qsop", "-o", "min.qnet", "--v1", "2", "--v2", "2",
            ],
        );
        assert!(out.status.success(), "{out:?}");
        assert!(stdout(&out).starts_with("gates "));
        for candidate in ["min.qsop", "min.qnet"] {
            let out = quatlogic(dir.path(), &["verify", candidate, "min.qtt"]);
            assert_eq!(out.status.code(), Some(0), "{out:?}");
            assert_eq!(stdout(&out), "equivalent\n");
        }
    }
}

#[test]
fn verify_mismatch_exits_one_with_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("min.qtt"), min_qtt()).unwrap();
    let max = QFunction::tabulate(2, |x| x[0].max(x[1])).unwrap();
    std::fs::write(dir.path().join("max.qtt"), max.to_qtt()).unwrap();

    quatlogic(
        dir.path(),
        &["synth", "max.qtt", "--form", "1", "-o", "max.qsop"],
    );
    let out = quatlogic(dir.path(), &["verify", "max.qsop", "min.qtt"]);
    assert_eq!(out.status.code(), Some(1));
    // first counterexample in row order: MIN(0,1)=0 but MAX(0,1)=1
    assert_eq!(stdout(&out), "mismatch at 0 1: expected 0, got 1\n");
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.qtt"), "vars x\n").unwrap();
    let out = quatlogic(
        dir.path(),
        &["synth", "bad.qtt", "--form", "1", "-o", "out.qsop"],
    );
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 1"), "{stderr}");

    let out = quatlogic(dir.path(), &["synth", "--form", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let out = quatlogic(dir.path(), &["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("min.qtt"), min_qtt()).unwrap();
    for _ in 0..2 {
        quatlogic(
            dir.path(),
            &["synth", "min.qtt", "--form", "2", "-o", "a.qsop"],
        );
        quatlogic(
            dir.path(),
            &["synth", "min.qtt", "--form", "2", "-o", "b.qsop"],
        );
    }
    let a = std::fs::read(dir.path().join("a.qsop")).unwrap();
    let b = std::fs::read(dir.path().join("b.qsop")).unwrap();
    assert_eq!(a, b);

    quatlogic(dir.path(), &["lower", "a.qsop", "-o", "a.qnet"]);
    quatlogic(dir.path(), &["lower", "a.qsop", "-o", "b.qnet"]);
    let a = std::fs::read(dir.path().join("a.qnet")).unwrap();
    let b = std::fs::read(dir.path().join("b.qnet")).unwrap();
    assert_eq!(a, b);

    let t1 = quatlogic(dir.path(), &["tables"]);
    let t2 = quatlogic(dir.path(), &["tables"]);
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn bounds_report_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = quatlogic(
        dir.path(),
        &[
            "bounds", "--form", "2", "--vars", "2", "--v1", "2", "--v2", "2",
        ],
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "N=71 d=9\n");

    let out = quatlogic(
        dir.path(),
        &[
            "bounds", "--form", "1", "--vars", "2", "--v1", "2", "--v2", "2",
        ],
    );
    assert_eq!(stdout(&out), "N=55 d=7\n");
}

#[test]
fn circuit_and_sim() {
    let dir = tempfile::tempdir().unwrap();
    let out = quatlogic(
        dir.path(),
        &["circuit", "decoder", "--n", "1", "-o", "dec.qnet"],
    );
    assert!(out.status.success(), "{out:?}");
    let out = quatlogic(dir.path(), &["sim", "dec.qnet", "--set", "S=2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "L0=0 L1=0 L2=3 L3=0\n");

    // unbound input is an error, not defaulted
    let out = quatlogic(dir.path(), &["sim", "dec.qnet"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not bound"), "{stderr}");
}

#[test]
fn synth_random_and_worst_case_sources() {
    let dir = tempfile::tempdir().unwrap();
    let out = quatlogic(
        dir.path(),
        &[
            "synth",
            "--random",
            "--vars",
            "2",
            "--seed",
            "7",
            "--form",
            "1",
            "-o",
            "r.qsop",
            "--save-table",
            "r.qtt",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    let saved =
        QFunction::parse_qtt(&std::fs::read_to_string(dir.path().join("r.qtt")).unwrap()).unwrap();
    assert_eq!(saved, QFunction::random(2, 7).unwrap());
    let out = quatlogic(dir.path(), &["verify", "r.qsop", "r.qtt"]);
    assert_eq!(out.status.code(), Some(0));

    let out = quatlogic(
        dir.path(),
        &[
            "synth",
            "--worst-case",
            "--vars",
            "2",
            "--form",
            "2",
            "-o",
            "w.qsop",
        ],
    );
    assert!(out.status.success(), "{out:?}");
    // the checkerboard worst case has 8 + 8 min-terms
    assert_eq!(stdout(&out), "form 2 vars 2 terms 16\n");
}

#[test]
fn tables_layout() {
    let dir = tempfile::tempdir().unwrap();
    let out = quatlogic(dir.path(), &["tables"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    // two operand rows, four unary rows, nine dyadic rows
    assert_eq!(lines.len(), 15);
    assert!(lines[0].starts_with('A'));
    assert!(lines[1].starts_with('B'));
    let not_row: Vec<&str> = lines[2].split_whitespace().collect();
    assert_eq!(
        not_row,
        vec!["NOT", "3", "3", "3", "3", "2", "2", "2", "1", "1", "0"]
    );
    let eq_row: Vec<&str> = lines
        .iter()
        .find(|l| l.starts_with("EQ"))
        .unwrap()
        .split_whitespace()
        .collect();
    assert_eq!(
        eq_row,
        vec!["EQ", "3", "0", "0", "0", "3", "0", "0", "3", "0", "3"]
    );
}

#[test]
fn lower_flag_combinations_stay_equivalent() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("min.qtt"), min_qtt()).unwrap();
    quatlogic(
        dir.path(),
        &["synth", "min.qtt", "--form", "1", "-o", "min.qsop"],
    );
    for flags in [
        &["--expand-equality"][..],
        &["--use-minmax"][..],
        &["--peephole"][..],
        &["--expand-equality", "--use-minmax", "--peephole"][..],
    ] {
        let mut args = vec![
            "lower", "min.qsop", "-o", "min.qnet", "--v1", "3", "--v2", "3",
        ];
        args.extend_from_slice(flags);
        let out = quatlogic(dir.path(), &args);
        assert!(out.status.success(), "{flags:?}: {out:?}");
        let out = quatlogic(dir.path(), &["verify", "min.qnet", "min.qtt"]);
        assert_eq!(out.status.code(), Some(0), "{flags:?}");
    }
    // MIN/MAX lowering of a form-II expression is rejected
    quatlogic(
        dir.path(),
        &["synth", "min.qtt", "--form", "2", "-o", "min2.qsop"],
    );
    let out = quatlogic(
        dir.path(),
        &["lower", "min2.qsop", "-o", "min2.qnet", "--use-minmax"],
    );
    assert_eq!(out.status.code(), Some(2));
}
