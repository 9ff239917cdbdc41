//! End-to-end tests of the `mola` binary: flag grammar, exit codes, file
//! round-trips and output determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn mola(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mola"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("failed to spawn mola")
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mola-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn problems_list_zdt_d5_has_five_rows() {
    let dir = workdir("problems");
    let out = mola(&["problems", "list", "--family", "zdt", "--dim", "5"], &dir);
    assert_ok(&out);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let rows = stdout.lines().filter(|l| l.starts_with("zdt")).count();
    assert_eq!(rows, 5);
    assert!(stdout.contains("5 instances"));
}

#[test]
fn solve_resolves_default_budget_from_table() {
    let dir = workdir("budget");
    let out = mola(
        &[
            "solve",
            "--problem",
            "zdt1-d5",
            "--solver",
            "nsga2",
            "--runs",
            "1",
            "--mu",
            "16",
            "--out",
            "runs",
        ],
        &dir,
    );
    assert_ok(&out);
    let manifest: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.join("runs/nsga2_zdt1-d5_s0.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["budget"], 8000);
    assert_eq!(manifest["eval_count"], 8000);
    assert_eq!(manifest["hyperparameters"]["mu"], 16);
}

#[test]
fn sample_output_is_accepted_by_features_and_deterministic() {
    let dir = workdir("roundtrip");
    assert_ok(&mola(
        &[
            "sample",
            "--problem",
            "zdt1-d2",
            "--size",
            "60",
            "--seed",
            "7",
            "--out",
            "a.csv",
        ],
        &dir,
    ));
    assert_ok(&mola(
        &[
            "sample",
            "--problem",
            "zdt1-d2",
            "--size",
            "60",
            "--seed",
            "7",
            "--out",
            "b.csv",
        ],
        &dir,
    ));
    assert_eq!(
        fs::read(dir.join("a.csv")).unwrap(),
        fs::read(dir.join("b.csv")).unwrap()
    );
    assert_ok(&mola(
        &["features", "compute", "--sample", "a.csv", "--out", "f.csv"],
        &dir,
    ));
    let text = fs::read_to_string(dir.join("f.csv")).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("problem_id,dim,m,sample_size,seed,nds.no_non_dom_points"));
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("zdt1-d2,2,2,60,7,"));
}

#[test]
fn exit_codes_distinguish_error_classes() {
    let dir = workdir("exitcodes");
    // unknown problem: configuration error
    let out = mola(
        &[
            "sample",
            "--problem",
            "nope-d9",
            "--size",
            "5",
            "--seed",
            "0",
            "--out",
            "s.csv",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(5));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.starts_with("error[config]:"), "stderr: {stderr}");
    assert_eq!(stderr.lines().count(), 1);
    // missing file: io error
    let out = mola(
        &["stability", "--features", "missing.csv", "--out", "s.csv"],
        &dir,
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[io]:"));
    // malformed table: schema error
    fs::write(dir.join("bad.csv"), "a,b\n1,2\n").unwrap();
    let out = mola(
        &["stability", "--features", "bad.csv", "--out", "s.csv"],
        &dir,
    );
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[schema]:"));
    // unknown flag: clap usage error
    let out = mola(&["problems", "list", "--no-such-flag"], &dir);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn grid_then_select_train_produces_report_fields() {
    let dir = workdir("train");
    assert_ok(&mola(
        &[
            "problems",
            "list",
            "--family",
            "zdt",
            "--dim",
            "2",
            "--objectives",
            "2",
            "--out",
            "suite.json",
        ],
        &dir,
    ));
    for problem in ["zdt1-d2", "zdt2-d2", "zdt3-d2", "zdt4-d2", "zdt6-d2"] {
        assert_ok(&mola(
            &[
                "solve",
                "--problem",
                problem,
                "--solver",
                "all",
                "--budget",
                "300",
                "--mu",
                "20",
                "--runs",
                "2",
                "--out",
                "runs",
                "--jobs",
                "2",
            ],
            &dir,
        ));
    }
    assert_ok(&mola(
        &[
            "perf",
            "--runs",
            "runs",
            "--out",
            "perf.csv",
            "--labels",
            "labels.csv",
            "--sizes",
            "40",
            "--ranks-out",
            "ranks.csv",
        ],
        &dir,
    ));
    assert_ok(&mola(
        &[
            "features",
            "grid",
            "--suite",
            "suite.json",
            "--sizes",
            "40",
            "--seeds",
            "0..3",
            "--out",
            "F.csv",
        ],
        &dir,
    ));
    assert_ok(&mola(
        &[
            "select",
            "train",
            "--features",
            "F.csv",
            "--perf",
            "perf.csv",
            "--split-seed",
            "1",
            "--model",
            "model.json",
            "--report",
            "report.json",
        ],
        &dir,
    ));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    assert!(report["f1_macro"].is_number());
    assert!(report["ri"].is_number());
    assert!(report["selected_features"].is_array());
    // the trained model can be applied back
    assert_ok(&mola(
        &[
            "select",
            "evaluate",
            "--features",
            "F.csv",
            "--perf",
            "perf.csv",
            "--model",
            "model.json",
            "--report",
            "eval.json",
        ],
        &dir,
    ));
    // and drives the analysis subset flags
    assert_ok(&mola(
        &["stability", "--features", "F.csv", "--out", "stab.csv"],
        &dir,
    ));
    assert_ok(&mola(
        &[
            "corr",
            "--features",
            "F.csv",
            "--subset",
            "model.json",
            "--out",
            "corr.csv",
            "--json",
        ],
        &dir,
    ));
    assert_ok(&mola(
        &["embed", "--features", "F.csv", "--out", "emb.csv"],
        &dir,
    ));
    let emb = fs::read_to_string(dir.join("emb.csv")).unwrap();
    assert!(emb.starts_with("problem_id,dim,m,sample_size,seed,e1,e2"));
}

#[test]
fn grid_is_byte_identical_across_jobs_and_resumable() {
    let dir = workdir("determinism");
    assert_ok(&mola(
        &[
            "problems",
            "list",
            "--family",
            "zdt",
            "--dim",
            "2",
            "--objectives",
            "2",
            "--out",
            "suite.json",
        ],
        &dir,
    ));
    assert_ok(&mola(
        &[
            "features",
            "grid",
            "--suite",
            "suite.json",
            "--sizes",
            "30,60",
            "--seeds",
            "0..2",
            "--out",
            "j1.csv",
            "--jobs",
            "1",
        ],
        &dir,
    ));
    assert_ok(&mola(
        &[
            "features",
            "grid",
            "--suite",
            "suite.json",
            "--sizes",
            "30,60",
            "--seeds",
            "0..2",
            "--out",
            "j4.csv",
            "--jobs",
            "4",
        ],
        &dir,
    ));
    let j1 = fs::read(dir.join("j1.csv")).unwrap();
    assert_eq!(j1, fs::read(dir.join("j4.csv")).unwrap());
    // resuming over a complete table changes nothing
    assert_ok(&mola(
        &[
            "features",
            "grid",
            "--suite",
            "suite.json",
            "--sizes",
            "30,60",
            "--seeds",
            "0..2",
            "--out",
            "j1.csv",
            "--jobs",
            "2",
        ],
        &dir,
    ));
    assert_eq!(j1, fs::read(dir.join("j1.csv")).unwrap());
}

#[test]
fn mixed_objective_suite_splits_per_m() {
    let dir = workdir("mixed");
    assert_ok(&mola(
        &[
            "problems",
            "list",
            "--family",
            "dtlz",
            "--dim",
            "5",
            "--out",
            "suite.json",
        ],
        &dir,
    ));
    assert_ok(&mola(
        &[
            "features",
            "grid",
            "--suite",
            "suite.json",
            "--sizes",
            "20",
            "--seeds",
            "0",
            "--out",
            "F.csv",
        ],
        &dir,
    ));
    assert!(dir.join("F-m2.csv").exists());
    assert!(dir.join("F-m3.csv").exists());
    assert!(!dir.join("F.csv").exists());
}

#[test]
fn catalog_export_lists_all_features() {
    let dir = workdir("catalog");
    assert_ok(&mola(
        &["features", "catalog", "--out", "catalog.json"],
        &dir,
    ));
    let catalog: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("catalog.json")).unwrap()).unwrap();
    assert_eq!(catalog["catalog_version"], "1");
    assert!(catalog["features"].as_array().unwrap().len() >= 173);
}
