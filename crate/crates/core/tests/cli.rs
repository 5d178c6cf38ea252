use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sdr(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdr"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = sdr(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn small_corpus(dir: &Path) {
    fs::write(dir.join("synth.toml"), "vocab = 300\nh = 32\ndocs = 60\nseed = 4\n").unwrap();
    ok(dir, &["gen-synth", "--config", "synth.toml", "--out", "corpus.sdrc"]);
}

#[test]
fn float_pipeline_roundtrips_exactly() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    small_corpus(d);
    ok(
        d,
        &[
            "train",
            "--corpus",
            "corpus.sdrc",
            "--variant",
            "aesi-2l",
            "--c",
            "16",
            "--epochs",
            "1",
            "--out",
            "m.aesi",
            "--loss-csv",
            "loss.csv",
        ],
    );
    assert!(fs::read_to_string(d.join("loss.csv"))
        .unwrap()
        .starts_with("step,loss\n"));
    ok(
        d,
        &[
            "encode",
            "--corpus",
            "corpus.sdrc",
            "--checkpoint",
            "m.aesi",
            "--out",
            "enc.sdre",
        ],
    );
    ok(
        d,
        &[
            "compress",
            "--encoded",
            "enc.sdre",
            "--c",
            "16",
            "--bits",
            "32",
            "--seed",
            "3",
            "--out",
            "b.sdr",
        ],
    );
    ok(
        d,
        &[
            "decompress",
            "--blobs",
            "b.sdr",
            "--corpus",
            "corpus.sdrc",
            "--out",
            "dec.sdre",
        ],
    );
    assert_eq!(
        fs::read(d.join("enc.sdre")).unwrap(),
        fs::read(d.join("dec.sdre")).unwrap()
    );

    let report = ok(
        d,
        &[
            "report",
            "--blobs",
            "b.sdr",
            "--corpus",
            "corpus.sdrc",
            "--baseline-h",
            "384",
        ],
    );
    let cr = report.lines().find(|l| l.trim_start().starts_with("CR")).unwrap();
    assert_eq!(cr.split_whitespace().last(), Some("24.0"));

    let eval = ok(
        d,
        &[
            "eval-recon",
            "--corpus",
            "corpus.sdrc",
            "--checkpoint",
            "m.aesi",
            "--bits",
            "6",
        ],
    );
    assert!(eval.starts_with("mse "));
}

#[test]
fn commands_are_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    small_corpus(d);
    ok(d, &["gen-synth", "--config", "synth.toml", "--out", "again.sdrc"]);
    assert_eq!(
        fs::read(d.join("corpus.sdrc")).unwrap(),
        fs::read(d.join("again.sdrc")).unwrap()
    );
    for name in ["a", "b"] {
        ok(
            d,
            &[
                "train",
                "--corpus",
                "corpus.sdrc",
                "--c",
                "4",
                "--epochs",
                "1",
                "--seed",
                "9",
                "--out",
                &format!("{name}.aesi"),
            ],
        );
        ok(
            d,
            &[
                "encode",
                "--corpus",
                "corpus.sdrc",
                "--checkpoint",
                &format!("{name}.aesi"),
                "--out",
                &format!("{name}.sdre"),
            ],
        );
        ok(
            d,
            &[
                "compress",
                "--encoded",
                &format!("{name}.sdre"),
                "--bits",
                "5",
                "--out",
                &format!("{name}.sdr"),
            ],
        );
    }
    for ext in ["aesi", "sdre", "sdr"] {
        assert_eq!(
            fs::read(d.join(format!("a.{ext}"))).unwrap(),
            fs::read(d.join(format!("b.{ext}"))).unwrap(),
            "{ext}"
        );
    }
    let entropy = ok(d, &["entropy", "--blobs", "a.sdr"]);
    let h: f64 = entropy.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(h > 0.0 && h <= 5.0);
}

#[test]
fn quant_bench_rows_follow_expected_order() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ok(
        tmp.path(),
        &[
            "quant-bench",
            "--schemes",
            "drive,h-sd,h-sr",
            "--bits",
            "2..3",
            "--trials",
            "2000",
            "--runs",
            "2",
            "--csv",
        ],
    );
    let rows: Vec<Vec<String>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 6);
    for chunk in rows.chunks(3) {
        let mse: Vec<f64> = chunk.iter().map(|r| r[2].parse().unwrap()).collect();
        assert_eq!(chunk[0][0], "DRIVE");
        assert!(mse[0] <= mse[1] && mse[1] <= mse[2], "{chunk:?}");
    }
}

#[test]
fn small_commands() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    assert_eq!(ok(d, &["rd", "--mse", "0.25"]).trim(), "1.000000");
    let c1 = ok(d, &["centroids", "--bits", "1"]);
    assert!(c1.contains("1 1 7.9788456080286541e-1"));
    assert_eq!(
        ok(d, &["centroids", "--bits", "2", "--regenerate"]),
        ok(d, &["centroids", "--bits", "2"])
    );
    fs::write(d.join("runs.txt"), "# query per line\n0 0 0 1\n1 0 0\n\n0 1\n").unwrap();
    assert_eq!(ok(d, &["metrics", "mrr", "--runs", "runs.txt"]).trim(), "0.583333");
    let table = ok(d, &["report", "--reference", "--csv"]);
    assert_eq!(table.lines().count(), 17);
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let code = |args: &[&str]| sdr(d, args).status.code().unwrap();
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["rd"]), 1);
    assert_eq!(code(&["quant-bench", "--bits", "0..3"]), 1);
    assert_eq!(code(&["rd", "--mse", "0"]), 2);
    assert_eq!(
        code(&["encode", "--corpus", "missing.sdrc", "--checkpoint", "x", "--out", "y"]),
        2
    );

    fs::write(d.join("bad.sdrc"), b"SDRX\x01\x00garbage").unwrap();
    let out = sdr(d, &["train", "--corpus", "bad.sdrc", "--c", "2", "--out", "m.aesi"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("magic"));
    assert!(!d.join("m.aesi").exists());

    fs::write(d.join("runs.txt"), "0 0\n").unwrap();
    assert_eq!(code(&["metrics", "ndcg", "--runs", "runs.txt"]), 2);
}
