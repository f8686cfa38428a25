use std::path::Path;
use std::process::{Command, Output};

fn newswire(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newswire"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn newswire")
}

fn small_corpus() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = newswire(dir.path(), &["synth", "--out", "corpus", "--sources", "60"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    dir
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&newswire(dir.path(), &["frobnicate"])), 2);
}

#[test]
fn unreadable_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = newswire(dir.path(), &["--config", "absent.toml", "ingest"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn missing_gazetteer_names_the_field() {
    let dir = small_corpus();
    let out = newswire(
        dir.path(),
        &[
            "--config",
            "corpus/config.toml",
            "--set",
            "paths.gazetteer=\"absent.tsv\"",
            "pipeline",
        ],
    );
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("paths.gazetteer"));
}

#[test]
fn unparseable_articles_are_an_input_error() {
    let dir = small_corpus();
    std::fs::write(dir.path().join("corpus/bad.jsonl"), "not json\n").unwrap();
    let out = newswire(
        dir.path(),
        &["--config", "corpus/config.toml", "--set", "paths.articles=\"bad.jsonl\"", "ingest"],
    );
    assert_eq!(code(&out), 4);
}

#[test]
fn pipeline_on_a_generated_corpus_succeeds() {
    let dir = small_corpus();
    let out = newswire(dir.path(), &["--config", "corpus/config.toml", "pipeline"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["newswire.jsonl", "metrics.json", "counts_by_year.csv"] {
        assert!(dir.path().join("corpus/out").join(name).exists(), "{name}");
    }
}
