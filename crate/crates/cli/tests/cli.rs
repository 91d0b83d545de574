use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use qtype_cli::{run, Command as Cmd, Report, RunConfig, EXIT_INPUT, EXIT_OK};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn qtype(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qtype"))
        .args(args)
        .env_remove("QTYPE_SEED")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn model_arg(name: &str) -> String {
    corpus().join(name).display().to_string()
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let m = model_arg("jump.toml");
    let args = ["type", "--model", &m, "--q", "2", "--point", "0,0,1,0"];
    let (c1, a, _) = qtype(&args);
    let (c2, b, _) = qtype(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn report_round_trips_through_json() {
    let m = model_arg("paraboloid.toml");
    let (code, out, _) = qtype(&["type", "--model", &m]);
    assert_eq!(code, 0);
    let rep: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(rep.to_json(), out);
    assert_eq!(rep.estimate.unwrap().agreed_value.as_deref(), Some("2"));
}

#[test]
fn seed_comes_from_the_environment() {
    let m = model_arg("jump.toml");
    let out = Command::new(env!("CARGO_BIN_EXE_qtype"))
        .args(["type", "--model", &m, "--q", "2"])
        .env("QTYPE_SEED", "0x2a")
        .output()
        .unwrap();
    let rep: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.seeds.master, 42);
    assert_eq!(rep.seeds.samples.len(), 7);
    assert_eq!(rep.estimate.unwrap().agreed_value.as_deref(), Some("4"));
}

#[test]
fn corpus_passes() {
    let dir = corpus().display().to_string();
    let (code, out, err) = qtype(&["corpus", "--dir", &dir]);
    assert_eq!(code, 0, "{err}");
    let rep: Report = serde_json::from_str(&out).unwrap();
    assert!(rep.lemma_checks.iter().all(|c| c.holds == Some(true)));
}

#[test]
fn input_errors_exit_with_one() {
    let m = model_arg("jump.toml");
    assert_eq!(qtype(&["type"]).0, EXIT_INPUT);
    assert_eq!(qtype(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(qtype(&["type", "--model", &m, "--point", "0,0"]).0, EXIT_INPUT);
    assert_eq!(qtype(&["type", "--model", &m, "--q", "0"]).0, EXIT_INPUT);
    assert_eq!(qtype(&["type", "--model", &m, "--samples", "2", "--min-agreement", "2"]).0, EXIT_INPUT);
    assert_eq!(qtype(&["type", "--model", "/nonexistent.toml"]).0, EXIT_INPUT);
    assert_eq!(qtype(&["--help"]).0, EXIT_OK);
}

#[test]
fn parse_errors_carry_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "n = 2\ngenerators = [\n  \"Re(z2) + |z1|^^2\"]\n").unwrap();
    let (code, _, err) = qtype(&["type", "--model", &path.display().to_string()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("bad.toml:3:"), "{err}");
}

#[test]
fn unresolved_agreement_exits_with_two() {
    // An indefinite mixed part yields only a lower bound.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("indef.toml");
    std::fs::write(&path, "n = 2\ngenerators = [\"Re(z2) + |z1|^2 - |z1|^4\"]\n").unwrap();
    let (code, out, _) = qtype(&["type", "--model", &path.display().to_string()]);
    assert_eq!(code, 2);
    let rep: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(rep.exit_code, 2);
}

fn run_on_text(text: &str) -> i32 {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.toml");
    std::fs::write(&path, text).unwrap();
    run(&RunConfig::new(Cmd::Type, Some(path))).code
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn malformed_models_exit_with_one(junk in "[ -~]{0,40}") {
        let texts = [
            junk.clone(),
            format!("n = 2\ngenerators = [\"{}\"]\n", junk.replace(['"', '\\'], "") + " +* z1"),
            format!("n = 0\ngenerators = [\"z1\"]\n# {junk}\n"),
            "n = 2\ngenerators = []\n".to_string(),
            format!("n = 2\ngenerators = [\"|z1|^2\"]\nbogus_{} = 1\n", junk.len()),
        ];
        for t in &texts {
            prop_assert_eq!(run_on_text(t), EXIT_INPUT, "{}", t);
        }
    }
}
