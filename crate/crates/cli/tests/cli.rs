//! End-to-end tests against the built binary: exit codes, stream wiring,
//! and byte-determinism of data output.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn detlab(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_detlab"));
    cmd.args(args);
    cmd
}

fn run(args: &[&str]) -> Output {
    detlab(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = detlab(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_moore_pipe_determinize_stats() {
    let moore = run(&["gen", "moore", "--n", "3"]);
    assert!(moore.status.success());
    let det = run_with_stdin(&["determinize", "-", "--stats"], &stdout(&moore));
    assert!(det.status.success());
    let text = stdout(&det);
    assert!(text.contains("det_states=8"), "{text}");
    assert!(text.contains("steps=8"), "{text}");
    assert!(text.contains("terminated=true"), "{text}");
}

#[test]
fn analyze_one_letter_emits_bound_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ol5.fsa");
    let gen = run(&[
        "gen",
        "one_letter_irreducible",
        "--n",
        "5",
        "--seed",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let analyze = run(&["analyze", path.to_str().unwrap(), "--verify", "--format", "tsv"]);
    assert!(analyze.status.success());
    let text = stdout(&analyze);
    assert!(
        text.lines().any(|l| l.starts_with("one_letter_irreducible\ttrue\t22")),
        "{text}"
    );
}

#[test]
fn missing_input_exits_2() {
    let out = run(&["determinize", "missing.fsa"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn malformed_input_reports_line_and_exits_2() {
    let out = run_with_stdin(&["determinize", "-"], "fsa 2 bool\nalphabet a\ntrans 0 a 7\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn unknown_flag_exits_2() {
    let out = run(&["determinize", "--no-such-flag", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["gen", "dense", "--n", "8", "--sigma", "2", "--d", "2", "--seed", "42"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let det1 = run_with_stdin(&["determinize", "-"], &stdout(&first));
    let det2 = run_with_stdin(&["determinize", "-"], &stdout(&second));
    assert!(det1.status.success());
    assert_eq!(det1.stdout, det2.stdout);
}

#[test]
fn determinize_roundtrip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.fsa");
    let output = dir.path().join("out.fsa");
    let gen = run(&["gen", "moore", "--n", "4", "--out", input.to_str().unwrap()]);
    assert!(gen.status.success());
    let det = run(&[
        "determinize",
        input.to_str().unwrap(),
        "--out",
        output.to_str().unwrap(),
        "--stats",
    ]);
    assert!(det.status.success());
    assert!(stdout(&det).contains("det_states=16"));
    // The written automaton re-parses and is already deterministic.
    let redet = run(&["determinize", output.to_str().unwrap(), "--stats"]);
    assert!(redet.status.success());
    assert!(stdout(&redet).contains("terminated=true"));
}

const DIVERGENT: &str = "fsa 4 tropical\nalphabet a b c\ninit 0 0\nfinal 3 0\n\
trans 0 a 1 1\ntrans 0 a 2 2\ntrans 1 b 3 1\ntrans 2 b 4 2\ntrans 1 c 0 3\ntrans 2 c 0 3\n";

#[test]
fn weighted_divergence_strict_exits_3() {
    let strict = run_with_stdin(
        &["determinize", "-", "--fuel", "100", "--strict", "--stats"],
        DIVERGENT,
    );
    assert_eq!(strict.status.code(), Some(3));

    let lenient = run_with_stdin(&["determinize", "-", "--fuel", "100", "--stats"], DIVERGENT);
    assert_eq!(lenient.status.code(), Some(0));
    assert!(stdout(&lenient).contains("terminated=false"));
}

#[test]
fn weighted_monoid_reports_incomplete() {
    let out = run_with_stdin(&["monoid", "-", "--fuel", "500"], DIVERGENT);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("complete=false"), "{text}");
}

#[test]
fn monoid_witnesses_list_elements() {
    let moore = run(&["gen", "moore", "--n", "2"]);
    let out = run_with_stdin(&["monoid", "-", "--witnesses"], &stdout(&moore));
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("size=12"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("0\teps\t")), "{text}");
}

#[test]
fn verify_passes_on_generated_family() {
    let finite = run(&["gen", "finite_tw", "--n", "6", "--k", "2", "--seed", "3"]);
    assert!(finite.status.success());
    let verify = run_with_stdin(&["verify", "-", "--format", "tsv"], &stdout(&finite));
    assert_eq!(verify.status.code(), Some(0), "{}", stdout(&verify));
}

#[test]
fn batch_all_pass_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    for (i, n) in [3usize, 4, 5].iter().enumerate() {
        let path = dir.path().join(format!("m{i}.fsa"));
        let gen = run(&["gen", "moore", "--n", &n.to_string(), "--out", path.to_str().unwrap()]);
        assert!(gen.status.success());
    }
    let batch = run(&["batch", dir.path().to_str().unwrap()]);
    assert_eq!(batch.status.code(), Some(0), "{}", stdout(&batch));
    let text = stdout(&batch);
    assert!(text.lines().any(|l| l.starts_with("m0.fsa\tuniversal\ttrue\t8\t8\ttrue")), "{text}");
    assert!(text.contains("fail=0"), "{text}");
}

#[test]
fn batch_corrupted_expectation_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.fsa");
    let bad = dir.path().join("bad.fsa");
    for (path, n) in [(&good, "3"), (&bad, "4")] {
        let gen = run(&["gen", "moore", "--n", n, "--out", path.to_str().unwrap()]);
        assert!(gen.status.success());
    }
    // Correct fixture for one file, a corrupted one for the other.
    std::fs::write(format!("{}.expect", good.display()), "det_states=8\n").unwrap();
    std::fs::write(format!("{}.expect", bad.display()), "det_states=9\n").unwrap();
    let batch = run(&["batch", dir.path().to_str().unwrap()]);
    assert_eq!(batch.status.code(), Some(1));
    let text = stdout(&batch);
    assert!(text.lines().any(|l| l.starts_with("bad.fsa\texpect:det_states\ttrue\t9\t16\tfalse")), "{text}");
    assert!(text.lines().any(|l| l.starts_with("good.fsa\texpect:det_states\ttrue\t8\t8\ttrue")), "{text}");
}

#[test]
fn batch_empty_directory_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let batch = run(&["batch", dir.path().to_str().unwrap()]);
    assert_eq!(batch.status.code(), Some(0));
    let text = stdout(&batch);
    assert_eq!(text.lines().count(), 2, "{text}"); // header + summary only
    assert!(text.contains("pass=0\tfail=0\terror=0"));
}

#[test]
fn batch_continues_past_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("broken.fsa"), "fsa nonsense\n").unwrap();
    let ok = dir.path().join("ok.fsa");
    let gen = run(&["gen", "moore", "--n", "3", "--out", ok.to_str().unwrap()]);
    assert!(gen.status.success());
    let batch = run(&["batch", dir.path().to_str().unwrap()]);
    assert_eq!(batch.status.code(), Some(1));
    let text = stdout(&batch);
    assert!(text.contains("broken.fsa\t-\t-\t-\t-\terror:parse"), "{text}");
    // The good file still got verified.
    assert!(text.lines().any(|l| l.starts_with("ok.fsa\tuniversal")), "{text}");
}

#[test]
fn version_prints() {
    let out = run(&["--version"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("detlab "));
}
