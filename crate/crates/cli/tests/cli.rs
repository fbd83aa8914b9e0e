use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn uniprove(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uniprove")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_uniprove"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const PEIRCE: &str = "|- ((q => s) => q) => q";

#[test]
fn peirce_is_classically_proved() {
    let o = uniprove(&["prove", "--logic", "c", PEIRCE]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("proved"));
}

#[test]
fn disjunction_swap_has_no_uniform_proof() {
    let o = uniprove(&["prove", "--logic", "o", "q | s |- s | q"]);
    assert!(matches!(code(&o), 1 | 2));
    assert_eq!(code(&uniprove(&["prove", "--logic", "i", "q | s |- s | q"])), 0);
}

#[test]
fn herbrandization_is_classical_only() {
    for logic in ["i", "o"] {
        assert_eq!(code(&uniprove(&["prove", "--logic", logic, "--herbrandize", "|- exists x. p(x)"])), 64);
    }
    assert_eq!(code(&uniprove(&["prove", "--restart", "--herbrandize", PEIRCE])), 64);
    assert_eq!(code(&uniprove(&["prove", "--herbrandize", "forall x. p(x) |- exists y. p(y)"])), 0);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(code(&uniprove(&["prove", "--no-such-flag", "|- p"])), 64);
    assert_eq!(code(&uniprove(&["prove"])), 64);
    assert_eq!(code(&uniprove(&["prove", "--depth", "0", "|- p"])), 64);
    assert_eq!(code(&uniprove(&["frobnicate"])), 64);
    assert_eq!(code(&uniprove(&["prove", "|- p &"])), 65);
    assert_eq!(code(&uniprove(&["check", "/no/such/proof.json"])), 65);
    assert_eq!(code(&uniprove(&["corpus", "run", "/no/such.corpus"])), 65);
    assert_eq!(code(&uniprove(&["--help"])), 0);
}

#[test]
fn exhausted_propositional_search_is_refuted() {
    assert_eq!(code(&uniprove(&["prove", "|- p"])), 1);
    assert_eq!(code(&uniprove(&["prove", "--logic", "i", "|- q | (q => s)"])), 1);
}

#[test]
fn emitted_proofs_recheck_with_their_class() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["--logic", "c", PEIRCE],
        &["--logic", "i", "p(a) | p(b) |- exists x. p(x)"],
        &["--logic", "o", "forall x. (p(x) => q(f(x))), p(a) |- exists y. q(y)"],
        &["--restart", PEIRCE],
        &["--herbrandize", "exists x. forall y. r(x, y) |- forall y. exists x. r(x, y)"],
        &["--strengthened-axioms", "p & q |- p & q"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let file = dir.path().join(format!("{i}.json"));
        let mut args = vec!["prove", "--emit", path_str(&file)];
        args.extend_from_slice(case);
        let o = uniprove(&args);
        assert_eq!(code(&o), 0, "{case:?}: {}", stdout(&o));
        let mut check = vec!["check", path_str(&file)];
        if case.contains(&"--strengthened-axioms") {
            check.push("--strengthened-axioms");
        }
        let c = uniprove(&check);
        assert_eq!(code(&c), 0, "{case:?}: {}", stdout(&c));
    }
}

#[test]
fn check_against_a_stricter_class_fails() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("peirce.json");
    assert_eq!(code(&uniprove(&["prove", "--emit", path_str(&file), PEIRCE])), 0);
    let o = uniprove(&["check", "--class", "I", path_str(&file)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("invalid"));
    assert_eq!(code(&uniprove(&["check", "--class", "nonsense", path_str(&file)])), 64);

    std::fs::write(&file, "{\"class\": \"C\"").unwrap();
    assert_eq!(code(&uniprove(&["check", path_str(&file)])), 65);
}

#[test]
fn analyze_reports_profile_and_conditions() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("peirce.json");
    assert_eq!(code(&uniprove(&["prove", "--emit", path_str(&file), PEIRCE])), 0);
    let o = uniprove(&["analyze", path_str(&file)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("rules: axiom, contr-R, imp-L, imp-R"), "{out}");
    assert!(out.contains("intuitionistic criterion: none"), "{out}");
    assert!(out.contains("classical to intuitionistic: condition 1"), "{out}");
}

#[test]
fn analyze_names_the_satisfied_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("horn.json");
    assert_eq!(code(&uniprove(&["prove", "--emit", path_str(&file), "p, p => q |- q"])), 0);
    let out = stdout(&uniprove(&["analyze", path_str(&file)]));
    assert!(out.contains("intuitionistic criterion: no imp-R, no or-L (fragment f1)"), "{out}");
}

#[test]
fn classify_examples() {
    let o = uniprove(&["classify", "--fragment", "f1", "--role", "clause", "forall x. (p(x) | q)"]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "no"));
    let o = uniprove(&["classify", "--fragment", "f2", "--role", "clause", "forall x. (p(x) | q)"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "yes"));
    assert_eq!(code(&uniprove(&["classify", "--fragment", "f1", "--role", "gprime", "p"])), 64);
    assert_eq!(code(&uniprove(&["classify", "--fragment", "f9", "--role", "goal", "p"])), 64);
}

#[test]
fn stdin_and_file_inputs() {
    let o = with_stdin(&["prove", "--logic", "o", "-"], "p, p => q |- q\n");
    assert_eq!(code(&o), 0);
    let o = with_stdin(&["classify", "--fragment", "lp-int", "--role", "goal", "-"], "forall x. (p(x) => q(x))");
    assert_eq!(code(&o), 0);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("seq.txt");
    std::fs::write(&file, PEIRCE).unwrap();
    assert_eq!(code(&uniprove(&["prove", "--file", path_str(&file)])), 0);
}

#[test]
fn corpus_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.corpus");
    std::fs::write(
        &good,
        "# small\npeirce ; |- ((q => s) => q) => q ; C=yes ; I=no ; O=no ; R=yes\n\
         horn ; p, p => q |- q ; C=yes ; I=yes ; O=yes ; frag=f1\n",
    )
    .unwrap();
    let o = uniprove(&["corpus", "run", path_str(&good)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.find("horn").unwrap() < out.find("peirce").unwrap(), "sorted by name: {out}");

    let bad = dir.path().join("bad.corpus");
    std::fs::write(&bad, "lem ; |- q | (q => s) ; C=yes ; I=yes ; O=no\n").unwrap();
    let o = uniprove(&["corpus", "run", "--jobs", "2", path_str(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));

    let malformed = dir.path().join("malformed.corpus");
    std::fs::write(&malformed, "x ; |- p ; C=yes\n").unwrap();
    assert_eq!(code(&uniprove(&["corpus", "run", path_str(&malformed)])), 65);
}

#[test]
fn shipped_corpus_passes() {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/golden.corpus");
    let o = uniprove(&["corpus", "run", corpus]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn verdicts_are_deterministic() {
    let args = ["prove", "--logic", "i", "--tree", "forall x. (p(x) | q) |- (forall x. p(x)) | q"];
    let a = uniprove(&args);
    let b = uniprove(&args);
    assert_eq!((code(&a), stdout(&a)), (code(&b), stdout(&b)));
}
