use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn noether(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noether")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const CHAIN: &str = "
form F
object X subobjects 0 a 1
morphism id X -> X
  dimg 0 -> 0
  dimg a -> a
  dimg 1 -> 1
  iimg 0 -> 0
  iimg a -> a
  iimg 1 -> 1
";

#[test]
fn check_axioms_on_d8() {
    let d8 = fixture("groups/D8.nf");
    let o = noether(&["check-axioms", d8.to_str().unwrap(), "--dual"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("== dual algebras"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn check_axioms_rejects_bad_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.nf");
    // Row 1 repeats an element, so this is no group table.
    std::fs::write(&p, "group G size 3 id 0\ntable 0 1 2 / 1 1 0 / 2 0 1\n").unwrap();
    let o = noether(&["check-axioms", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.nf:"), "{err}");
}

#[test]
fn axiom6_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("chain.nf");
    std::fs::write(&p, CHAIN).unwrap();
    let path = p.to_str().unwrap();
    assert_eq!(code(&noether(&["check-axioms", path])), 0);
    let o = noether(&["check-axioms", path, "--with-axiom6"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL axiom6"));
}

#[test]
fn chase_delta() {
    let f = fixture("d8_snake.nf");
    let f = f.to_str().unwrap();
    let o = noether(&["chase", f, "--subobject", "bot"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "{0}");
    let o = noether(&["chase", f, "--subobject", "top", "--direction", "backward"]);
    assert_eq!(stdout(&o).trim(), "{0,1}");
    let o = noether(&["chase", f, "--subobject", "bot", "--trace"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[2], "2 D8: {e,b}");
    let o = noether(&["chase", f, "--subobject", "{7}"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn induce_verdicts() {
    let f = fixture("z4_stacks.nf");
    let f = f.to_str().unwrap();
    let o = noether(&["induce", f, "--zigzag", "sub"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("map 0->0 1->1"));
    let o = noether(&["induce", f, "--zigzag", "quotient"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("bottom grows at node 2"));
    // Two zigzags and no name.
    assert_eq!(code(&noether(&["induce", f])), 2);
}

#[test]
fn snake_over_d8() {
    let o = noether(&["snake", fixture("d8_snake.nf").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let orders: Vec<&str> = out.lines().take(6).map(|l| l.rsplit(' ').next().unwrap()).collect();
    assert_eq!(orders, ["1", "1", "2", "2", "2", "2"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS exact:")).count(), 4);
}

#[test]
fn verify_fixture_diagrams() {
    let f = fixture("z4_stacks.nf");
    for d in ["exact", "short-five", "3x3", "goursat", "strongly-short-exact"] {
        let o = noether(&["verify", f.to_str().unwrap(), "--diagram", d]);
        assert_eq!(code(&o), 0, "{d}: {}", stdout(&o));
    }
}

#[test]
fn verify_sampled_five() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("five.nf");
    let o = noether(&["sample", "five", "--part", "iii", "--seed", "7", "--out", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = noether(&["verify", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS iii:iso(u)"), "{out}");
    assert!(out.ends_with("verdict: holds\n"));
}

#[test]
fn pyramid_dot() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("delta.dot");
    let f = fixture("d8_snake.nf");
    let o = noether(&["pyramid", f.to_str().unwrap(), "--order", "diagonal", "--dot", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("FAIL"));
    let dot = std::fs::read_to_string(&p).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("X_0_0"));
}

#[test]
fn fmt_is_stable() {
    let f = fixture("z4_stacks.nf");
    let once = stdout(&noether(&["fmt", f.to_str().unwrap()]));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("again.nf");
    std::fs::write(&p, &once).unwrap();
    assert_eq!(stdout(&noether(&["fmt", p.to_str().unwrap()])), once);
}

#[test]
fn lemmas_listing() {
    let out = stdout(&noether(&["lemmas"]));
    assert!(out.lines().any(|l| l == "snake"));
    let o = noether(&["lemmas", "four"]);
    assert!(stdout(&o).starts_with("lemma four"));
    assert_eq!(code(&noether(&["lemmas", "six"])), 2);
}
