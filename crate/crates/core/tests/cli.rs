use std::path::PathBuf;
use std::process::{Command, Output};

fn squadk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squadk")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("squadk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn chain2() -> PathBuf {
    let o = squadk(&["gen-chain", "--p", "2", "--degrees", "0:1", "--max-dim", "2"]);
    assert!(o.status.success());
    scratch("chain2.wcat", &stdout(&o))
}

#[test]
fn homotopy_of_the_free_module() {
    let p = scratch("free.sqpres", "gens0:\n  e\ngens1:\nrels0:\nrels1:\n");
    let o = squadk(&["homotopy", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("pi0: Z\n") && out.contains("pi1: Z/2\n") && out.contains("k: nonzero\n"), "{out}");
    let o = squadk(&["--format", "kv", "homotopy", "--pi1", p.to_str().unwrap()]);
    assert_eq!(stdout(&o), "pi1 = Z/2\n");
}

#[test]
fn compare_reports_isomorphisms() {
    let w = chain2();
    let o = squadk(&["compare", w.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    for line in ["mu0: iso\n", "mu1: iso\n", "theorem-el: PASS\n", "failure.count: 0\n"] {
        assert!(out.contains(line), "missing {line:?} in {out}");
    }
}

#[test]
fn present_then_homotopy() {
    let w = chain2();
    let d = std::env::temp_dir().join(format!("squadk-cli-{}/d.sqpres", std::process::id()));
    let o = squadk(&["-o", d.to_str().unwrap(), "present", "--flavor", "d", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = squadk(&["homotopy", "--pi0", "--pi1", d.to_str().unwrap()]);
    assert_eq!(stdout(&o), "pi0: Z\npi1: 0\n");
}

#[test]
fn validate_and_verify() {
    let w = chain2();
    let o = squadk(&["validate", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid: true"));
    let o = squadk(&["verify", "--lemma-la", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lemma-la: PASS"));
}

#[test]
fn snf_prints_the_three_factors() {
    let m = scratch("m.txt", "2 2\n2 4\n6 8\n");
    let o = squadk(&["snf", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let s = out.split("S\n").nth(1).unwrap().split("V\n").next().unwrap();
    let entries: Vec<i64> = s.split_whitespace().map(|x| x.parse().unwrap()).collect();
    assert_eq!(entries, vec![2, 2, 2, 0, 0, 4]);
}

#[test]
fn exit_codes() {
    assert_eq!(squadk(&[]).status.code(), Some(2));
    assert_eq!(squadk(&["homotopy", "/nonexistent/file.sqpres"]).status.code(), Some(2));
    let bad = scratch("bad.sqpres", "gens0:\n  e\ngens1:\n  x := +nope\n");
    assert_eq!(squadk(&["homotopy", bad.to_str().unwrap()]).status.code(), Some(1));
    let garbage = scratch("garbage.sqpres", "gens0:\n  e e\n  ?\n");
    assert_eq!(squadk(&["homotopy", garbage.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(squadk(&["gen-chain", "--p", "4", "--degrees", "0:1", "--max-dim", "2"]).status.code(), Some(2));
    assert_eq!(squadk(&["--budget", "0", "snf", "x"]).status.code(), Some(2));
}
