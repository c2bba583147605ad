use std::io::Write;
use std::process::{Command, Output, Stdio};

use rbgroups::rbcore::format::{read_operator, OperatorFile};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbgroups"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rbgroups"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_odd_dihedral() {
    let o = run(&["classify", "D:6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "non_splitting: 0"), "{text}");
    assert!(text.contains("check odd_dihedral_all_splitting: true"));
}

#[test]
fn classify_family_range() {
    let o = run(&[
        "classify", "--family", "dihedral", "--n-from", "2", "--n-to", "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("group: ").count(), 3);
}

#[test]
fn s3_classes_all_split() {
    let o = run(&["enumerate", "S:3", "--up-to-equivalence"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let classes: Vec<&str> = text.lines().filter(|l| l.starts_with("class ")).collect();
    assert_eq!(classes.len(), 2);
    assert!(classes.iter().all(|l| l.contains("splitting=true")));
}

#[test]
fn admissible_degree_10() {
    let o = run(&["admissible", "--n", "10"]);
    assert_eq!(stdout(&o), "yes case=b q=3 m=2 s=1\n");
    assert_eq!(stdout(&run(&["admissible", "--n", "25"])), "no\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify", "--frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["nonsense"]).status.code(), Some(64));
    assert_eq!(run(&["admissible", "--n", "3"]).status.code(), Some(1));
    assert_eq!(run(&["build-an", "--n", "25"]).status.code(), Some(1));
    assert_eq!(run(&["enumerate", "D:100"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn broken_operator_fails_verification() {
    let good = stdout(&run(&["construct", "--example", "s3"]));
    assert!(good.ends_with("verify: pass pairs=36 seed=none\n"));
    let file: String = good
        .lines()
        .filter(|l| !l.starts_with("verify:"))
        .map(|l| format!("{l}\n"))
        .collect();
    let ok = run_stdin(&["verify", "-"], &file);
    assert_eq!(ok.status.code(), Some(0));
    let broken = file.replace("op: 0 1 1 0 0 1", "op: 0 1 1 0 0 0");
    assert_ne!(broken, file);
    let o = run_stdin(&["verify", "-"], &broken);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("verify: fail"));
}

#[test]
fn records_round_trip() {
    let o = run(&["enumerate", "D:8", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let blocks: Vec<&str> = text
        .split("\n\n")
        .filter(|b| !b.trim().is_empty())
        .collect();
    assert_eq!(blocks.len(), 56);
    for block in blocks {
        let OperatorFile::Table(op) = read_operator(block).unwrap() else {
            panic!("table expected")
        };
        let mut again = rbgroups::rbcore::format::write_operator(&op);
        again.pop();
        assert_eq!(again.trim_end(), block.trim_end());
    }
}

#[test]
fn output_ignores_thread_count() {
    let args = [
        "classify",
        "--family",
        "quaternion",
        "--n-from",
        "2",
        "--n-to",
        "3",
    ];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let two = run(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(one.stdout, two.stdout);
    let a = run(&[
        "build-an",
        "--n",
        "9",
        "--verify-samples",
        "3000",
        "--seed",
        "7",
        "--threads",
        "1",
    ]);
    let b = run(&[
        "build-an",
        "--n",
        "9",
        "--verify-samples",
        "3000",
        "--seed",
        "7",
        "--threads",
        "2",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn procedural_file_round_trip() {
    let dumped = run(&["build-an", "--n", "9", "--dump", "--verify-samples", "100"]);
    let text = stdout(&dumped);
    let file: String = text
        .lines()
        .take_while(|l| !l.starts_with("layer "))
        .map(|l| format!("{l}\n"))
        .collect();
    assert!(file.contains("proc: an n=9"));
    let o = run_stdin(
        &["verify", "-", "--verify-samples", "500", "--seed", "1"],
        &file,
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("verify-an: pass seed=1\n"));
}

#[test]
fn sharply_groups() {
    let text = stdout(&run(&[
        "sharply2", "--m", "2", "--q", "3", "--t", "1", "--dump",
    ]));
    assert!(text.contains("order: 72\n") && text.contains("n_part: Q8\n"));
    assert_eq!(text.matches("domain: 9").count(), 4);
    let text = stdout(&run(&["sharply3", "--q", "9"]));
    assert!(text.contains("order: 720\n") && text.contains("index2: PSL2(9) order=360\n"));
    assert_eq!(
        run(&["sharply2", "--m", "2", "--q", "2"]).status.code(),
        Some(1)
    );
}

#[test]
fn construct_from_data() {
    let o = run(&["construct", "--split", "S:3", "(0 1 2)", "(0 1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify: pass"));
    let o = run(&["construct", "--split", "S:3", "(0 1)", "(1 2)"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "construct",
        "--index2",
        "D:8",
        "",
        "(0 1 2 3);(1 3)",
        "(0 1 2 3)",
        "(1 3)",
        "(0 2)(1 3)",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn descendent_command() {
    let o = run(&["descendent", "--n", "9", "--verify-samples", "500"]);
    assert_eq!(
        stdout(&o),
        "descendent: pass twist=500 kernel=500 opposite=1296\n"
    );
    assert_eq!(run(&["descendent", "--n", "10"]).status.code(), Some(1));
}
