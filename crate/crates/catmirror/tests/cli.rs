//! End-to-end tests of the command line tool, including the exit code
//! contract and pipe composition.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_catmirror"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = cli()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn convert_phi_figure_instance() {
    let out = run_with_stdin(&["convert", "phi"], "qd 5: 1-4,5-8,5-10\n");
    assert!(out.status.success());
    assert_eq!(stdout(&out), "nct 5: 1-2,1-3,3-4,3-5\n");
}

#[test]
fn count_nu() {
    let out = cli().args(["count", "nu", "5"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out), "55\n");
}

#[test]
fn count_variants() {
    let printed = cli()
        .args(["count", "self-dual", "3", "--variant", "printed"])
        .output()
        .unwrap();
    assert_eq!(stdout(&printed).trim(), "2");
    let brute = cli()
        .args(["count", "self-dual", "3", "--variant", "brute"])
        .output()
        .unwrap();
    assert_eq!(stdout(&brute).trim(), "1");
    let nonint = cli()
        .args(["count", "nct-rot", "3", "--variant", "printed"])
        .output()
        .unwrap();
    assert_eq!(stdout(&nonint).trim(), "3/6 [non-integer]");
    let aligned = cli()
        .args(["count", "nct-rot", "3", "--variant", "aligned"])
        .output()
        .unwrap();
    assert_eq!(stdout(&aligned).trim(), "1");
}

#[test]
fn gen_streams_canonical_lines() {
    let out = cli().args(["gen", "nct", "3"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "nct 3: 1-2,1-3\nnct 3: 1-2,2-3\nnct 3: 1-3,2-3\n"
    );
}

#[test]
fn pipe_round_trip_reproduces_input() {
    for n in ["4", "6"] {
        let gen = cli().args(["gen", "qd", n]).output().unwrap();
        let forward = run_with_stdin(&["convert", "phi"], &stdout(&gen));
        let back = run_with_stdin(&["convert", "phi-inv"], &stdout(&forward));
        assert_eq!(stdout(&back), stdout(&gen), "phi pipe at n={n}");
        let forward = run_with_stdin(&["convert", "psi"], &stdout(&gen));
        let back = run_with_stdin(&["convert", "psi-inv"], &stdout(&forward));
        assert_eq!(stdout(&back), stdout(&gen), "psi pipe at n={n}");
    }
    let gen = cli().args(["gen", "nct", "5"]).output().unwrap();
    let forward = run_with_stdin(&["convert", "medial"], &stdout(&gen));
    let back = run_with_stdin(&["convert", "medial-inv"], &stdout(&forward));
    assert_eq!(stdout(&back), stdout(&gen));
}

#[test]
fn act_star_on_tree() {
    let out = run_with_stdin(&["act", "star"], "nct 5: 1-2,1-3,3-4,3-5\n");
    assert_eq!(stdout(&out), "nct 5: 1-5,2-3,2-5,3-4\n");
    let twice = run_with_stdin(&["act", "star"], &stdout(&out));
    assert_eq!(stdout(&twice), "nct 5: 1-2,1-3,3-4,3-5\n");
}

#[test]
fn act_rotate_and_dihedral() {
    let out = run_with_stdin(&["act", "rotate:1"], "nct 3: 1-2,1-3\n");
    assert_eq!(stdout(&out), "nct 3: 1-3,2-3\n");
    let out = run_with_stdin(&["act", "dihedral:1,0"], "qd 3: 1-4\n");
    assert_eq!(stdout(&out), "qd 3: 3-6\n");
}

#[test]
fn fixed_with_witnesses() {
    let out = cli()
        .args(["fixed", "3", "0", "3", "--witnesses"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "3\nqd 3: 1-4\nqd 3: 2-5\nqd 3: 3-6\n");
}

#[test]
fn orbits_with_transversal() {
    let out = cli()
        .args(["orbits", "c2n", "3", "--transversal"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "1\nqd 3: 1-4\n");
}

#[test]
fn verify_exits_with_mismatch_code() {
    let out = cli().args(["verify", "--max", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("self_dual"));
    assert!(text.contains("MISMATCH"));
    assert!(text.contains("findings"));
}

#[test]
fn verify_json_is_parseable() {
    let out = cli()
        .args(["verify", "--max", "3", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(value.get("statistics").is_some());
    assert!(value.get("checks").is_some());
}

#[test]
fn verify_is_deterministic() {
    let a = cli().args(["verify", "--max", "4"]).output().unwrap();
    let b = cli().args(["verify", "--max", "4"]).output().unwrap();
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn usage_error_exits_3() {
    let out = cli().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = cli().args(["count", "no-such-stat", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invalid_input_exits_1() {
    let out = run_with_stdin(&["convert", "phi"], "qd 3: 1-3\n");
    assert_eq!(out.status.code(), Some(1));
    let out = run_with_stdin(&["convert", "phi"], "qd 3: garbage\n");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn render_overlay_svg() {
    let out = run_with_stdin(&["render", "--overlay"], "qd 5: 1-4,5-8,5-10\n");
    assert!(out.status.success());
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("stroke=\"green\"").count(), 4);
    assert_eq!(svg.matches("stroke=\"red\"").count(), 4);
}

#[test]
fn render_ternary_dot() {
    let out = run_with_stdin(&["render"], "(* * *)\n");
    assert!(stdout(&out).starts_with("digraph"));
}

#[test]
fn json_format_output() {
    let out = run_with_stdin(&["convert", "phi", "--format", "json"], "qd 2:\n");
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["kind"], "nct");
    assert_eq!(value["n"], 2);
}

#[test]
fn inline_input() {
    let out = cli()
        .args(["convert", "psi", "--inline", "qd 3: 3-6"])
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "(* (* * *) *)\n");
}
