use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn tricat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tricat")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn cone_of_a_projection() {
    let f = scratch("proj.txt", "[1 0]");
    let out = tricat(&["cone", "--instance", "vect", "--f", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["data"]["cone"]["dim"], 1);
    assert_eq!(r["data"]["cone_is_zero"], false);
    assert!(r["entries"].as_array().unwrap().iter().any(|e| e["anchor"] == tricat::report::anchors::VANISH_GF));
}

#[test]
fn verify_axioms_acceptance_run() {
    let out = tricat(&["verify-axioms", "--instance", "vect", "--field", "Fp:7", "--max-dim", "6", "--samples", "200", "--seed", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["data"]["samples"], 200);
    assert!(r["entries"].as_array().unwrap().iter().all(|e| e["failed"] == 0));
}

#[test]
fn trivial_localization() {
    let out = tricat(&["localize", "--instance", "vect", "--subcat", "even_dim", "--check", "trivial", "--samples", "10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["data"]["summary"], "all sampled objects zero");
}

#[test]
fn failed_checks_exit_with_one() {
    let out = tricat(&["localize", "--subcat", "even_dim", "--check", "thick", "--max-dim", "1"]);
    assert_eq!(code(&out), 1);
    let r = json(&out);
    assert_eq!(r["data"]["thick"], false);
    assert_eq!(r["data"]["witness"]["summand"]["dim"], 1);
    assert_eq!(r["data"]["witness"]["member"]["dim"], 2);
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(code(&tricat(&["cone", "--instance", "nope"])), 2);
    assert_eq!(code(&tricat(&["cone", "--field", "Fp:9"])), 2);
    let f = scratch("ragged.txt", "[1 0; 1]");
    assert_eq!(code(&tricat(&["cone", "--f", f.to_str().unwrap()])), 2);
    let missing = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("does-not-exist.txt");
    assert_eq!(code(&tricat(&["cone", "--f", missing.to_str().unwrap()])), 2);
    // A square that does not commute is not a valid filling problem.
    let f = scratch("f1.txt", "[1 0]");
    let j = scratch("j.txt", "[1 0; 0 1]");
    let k = scratch("k.txt", "[2]");
    let (f, j, k) = (f.to_str().unwrap(), j.to_str().unwrap(), k.to_str().unwrap());
    assert_eq!(code(&tricat(&["fill", "--f", f, "--j", j, "--k", k, "--f2", f])), 2);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify-axioms", "--instance", "chain", "--field", "Fp:3", "--samples", "6", "--seed", "5", "--constructions"];
    let one = tricat(&[&args[..], &["--threads", "1"]].concat());
    let three = tricat(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, three.stdout);
    let other_seed = tricat(&["verify-axioms", "--instance", "chain", "--field", "Fp:3", "--samples", "6", "--seed", "6"]);
    assert_ne!(json(&one)["seed"], json(&other_seed)["seed"]);
}

#[test]
fn out_and_dot_files() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let (out, dot) = (dir.join("grid.json"), dir.join("grid.dot"));
    let run = tricat(&["three-by-three", "--samples", "1", "--out", out.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    assert!(run.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["command"], "three-by-three");
    let d = std::fs::read_to_string(&dot).unwrap();
    assert!(d.starts_with("digraph") && d.contains("C_f"));

    // `report` reads a saved report back; its exit status follows the checks.
    assert_eq!(code(&tricat(&["report", "--input", out.to_str().unwrap()])), 0);
    let mut broken = r.clone();
    broken["entries"][0]["failed"] = 1.into();
    let bad = scratch("broken.json", &broken.to_string());
    assert_eq!(code(&tricat(&["report", "--input", bad.to_str().unwrap()])), 1);
    let junk = scratch("junk.json", "{}");
    assert_eq!(code(&tricat(&["report", "--input", junk.to_str().unwrap()])), 2);
}

#[test]
fn stable_dimensions() {
    let out = tricat(&["stable", "--instance", "frobenius", "--field", "Fp:3", "--source", "1,2", "--target", "0,3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["data"]["dims"][0]["dim"], 6);
    assert_eq!(code(&tricat(&["stable", "--instance", "frobenius", "--bound", "2"])), 0);
    assert_eq!(code(&tricat(&["stable", "--instance", "vect"])), 2);
}

#[test]
fn decompose_inputs() {
    let t = scratch("tri.json", r#"{"f": [[1, 0]], "g": [[0]], "h": [[0], [1]]}"#);
    let out = tricat(&["decompose", "--input", t.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let counts = &json(&out)["data"]["decomposition"]["counts"];
    assert_eq!(counts.as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).sum::<u64>(), 2);
}

#[test]
fn opposite_instances() {
    for inst in ["op-of:vect", "op-of:chain", "op-of:frobenius"] {
        let out = tricat(&["verify-axioms", "--instance", inst, "--field", "Fp:5", "--samples", "5", "--max-dim", "3"]);
        assert_eq!(code(&out), 0, "{inst}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(json(&out)["instance"].as_str().unwrap().contains("opposite"));
    }
}

#[test]
fn every_subcommand_runs_on_samples() {
    for cmd in ["cone", "octahedron", "fill", "puppe", "braid", "three-by-three", "triple"] {
        for inst in ["vect", "chain", "frobenius"] {
            let out = tricat(&[cmd, "--instance", inst, "--field", "Fp:3", "--max-dim", "2", "--max-len", "3", "--seed", "4"]);
            assert_eq!(code(&out), 0, "{cmd} on {inst}: {}", String::from_utf8_lossy(&out.stderr));
        }
    }
}

#[test]
fn generated_subcategories() {
    let spec = r#"{"kind": "generated_by_cones", "generators": [[[0]]]}"#;
    let out = tricat(&["localize", "--subcat", spec, "--check", "trivial", "--samples", "5"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["data"]["summary"], "all sampled objects zero");
}
