//! End-to-end checks of the command-line surface: file formats, exit codes,
//! report determinism, and the verify pipeline on emitted certificates.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn regnum(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regnum"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn report(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON report")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().to_string()
}

#[test]
fn generate_solve_verify_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();

    let gen = regnum(&["generate", "star", "4"], dir);
    assert!(gen.status.success());
    let text = String::from_utf8(gen.stdout).unwrap();
    assert!(text.starts_with("graph 5 4\n"));
    let graph_path = write(dir, "star4.txt", &text);

    let solve = regnum(&["solve", "reg", &graph_path], dir);
    assert_eq!(solve.status.code(), Some(0));
    let r = report(&solve);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["result"]["value"], 4);
    assert!(r["inputs"][&graph_path]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));

    let cert_path = write(
        dir,
        "cert.json",
        &serde_json::to_string(&r["result"]["certificate"]).unwrap(),
    );
    let verify = regnum(&["verify", "partition", &graph_path, &cert_path], dir);
    assert_eq!(verify.status.code(), Some(0));
    assert_eq!(report(&verify)["result"]["verified"], true);

    // A corrupted certificate is a property violation, not a parse error.
    let bad_path = write(
        dir,
        "bad.json",
        r#"{"parts": [[0,1,2,3]], "regularities": [1]}"#,
    );
    let verify_bad = regnum(&["verify", "partition", &graph_path, &bad_path], dir);
    assert_eq!(verify_bad.status.code(), Some(1));
    assert_eq!(report(&verify_bad)["status"], "violated");
}

#[test]
fn at_most_decision_and_budget_exhaustion() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let gen = regnum(&["generate", "star", "3"], dir);
    let graph_path = write(dir, "claw.txt", &String::from_utf8(gen.stdout).unwrap());

    let no = regnum(&["solve", "reg", &graph_path, "--at-most", "2"], dir);
    assert_eq!(no.status.code(), Some(0));
    assert_eq!(report(&no)["result"]["decision"], false);

    let gen = regnum(&["generate", "zebra", "3"], dir);
    let zebra_path = write(dir, "b3.txt", &String::from_utf8(gen.stdout).unwrap());
    let starved = regnum(&["solve", "reg", &zebra_path, "--budget", "40"], dir);
    assert_eq!(starved.status.code(), Some(3));
    let r = report(&starved);
    assert_eq!(r["status"], "budget");
    assert!(r["result"]["proven_lower_bound"].as_u64().unwrap() >= 2);
    // The fallback certificate still verifies.
    let cert_path = write(
        dir,
        "fallback.json",
        &serde_json::to_string(&r["result"]["certificate"]).unwrap(),
    );
    let verify = regnum(&["verify", "partition", &zebra_path, &cert_path], dir);
    assert_eq!(verify.status.code(), Some(0));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let bad = write(dir, "bad.txt", "not a graph\n");
    let run = regnum(&["solve", "reg", &bad], dir);
    assert_eq!(run.status.code(), Some(2));
    assert_eq!(report(&run)["status"], "malformed");

    let negative = write(dir, "neg.mnae", "p mnae 2 1\n1 -2 0\n");
    let run = regnum(&["solve", "nae", &negative], dir);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let gen = regnum(&["generate", "random-tree", "9", "--seed", "11"], dir);
    let graph_path = write(dir, "tree.txt", &String::from_utf8(gen.stdout).unwrap());
    let a = regnum(&["solve", "reg", &graph_path], dir);
    let b = regnum(&["solve", "reg", &graph_path], dir);
    assert_eq!(a.stdout, b.stdout);

    let gen_a = regnum(&["generate", "random-tree", "9", "--seed", "11"], dir);
    let gen_b = regnum(&["generate", "random-tree", "9", "--seed", "12"], dir);
    assert_ne!(gen_a.stdout, gen_b.stdout);
}

#[test]
fn roundtrips_and_fragments() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let yes = write(dir, "yes.json", r#"{"k": 3, "values": [1, 1, 1, 1, 1, 1]}"#);
    let run = regnum(&["roundtrip", "t1", &yes], dir);
    assert_eq!(run.status.code(), Some(0));
    let r = report(&run);
    assert_eq!(r["result"]["three_partition"], true);
    assert_eq!(r["result"]["certificate_parts"], 2);

    let no = write(dir, "no.json", r#"{"k": 13, "values": [4, 4, 4, 4, 4, 6]}"#);
    let run = regnum(&["roundtrip", "t1", &no], dir);
    assert_eq!(run.status.code(), Some(0));
    let r = report(&run);
    assert_eq!(r["result"]["three_partition"], false);
    assert_eq!(r["result"]["blob_decision"], false);

    let pair = write(dir, "pair.mnae", "p mnae 2 3\n1 2 0\n1 2 0\n1 2 0\n");
    let run = regnum(&["roundtrip", "t2", &pair], dir);
    assert_eq!(run.status.code(), Some(0));
    let r = report(&run);
    assert_eq!(r["result"]["satisfiable"], true);
    assert_eq!(r["result"]["reg2"], true);
    assert_eq!(r["result"]["agreement"], true);

    for which in ["hc", "ic"] {
        let run = regnum(&["verify", "fragment", which], dir);
        assert_eq!(run.status.code(), Some(0), "{} contract", which);
        assert_eq!(report(&run)["result"]["contract_holds"], true);
    }
}

#[test]
fn gadget_artifacts_and_normalize() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let inst = write(dir, "inst.json", r#"{"k": 3, "values": [1, 1, 1]}"#);
    let out = dir.join("gadget.txt");
    let prov = dir.join("prov.json");
    let dot = dir.join("gadget.dot");
    let run = regnum(
        &[
            "gadget",
            "3p",
            &inst,
            "--out",
            out.to_str().unwrap(),
            "--provenance",
            prov.to_str().unwrap(),
            "--dot",
            dot.to_str().unwrap(),
        ],
        dir,
    );
    assert_eq!(run.status.code(), Some(0));
    let r = report(&run);
    assert_eq!(r["result"]["bipartite"], true);
    assert_eq!(r["result"]["vertices"], 36);

    let graph_text = std::fs::read_to_string(&out).unwrap();
    assert!(graph_text.starts_with("graph 36 108\n"));
    let prov_json: Value = serde_json::from_str(&std::fs::read_to_string(&prov).unwrap()).unwrap();
    assert_eq!(prov_json["vertex_roles"]["33"], "hub-u");
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("graph regnum {"));
    assert!(dot_text.contains("hub-u"));

    let tri = write(dir, "tri.mnae", "p mnae 3 1\n1 2 3 0\n");
    let run = regnum(&["normalize", "nae", &tri], dir);
    assert_eq!(run.status.code(), Some(0));
    let r = report(&run);
    assert_eq!(r["result"]["cubic23"], true);
    let normalized = r["result"]["formula"].as_str().unwrap();
    assert!(normalized.starts_with("p mnae 15 19\n"));

    // The normalized formula feeds straight into the other pipeline.
    let norm_path = write(dir, "tri-norm.mnae", normalized);
    let run = regnum(&["roundtrip", "t2", &norm_path], dir);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(report(&run)["result"]["agreement"], true);
}

#[test]
fn pendant_reports_reg_and_delta() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let gen = regnum(&["generate", "petersen"], dir);
    let graph_path = write(dir, "petersen.txt", &String::from_utf8(gen.stdout).unwrap());
    let run = regnum(&["gadget", "pendant", &graph_path, "--edge", "0,7"], dir);
    assert_eq!(run.status.code(), Some(0));
    let r = report(&run);
    assert_eq!(r["result"]["reg"], 4);
    assert_eq!(r["result"]["max_degree"], 3);
}
