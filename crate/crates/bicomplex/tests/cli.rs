//! End-to-end tests of the command-line interface: golden outputs,
//! determinism, file round-trips, and the exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

use bicomplex::formal;
use bicomplex::io;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicomplex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn formal_rank_prints_the_count() {
    let out = run(&["formal", "rank", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "39\n");
    let out = run(&["formal", "verify-rank", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("39"));
}

#[test]
fn decompose_lists_the_sample_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let ms = dir.path().join("sample.ms");
    let dc = dir.path().join("sample.dc");
    io::write_multiset(&ms, &formal::sample()).unwrap();
    let out = run(&["synth", ms.to_str().unwrap(), "-o", dc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = run(&["decompose", dc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("3 irreducibles"));
    for shape in ["Z^{0,1}_3", "Z^{3,1}_3", "Z^{3,1}_4"] {
        assert!(text.contains(shape), "missing {shape} in:\n{text}");
    }
    // Deterministic across runs.
    assert_eq!(stdout(&run(&["decompose", dc.to_str().unwrap()])), text);
}

#[test]
fn synth_then_decompose_reproduces_the_multiset_file() {
    let dir = tempfile::tempdir().unwrap();
    let ms = dir.path().join("in.ms");
    let dc = dir.path().join("c.dc");
    let back = dir.path().join("out.ms");
    let mut multiset = formal::dim4_left();
    multiset.add(bicomplex::shape::IrreducibleShape::square(2, 2), 3);
    io::write_multiset(&ms, &multiset).unwrap();
    assert_eq!(
        run(&["synth", ms.to_str().unwrap(), "-o", dc.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["decompose", dc.to_str().unwrap(), "-o", back.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    let original = std::fs::read(&ms).unwrap();
    let recovered = std::fs::read(&back).unwrap();
    assert_eq!(original, recovered, "round-trip must be byte-identical");
}

#[test]
fn compare_local_on_the_blind_pair() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, m| {
        let ms = dir.path().join(format!("{name}.ms"));
        let dc = dir.path().join(format!("{name}.dc"));
        io::write_multiset(&ms, &m).unwrap();
        assert_eq!(
            run(&["synth", ms.to_str().unwrap(), "-o", dc.to_str().unwrap()])
                .status
                .code(),
            Some(0)
        );
        dc
    };
    let a = write("left", formal::dim4_left());
    let b = write("right", formal::dim4_right());
    let out = run(&["compare", "--local", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "locally similar: yes; quasi-isomorphic: no\n");

    let out = run(&["compare", "--iso", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(stdout(&out), "isomorphic: yes\n");
    let out = run(&["compare", "--quasi", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(stdout(&out), "quasi-isomorphic: no\n");
}

#[test]
fn structured_output_is_json() {
    let dir = tempfile::tempdir().unwrap();
    let ms = dir.path().join("sample.ms");
    let dc = dir.path().join("sample.dc");
    io::write_multiset(&ms, &formal::sample()).unwrap();
    run(&["synth", ms.to_str().unwrap(), "-o", dc.to_str().unwrap()]);
    let out = run(&["invariants", dc.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["betti"], serde_json::json!([[3, 2], [4, 1]]));

    let out = run(&["decompose", dc.to_str().unwrap(), "--format", "structured"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value.as_array().unwrap().len(), 3);
}

#[test]
fn generator_commands_emit_files_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let dc = dir.path().join("ce.dc");
    let out = run(&[
        "ce6", "--eps", "0", "--rho", "1", "--A", "1", "--D", "2", "-o",
        dc.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("S^{1,1}"));
    assert!(dc.exists());

    let out = run(&["almost-abelian", "--ks", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("square"));
}

#[test]
fn formal_kernel_from_a_values_file() {
    let dir = tempfile::tempdir().unwrap();
    let values = dir.path().join("v.json");
    std::fs::write(&values, "[[1,0,1],[0,1,1],[0,0,-1],[1,1,-1]]").unwrap();
    let out = run(&["formal", "kernel", "--k", "3", "--sign", "-", "--values", values.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("chi arrays equal: yes"), "{text}");
    // A filling violating the zero-sum constraint is a usage error.
    std::fs::write(&values, "[[0,0,1]]").unwrap();
    let out = run(&["formal", "kernel", "--k", "3", "--sign", "-", "--values", values.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fixtures_write_loadable_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["fixtures", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for name in ["sample", "chi_pos", "chi_neg", "dim4_left", "dim4_right"] {
        let path = dir.path().join(format!("{name}.ms"));
        assert!(path.exists(), "missing {name}.ms");
        io::read_multiset(&path).unwrap();
    }
}

#[test]
fn exit_code_contract() {
    // Usage error.
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    // Missing input file.
    assert_eq!(run(&["decompose", "/no/such/file.dc"]).status.code(), Some(1));
    // Help is a success.
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    // A structurally broken complex: validation failure, exit 2.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dc");
    std::fs::write(
        &bad,
        r#"{"dims": [[0,0,1],[1,0,1],[0,1,1],[1,1,1]],
            "del_h": [[0,0,[["1"]]],[0,1,[["1"]]]],
            "del_v": [[0,0,[["1"]]],[1,0,[["1"]]]]}"#,
    )
    .unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["invariants", bad.to_str().unwrap()]).status.code(), Some(2));

    // A well-formed valid square passes validation.
    let good = dir.path().join("good.dc");
    let square = bicomplex::shape::synthesize(&bicomplex::shape::Multiset::from_shapes([
        bicomplex::shape::IrreducibleShape::square(0, 0),
    ]))
    .unwrap();
    io::write_complex(&good, &square).unwrap();
    let out = run(&["validate", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("valid"));

    // Parse errors mention the position.
    std::fs::write(&bad, "{\"dims\": [[0,0,]]}").unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

/// The multiset listing respects the documented sort order.
#[test]
fn decomposition_report_ordering() {
    let dir = tempfile::tempdir().unwrap();
    let ms = dir.path().join("m.ms");
    let dc = dir.path().join("m.dc");
    io::write_multiset(&ms, &formal::chi_kernel_pos()).unwrap();
    run(&["synth", ms.to_str().unwrap(), "-o", dc.to_str().unwrap()]);
    let out = run(&["decompose", dc.to_str().unwrap()]);
    let text = stdout(&out);
    let line_of = |needle: &str| text.lines().position(|l| l.contains(needle)).unwrap();
    // (total degree, p, q) ascending: the degree-2 dot at (1,1) first, then
    // the degree-2 zigzag anchored at (2,2), then the degree-3 dots.
    assert!(line_of("Z^{1,1}_2") < line_of("Z^{2,2}_2"));
    assert!(line_of("Z^{2,2}_2") < line_of("Z^{1,2}_3"));
    assert!(line_of("Z^{2,1}_3") < line_of("Z^{1,1}_4"));
    assert!(Path::new(&dc).exists());
}
