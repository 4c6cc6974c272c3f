//! CLI behaviour: JSON shapes, deterministic output, exit codes, the
//! census scan and the check subcommands.

use std::fs;
use std::path::PathBuf;

use heppbound::cli::run_from;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv: Vec<String> = std::iter::once("heppbound".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    let code = run_from(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn write(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, content).unwrap();
    path
}

const K4: &str = "v 4\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n";

#[test]
fn hepp_of_k4_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(&dir, "k4.g", K4);
    let (code, first) = run(&["hepp", k4.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(first.contains("\"hepp\":\"84\""), "{first}");
    assert!(first.contains("\"hepp_position\":\"42\""));
    assert!(first.contains("\"dimension\":\"4\""));
    assert!(first.contains("\"schema\":1"));
    // byte-identical on repetition
    let (_, second) = run(&["hepp", k4.to_str().unwrap()]);
    assert_eq!(first, second);
}

#[test]
fn hepp_with_indices_and_algorithms() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(&dir, "c5.g", "e 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n");
    let (code, out) = run(&["hepp", c5.to_str().unwrap(), "--indices", "1,1,1,1,1"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"hepp\":\"5\""), "{out}");
    for algo in ["flags", "flats", "cycflats", "oracle"] {
        let (code, out) = run(&["hepp", c5.to_str().unwrap(), "--algo", algo]);
        assert_eq!(code, 0);
        assert!(out.contains("\"hepp\":\"5\""), "{algo}: {out}");
    }
}

#[test]
fn gf2_input_runs_through_flags() {
    let dir = tempfile::tempdir().unwrap();
    // ten columns e_i + e_j + e_k over five rows
    let mut rows = vec![String::new(); 5];
    for i in 0..5 {
        for j in (i + 1)..5 {
            for k in (j + 1)..5 {
                for (r, row) in rows.iter_mut().enumerate() {
                    row.push(if r == i || r == j || r == k { '1' } else { '0' });
                }
            }
        }
    }
    let text = format!("m 5 10\n{}\n", rows.join("\n"));
    let path = write(&dir, "r10.m", &text);
    let (code, out) = run(&["hepp", path.to_str().unwrap(), "--algo", "flags"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"hepp\":\"1890\""), "{out}");
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // unparseable input
    let bad = write(&dir, "bad.g", "x nonsense\n");
    let (code, _) = run(&["hepp", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    // engine error: zero index
    let k4 = write(&dir, "k4.g", K4);
    let (code, _) = run(&["hepp", k4.to_str().unwrap(), "--indices", "0,1,1,1,1,1"]);
    assert_eq!(code, 2);
    // missing file
    let (code, _) = run(&["hepp", "/nonexistent.g"]);
    assert_eq!(code, 1);
}

#[test]
fn scan_groups_equal_values() {
    let dir = tempfile::tempdir().unwrap();
    let w4 = write(
        &dir,
        "w4.g",
        "v 5\ne 0 1\ne 0 2\ne 0 3\ne 0 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n",
    );
    // octahedron minus a vertex has the same value by completion
    let octa_minus = {
        let g = heppbound::symmetry::complete_4regular(&heppbound::Graph::wheel(4))
            .unwrap()
            .completed;
        let (deleted, _) = g.delete_vertex(0);
        write(&dir, "octa_v.g", &heppbound::io::format_graph(&deleted))
    };
    let k4 = write(&dir, "k4.g", K4);
    let (code, out) = run(&[
        "scan",
        w4.to_str().unwrap(),
        octa_minus.to_str().unwrap(),
        k4.to_str().unwrap(),
        "--workers",
        "2",
    ]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    let groups = json["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0]["hepp"], "572");
    assert_eq!(groups[0]["members"].as_array().unwrap().len(), 2);
    // deterministic across reruns with a different worker count
    let (_, again) = run(&[
        "scan",
        w4.to_str().unwrap(),
        octa_minus.to_str().unwrap(),
        k4.to_str().unwrap(),
    ]);
    assert_eq!(out, again);
}

#[test]
fn polytope_exports() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(&dir, "k4.g", K4);
    let (code, out) = run(&[
        "polytope",
        k4.to_str().unwrap(),
        "--kind",
        "newton",
        "--format",
        "ine",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("H-representation\nlinearity 1 1\n"));
    assert!(out.contains(" 17 7 rational"));
    let (code, out) = run(&[
        "polytope",
        k4.to_str().unwrap(),
        "--kind",
        "polar",
        "--format",
        "ext",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains(" 16 6 rational"));
}

#[test]
fn check_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(
        &dir,
        "k5.g",
        &heppbound::io::format_graph(&heppbound::Graph::complete(5)),
    );
    let (code, out) = run(&["check", "completion", k5.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"status\":\"pass\""));

    let product = write(
        &dir,
        "product.spec",
        &format!("@graphA\n{K4}\n@graphB\n{K4}\n@edgeA 0\n@edgeB 0\n"),
    );
    let (code, out) = run(&["check", "product", product.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("1764 = 42 * 42"), "{out}");

    let fourier = write(
        &dir,
        "fourier.spec",
        "@graph\nv 4\ne 1 2\ne 0 3\ne 2 0\ne 1 3\ne 0 1\ne 2 3\n\
         @sideS 0 2 4\n@terminals 0 1 2\n@dual\nv 4\ne 0 3\ne 1 3\ne 2 3\n@dualterminals 0 1 2\n",
    );
    let (code, out) = run(&["check", "fourier", fourier.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"status\":\"pass\""));

    let mut twist_graph = String::from("v 4\n");
    for _ in 0..2 {
        for u in 0..4 {
            for v in (u + 1)..4 {
                twist_graph.push_str(&format!("e {u} {v}\n"));
            }
        }
    }
    let twist = write(
        &dir,
        "twist.spec",
        &format!(
            "@graph\n{twist_graph}@quad 0 1 2 3\n@sideT 6 7 8 9 10 11\n@transposition pq-rs\n"
        ),
    );
    let (code, out) = run(&["check", "twist", twist.to_str().unwrap(), "--lines", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"status\":\"pass\""));
}

#[test]
fn table_values() {
    let (code, out) = run(&["table", "complete", "--from", "3", "--to", "6"]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1]["closed_form"], "84");
    assert_eq!(rows[1]["engine"], "84");
    assert_eq!(rows[3]["closed_form"], "38338560");
    assert_eq!(rows[3]["engine"], "38338560");
    let (code, out) = run(&["table", "uniform", "--from", "4", "--to", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"closed_form\":\"12\""));
}

#[test]
fn derksen_and_crapo_json() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(&dir, "k4.g", K4);
    for method in ["direct", "flags", "flats"] {
        let (code, out) = run(&["derksen", k4.to_str().unwrap(), "--method", method]);
        assert_eq!(code, 0);
        assert!(
            out.contains("{\"mult\":\"144\",\"word\":\"110100\"}"),
            "{out}"
        );
        assert!(out.contains("\"hepp_at_unit\":\"84\""));
    }
    for method in ["subset", "delcon", "limit"] {
        let (code, out) = run(&["crapo", k4.to_str().unwrap(), "--method", method]);
        assert_eq!(code, 0);
        assert!(out.contains("\"beta\":2"), "{out}");
    }
}

#[test]
fn hepp1_json() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(&dir, "k4.g", K4);
    let (code, out) = run(&["hepp1", k4.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("\"hepp1\":\"15\""));
    let (code, out) = run(&["hepp1", k4.to_str().unwrap(), "--flat"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"hepp1\":\"15\""));
    let (code, out) = run(&["hepp1", k4.to_str().unwrap(), "--loop"]);
    assert_eq!(code, 0);
    assert!(out.contains("hepp1_loop"));
    assert!(out.contains("ln(3)"));
}
