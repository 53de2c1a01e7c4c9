use std::path::{Path, PathBuf};
use std::process::Command;

use pathalg_cli::canonicalize;
use pathalg_core::catalog;
use pathalg_core::format::{to_json, GraphDoc, GraphRef, InclusionDoc, InstanceDoc, MorphismDoc};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

fn pathalg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pathalg")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// What each generated fixture should contain.
fn generated() -> Vec<(&'static str, String)> {
    let name = |s: &str| GraphRef::Name(s.into());
    vec![
        ("toeplitz.json", to_json(&GraphDoc::from_graph(&catalog::rp2q_e2()))),
        ("rp2q_source.json", to_json(&GraphDoc::from_graph(&catalog::rp2q_e1()))),
        ("emitter.json", to_json(&GraphDoc::from_graph(&catalog::infinite_emitter_graph()))),
        (
            "phi.json",
            to_json(&MorphismDoc::from_morphism(&catalog::rp2q_phi(), name("rp2q_source"), name("toeplitz"))),
        ),
        (
            "constant_rose2.json",
            to_json(&MorphismDoc::from_morphism(&catalog::constant_rose2_to_point(), name("rose2"), name("point"))),
        ),
        (
            "square.json",
            to_json(&MorphismDoc::from_morphism(
                &catalog::not_monotone_rose2_to_loop(),
                GraphRef::Inline(GraphDoc::from_graph(&catalog::rose2())),
                GraphRef::Inline(GraphDoc::from_graph(&catalog::loop_graph())),
            )),
        ),
        (
            "pi1.json",
            to_json(&InclusionDoc::from_inclusion(&catalog::rp2q_pi1(), name("rp2q-f1"), name("rp2q-e1"))),
        ),
        ("rp2q.json", to_json(&InstanceDoc::from_instance(&catalog::rp2q_instance(6)))),
        ("rp2q_no_exit.json", to_json(&InstanceDoc::from_instance(&catalog::rp2q_mutation_no_exit()))),
        (
            "rp2q_not_monotone.json",
            to_json(&InstanceDoc::from_instance(&catalog::rp2q_mutation_not_monotone())),
        ),
        (
            "rp2q_enlarged_f2.json",
            to_json(&InstanceDoc::from_instance(&catalog::rp2q_mutation_enlarged_f2())),
        ),
    ]
}

#[test]
fn fixtures_match_catalog() {
    let update = std::env::var_os("UPDATE_FIXTURES").is_some();
    for (file, text) in generated() {
        let path = fixtures().join(file);
        if update {
            std::fs::write(&path, &text).unwrap();
        }
        assert_eq!(std::fs::read_to_string(&path).unwrap(), text, "{file} is stale");
    }
}

#[test]
fn fixtures_round_trip_byte_for_byte() {
    let mut seen = 0;
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if name.starts_with("malformed") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(canonicalize(&text).unwrap(), text, "{name}");
        seen += 1;
    }
    assert_eq!(seen, generated().len());
}

#[test]
fn classify_exit_codes() {
    let (code, out, _) = pathalg(&["classify", "rp2q-phi", "--require", "RMIPG"]);
    assert_eq!(code, 0);
    assert!(out.contains("classes: PG IPG BPG MIPG MBPG RMIPG RMBPG"), "{out}");

    let (code, out, err) = pathalg(&["classify", &fixture("constant_rose2.json"), "--require", "MIPG"]);
    assert_eq!(code, 1);
    assert!(out.contains("monotone: false (f(e1) = v is a prefix of f(e2) = v)"), "{out}");
    assert!(err.contains("not in MIPG"), "{err}");

    let (code, _, err) = pathalg(&["classify", &fixture("malformed.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("malformed.json:4:3: expected `,` or `}`"), "{err}");
}

#[test]
fn classify_with_graph_files() {
    let args = [
        "--graph",
        &fixture("toeplitz.json"),
        "--graph",
        &fixture("rp2q_source.json"),
        "classify",
        &fixture("phi.json"),
        "--require",
        "RMIPG",
    ];
    let (code, out, err) = pathalg(&args);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("t -> e f"), "{out}");

    let (code, _, err) = pathalg(&["classify", &fixture("phi.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown graph `rp2q_source`"), "{err}");
}

#[test]
fn classify_json_output() {
    let (code, out, _) = pathalg(&["classify", "star-into-loop", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["regular"], false);
    assert_eq!(v["classes"], serde_json::json!(["PG", "IPG", "BPG", "MIPG", "MBPG"]));
    assert_eq!(v["witnesses"]["regular"], "at v: missing branch u");
}

#[test]
fn eval_examples() {
    for (ctx, expr, want) in [
        ("L(loop)", "e* e e", "e"),
        ("C(loop)", "e e*", "e e*"),
        ("L(loop)", "e e* - v", "0"),
        ("L(loop)", "e* e e - e", "0"),
        ("P(rp2q-e2)", "(e + f) e", "e e"),
        ("L(rp2q-e2)", "f* f - 1/2 w", "1/2 w"),
        ("R[v](rp2q-e2)", "v - e e*", "f f*"),
        ("L(line3)", "-e1 e2 e2* e1* + v1", "0"),
        ("C(line3)", "-e1 e2 e2* e1* + v1", "v1 - e1 e2 e2* e1*"),
    ] {
        let (code, out, err) = pathalg(&["eval", ctx, expr]);
        assert_eq!((code, out.trim_end()), (0, want), "{ctx} {expr}: {err}");
    }
}

#[test]
fn eval_errors() {
    let (code, _, err) = pathalg(&["eval", "L(loop)", "e + (v"]);
    assert_eq!(code, 2);
    assert!(err.contains("column"), "{err}");
    let (code, _, err) = pathalg(&["eval", "L(loop)", "e + q"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown identifier `q`"), "{err}");
    let (code, _, _) = pathalg(&["eval", "P(loop)", "e*"]);
    assert_eq!(code, 2);
    let (code, _, err) = pathalg(&["eval", "Q(loop)", "e"]);
    assert_eq!(code, 2);
    assert!(err.contains("bad context"), "{err}");
    let (code, _, _) = pathalg(&["eval", "L(nowhere)", "e"]);
    assert_eq!(code, 2);
}

#[test]
fn eval_apply() {
    let (code, out, _) = pathalg(&["eval", "C(loop)", "e", "--apply", "loop-to-point"]);
    assert_eq!((code, out.as_str()), (0, "v\n"));
    let (code, out, _) = pathalg(&["eval", "L(rp2q-e1)", "s t r*", "--apply", "rp2q-phi"]);
    assert_eq!((code, out.as_str()), (0, "e e e f f*\n"));
    let (code, _, err) = pathalg(&["eval", "C(rose2)", "e2* e1", "--apply", "rose2-square"]);
    assert_eq!(code, 1);
    assert!(err.contains("not monotone"), "{err}");
    let (code, out, err) = pathalg(&["eval", "C(parallel-pair)", "e2 e1*", "--apply", "parallel-into-loop-exit"]);
    assert_eq!((code, out.as_str()), (0, "e g g*\n"), "{err}");
    let (code, _, err) = pathalg(&["eval", "L(parallel-pair)", "e1", "--apply", "parallel-into-loop-exit"]);
    assert_eq!(code, 1);
    assert!(err.contains("not regular"), "{err}");
    let (code, _, err) = pathalg(&["eval", "L(star2)", "f1", "--apply", "star-into-loop"]);
    assert_eq!(code, 1);
    assert!(err.contains("not regular"), "{err}");
    let (code, _, _) = pathalg(&["eval", "L(loop)", "e", "--apply", "rp2q-phi"]);
    assert_eq!(code, 2);
}

#[test]
fn compose_command() {
    let (code, out, _) = pathalg(&["compose", "loop-to-point", "rp2q-phi-res"]);
    assert_eq!(code, 0);
    assert_eq!(out, "  v -> v\n  s -> v\nclasses: PG IPG BPG MIPG MBPG RMIPG RMBPG\n");
    let (code, out, _) = pathalg(&["--json", "compose", "rp2q-phi", "line-to-cycle3"]);
    assert_eq!(code, 2, "{out}");
    let (code, _, err) = pathalg(&["compose", "rp2q-phi-res", "loop-to-point"]);
    assert_eq!(code, 2);
    assert!(err.contains("differs"), "{err}");
}

#[test]
fn compose_json_is_a_morphism_document() {
    let (code, out, _) = pathalg(&["compose", "loop-to-point", "rp2q-phi-res", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(canonicalize(&out).unwrap(), out);
    let doc: MorphismDoc = pathalg_core::format::parse(&out).unwrap();
    assert_eq!(doc.emap.len(), 1);
}

#[test]
fn admissible_command() {
    let (code, out, _) = pathalg(&["admissible", "rp2q-pi1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("admissible\n"), "{out}");
    assert!(out.contains("kernel generators: w"), "{out}");
    let (code, out, err) = pathalg(&["admissible", &fixture("pi1.json")]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("complement: {w}"), "{out}");
}

#[test]
fn pullback_command() {
    let (code, out, _) = pathalg(&["pullback", &fixture("rp2q.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("overall: PASS_UP_TO_BOUND (length bound 6)"), "{out}");
    assert!(out.contains("commutativity: all 8 generators agree"), "{out}");

    let (code, out, _) = pathalg(&["pullback", &fixture("rp2q.json"), "--bound", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("note: length bound 0"), "{out}");

    let (code, out, err) = pathalg(&["pullback", &fixture("rp2q_no_exit.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("H2 FAIL"), "{out}");
    assert_eq!(err, "error: FAIL at H2\n");

    let (code, out, _) = pathalg(&["pullback", "rp2q", "--json", "--bound", "4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["report"]["overall"], "PASS_UP_TO_BOUND");
    assert_eq!(v["report"]["length_bound"], 4);
    assert_eq!(v["report"]["hypotheses"][7]["id"], "H8");
    assert_eq!(v["kernel"]["entries"].as_array().unwrap().len(), 25);
}

#[test]
fn pullback_json_is_deterministic() {
    let a = pathalg(&["pullback", "rp2q", "--json"]);
    let b = pathalg(&["pullback", "rp2q", "--json"]);
    assert_eq!(a, b);
}

#[test]
fn examples_command() {
    let (code, out, err) = pathalg(&["examples"]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(!out.contains("MISMATCH"));
    let (code, out, _) = pathalg(&["examples", "toeplitz-ev1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("toeplitz-ev1"), "{out}");
    let (code, out, _) = pathalg(&["examples", "missing-branch"]);
    assert_eq!(code, 0);
    assert!(out.contains("missing branch x2 y1"), "{out}");
    let (code, _, _) = pathalg(&["examples", "no-such-example"]);
    assert_eq!(code, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pathalg(&["frobnicate"]).0, 2);
    assert_eq!(pathalg(&["classify"]).0, 2);
    assert_eq!(pathalg(&["classify", "rp2q-phi", "--require", "XYZ"]).0, 2);
    assert_eq!(pathalg(&["--help"]).0, 0);
    let (code, out, _) = pathalg(&["list"]);
    assert_eq!(code, 0);
    assert!(out.contains("rp2q-no-exit"));
}
