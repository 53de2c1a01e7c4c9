//! Acceptance suite: one PASS/FAIL line per criterion. Every threshold is an
//! exact count; the run fails if any criterion fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use pathalg_cli::{canonicalize, examples, registry};
use pathalg_core::algebra::expr::evaluate;
use pathalg_core::algebra::induced::{verify_relations_preserved, InducedHom, InducedKind};
use pathalg_core::algebra::{AlgebraContext, AlgebraError};
use pathalg_core::morphism::{Predicate, RegularityFailure, Witness};
use pathalg_core::pullback::{
    check_commutativity, check_hypotheses, check_kernel_inclusion, Hypothesis, PullbackInstance, Status,
};
use pathalg_core::{catalog, Category, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SWEEP_VERTICES: usize = 3;
const SWEEP_EDGES: usize = 3;
const SWEEP_IMAGE_LEN: usize = 2;
const PREFIX_LEN: usize = 5;
const MATRIX_SIZES: std::ops::RangeInclusive<usize> = 2..=5;
const MATRIX_SAMPLES: usize = 500;
const MATRIX_WORD_LEN: usize = 6;
const LAURENT_SAMPLES: usize = 500;
const LAURENT_WORD_LEN: usize = 8;
const CONFLUENCE_SAMPLES: usize = 1000;
const CONFLUENCE_WORD_LEN: usize = 8;
const PULLBACK_BOUNDS: [usize; 3] = [4, 6, 8];
const KERNEL_BOUND: usize = 4;
const KERNEL_ELEMENTS: usize = 25;
const MAX_VIOLATIONS: usize = 0;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn fixture_graphs() -> Vec<(&'static str, Graph)> {
    registry::GRAPHS.iter().map(|b| (b.name, (b.build)())).collect()
}

fn confluence_graphs() -> Vec<Graph> {
    vec![
        catalog::loop_graph(),
        catalog::rose2(),
        catalog::line(3),
        catalog::rp2q_e1(),
        catalog::rp2q_e2(),
        catalog::branching_target(),
        catalog::star2_loop(),
        catalog::cycle(3),
    ]
}

fn category_closure() -> Verdict {
    let s = support::closure_sweep(SWEEP_VERTICES, SWEEP_EDGES, SWEEP_IMAGE_LEN);
    let n = s.violations.len();
    verdict(
        s.checked > 0 && n == MAX_VIOLATIONS,
        format!("{} composable MIPG pairs, {n} violations", s.checked),
    )
}

fn prefix_order() -> Verdict {
    let mut bad = 0;
    let mut graphs = 0;
    for (_, g) in fixture_graphs() {
        bad += support::prefix_order_violations(&g, PREFIX_LEN);
        graphs += 1;
    }
    verdict(bad == MAX_VIOLATIONS, format!("{graphs} graphs up to length {PREFIX_LEN}, {bad} violations"))
}

fn rewriting_oracles() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut parts = Vec::new();
    let mut total = 0;
    for n in MATRIX_SIZES {
        let m = support::matrix_oracle(n, MATRIX_SAMPLES, MATRIX_WORD_LEN, &mut rng);
        parts.push(format!("A{n}: {m}"));
        total += m;
    }
    let l = support::laurent_oracle(LAURENT_SAMPLES, LAURENT_WORD_LEN, &mut rng);
    parts.push(format!("loop: {l}"));
    total += l;
    verdict(total == MAX_VIOLATIONS, format!("mismatches {}", parts.join(", ")))
}

fn confluence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4048);
    let mut contexts = 0;
    let mut bad = 0;
    for g in confluence_graphs() {
        let g = Arc::new(g);
        let reg = g.regular_vertices().expect("finite fixture");
        let half = reg.iter().copied().take(reg.len() / 2 + 1).collect();
        let ctxs = [
            AlgebraContext::path(g.clone()),
            AlgebraContext::cohn(g.clone()),
            AlgebraContext::leavitt(g.clone()),
            AlgebraContext::relative_cohn(g.clone(), half),
        ];
        for ctx in ctxs {
            let ctx = ctx.expect("fixture contexts are valid");
            contexts += 1;
            bad += support::confluence_mismatches(&ctx, CONFLUENCE_SAMPLES, CONFLUENCE_WORD_LEN, &mut rng);
        }
    }
    verdict(
        bad == MAX_VIOLATIONS,
        format!("{contexts} contexts x {CONFLUENCE_SAMPLES} words, {bad} mismatches"),
    )
}

fn induced_laws() -> Verdict {
    let s = support::induced_law_sweep(SWEEP_VERTICES, SWEEP_EDGES, SWEEP_IMAGE_LEN);
    let n = s.violations.len();
    verdict(
        s.checked > 0 && n == MAX_VIOLATIONS,
        format!("{} relation and functoriality checks, {n} violations", s.checked),
    )
}

fn worked_examples() -> Verdict {
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };

    let f = catalog::constant_loop_to_point();
    let v = f.classify().unwrap();
    let ev1 = InducedHom::cohn(&f)
        .and_then(|h| {
            let e = evaluate(h.source(), "e").map_err(|_| AlgebraError::UnsupportedMode)?;
            Ok(h.apply(&e)? == h.target().one())
        })
        .unwrap_or(false);
    check("constant loop map", v.is_member(Category::Mipg) && v.regular && ev1);

    let f = catalog::not_monotone_rose2_to_loop();
    let rejected = matches!(InducedHom::cohn(&f), Err(AlgebraError::NotMonotone(_)));
    let witness = verify_relations_preserved(&f, InducedKind::Cohn)
        .unwrap()
        .iter()
        .any(|c| c.relation == "e2* e1 = 0" && c.residual.to_string() == "e");
    check("square map", rejected && witness);

    check("edge to xy", catalog::edge_to_xy().is_regular().unwrap());

    let f = catalog::branching_missing();
    let missing = match f.classify().unwrap().witnesses.get(&Predicate::Regular) {
        Some(Witness::Regularity(r)) => match &r.failure {
            RegularityFailure::MissingBranch(p) => f.cod().fmt_path(p) == "x2 y1",
            _ => false,
        },
        _ => false,
    };
    check("missing branch", missing);

    check("star into loop", !catalog::star_into_loop().is_regular().unwrap());

    let f = catalog::parallel_into_loop_exit();
    check(
        "extended lift",
        f.classify().unwrap().is_member(Category::Mipg) && !f.extended_lift().is_monotone(),
    );

    verdict(failures.is_empty(), format!("6 examples, mismatches: {failures:?}"))
}

fn rp2q() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for bound in PULLBACK_BOUNDS {
        let inst = catalog::rp2q_instance(bound);
        let r = check_hypotheses(&inst);
        let commutes = check_commutativity(&inst).map(|c| c.commutes()).unwrap_or(false);
        ok &= r.overall == Status::PassUpToBound && commutes;
        parts.push(format!("L={bound}: {}{}", r.overall, if commutes { ", commutes" } else { ", MISMATCH" }));
    }
    let kernel = check_kernel_inclusion(&catalog::rp2q_instance(KERNEL_BOUND));
    match kernel {
        Ok(k) => {
            let lifted = k.entries.iter().filter(|e| e.killed_by_pi1 && e.maps_back).count();
            ok &= k.entries.len() == KERNEL_ELEMENTS && lifted == KERNEL_ELEMENTS;
            parts.push(format!("kernel {lifted}/{} lifted", k.entries.len()));
        }
        Err(e) => {
            ok = false;
            parts.push(format!("kernel: {e}"));
        }
    }
    verdict(ok, parts.join("; "))
}

fn mutations() -> Verdict {
    let cases: [(&str, PullbackInstance, Hypothesis); 3] = [
        ("no exit", catalog::rp2q_mutation_no_exit(), Hypothesis::H2),
        ("not monotone", catalog::rp2q_mutation_not_monotone(), Hypothesis::H3),
        ("enlarged F2", catalog::rp2q_mutation_enlarged_f2(), Hypothesis::H5),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, inst, h) in cases {
        let r = check_hypotheses(&inst);
        let first = r.first_failure();
        let clean = r.hypotheses.iter().take_while(|v| v.id < h).all(|v| v.status == Status::Pass);
        ok &= first == Some(h) && clean;
        parts.push(format!("{name}: first failure {}", first.map_or("none".into(), |x| x.to_string())));
    }
    verdict(ok, parts.join("; "))
}

fn cli_contract() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_pathalg");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .map(|o| o.status.code().unwrap_or(-1))
            .unwrap_or(-1)
    };
    let mut problems = Vec::new();

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut files = 0;
    for entry in std::fs::read_dir(&dir).expect("fixtures directory") {
        let path = entry.expect("fixture entry").path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if name.starts_with("malformed") {
            continue;
        }
        files += 1;
        let text = std::fs::read_to_string(&path).expect("fixture readable");
        if canonicalize(&text).ok().as_deref() != Some(text.as_str()) {
            problems.push(format!("{name} does not round-trip"));
        }
    }

    if run(&["examples"]) != 0 {
        problems.push("examples exits non-zero".into());
    }
    for ex in examples::EXAMPLES {
        if run(&["examples", ex.name]) != 0 {
            problems.push(format!("examples {} exits non-zero", ex.name));
        }
    }
    let fixture = |f: &str| dir.join(f).to_string_lossy().into_owned();
    let expectations: Vec<(Vec<String>, i32)> = vec![
        (vec!["classify".into(), "rp2q-phi".into(), "--require".into(), "RMIPG".into()], 0),
        (vec!["classify".into(), fixture("constant_rose2.json"), "--require".into(), "MIPG".into()], 1),
        (vec!["classify".into(), fixture("malformed.json")], 2),
        (vec!["eval".into(), "L(loop)".into(), "e* e e".into()], 0),
        (vec!["eval".into(), "L(loop)".into(), "e +".into()], 2),
        (vec!["eval".into(), "C(rose2)".into(), "e1".into(), "--apply".into(), "rose2-square".into()], 1),
        (vec!["pullback".into(), fixture("rp2q.json")], 0),
        (vec!["pullback".into(), fixture("rp2q_no_exit.json")], 1),
        (vec!["pullback".into(), fixture("rp2q_not_monotone.json")], 1),
        (vec!["pullback".into(), fixture("rp2q_enlarged_f2.json")], 1),
        (vec!["admissible".into(), fixture("pi1.json")], 0),
        (vec!["examples".into(), "no-such-example".into()], 2),
    ];
    for (args, want) in &expectations {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = run(&args);
        if got != *want {
            problems.push(format!("`{}` exited {got}, expected {want}", args.join(" ")));
        }
    }
    verdict(
        problems.is_empty(),
        format!(
            "{files} fixtures, {} examples, {} exit-code cases; problems: {problems:?}",
            examples::EXAMPLES.len(),
            expectations.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("category closure", category_closure),
        ("prefix order", prefix_order),
        ("rewriting oracles", rewriting_oracles),
        ("confluence", confluence),
        ("induced-map laws", induced_laws),
        ("worked example verdicts", worked_examples),
        ("rp2q pullback instance", rp2q),
        ("mutation sensitivity", mutations),
        ("cli contract", cli_contract),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = f();
        if !v.ok {
            failed += 1;
        }
        println!(
            "{} criterion {}: {name} ({}) [{:.1}s]",
            if v.ok { "PASS" } else { "FAIL" },
            i + 1,
            v.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed [{:.1}s]",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
