//! Worked examples with their recorded outcomes.

use std::collections::BTreeSet;

use pathalg_core::algebra::expr::evaluate;
use pathalg_core::algebra::induced::{verify_relations_preserved, InducedHom, InducedKind};
use pathalg_core::algebra::{AlgebraContext, AlgebraError, Monomial};
use pathalg_core::catalog;
use pathalg_core::morphism::Predicate;
use pathalg_core::pullback::{check_commutativity, check_hypotheses, check_kernel_inclusion, Status};
use pathalg_core::{Category, PathHom};
use std::sync::Arc;

pub struct BuiltinExample {
    pub name: &'static str,
    pub about: &'static str,
    pub expected: &'static str,
    pub run: fn() -> Result<Outcome, String>,
}

/// `summary` is compared against the expected value; `detail` is informative.
pub struct Outcome {
    pub summary: String,
    pub detail: String,
}

fn outcome(summary: impl Into<String>, detail: impl Into<String>) -> Result<Outcome, String> {
    Ok(Outcome {
        summary: summary.into(),
        detail: detail.into(),
    })
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn witness(f: &PathHom, p: Predicate) -> Result<String, String> {
    let v = f.classify().map_err(err)?;
    Ok(v.witnesses.get(&p).map(|w| w.describe(f)).unwrap_or_default())
}

fn eval_in(ctx: Result<Arc<AlgebraContext>, AlgebraError>, src: &str) -> Result<Outcome, String> {
    let ctx = ctx.map_err(err)?;
    let value = evaluate(&ctx, src).map_err(err)?;
    outcome(value.to_string(), "")
}

pub const EXAMPLES: &[BuiltinExample] = &[
    BuiltinExample {
        name: "toeplitz-ev1",
        about: "constant map from the loop to the point",
        expected: "MIPG, regular, f_*(e) = 1",
        run: || {
            let f = catalog::constant_loop_to_point();
            let v = f.classify().map_err(err)?;
            let h = InducedHom::cohn(&f).map_err(err)?;
            let e = evaluate(h.source(), "e").map_err(err)?;
            let image = h.apply(&e).map_err(err)?;
            let shown = if image == h.target().one() { "1".to_string() } else { image.to_string() };
            outcome(
                format!(
                    "{}, {}, f_*(e) = {shown}",
                    if v.is_member(Category::Mipg) { "MIPG" } else { "not MIPG" },
                    if v.regular { "regular" } else { "not regular" }
                ),
                format!("f_*(e) = {image}"),
            )
        },
    },
    BuiltinExample {
        name: "constant-rose2",
        about: "constant map from the rose with two petals to the point",
        expected: "not MIPG",
        run: || {
            let f = catalog::constant_rose2_to_point();
            let v = f.classify().map_err(err)?;
            let s = if v.is_member(Category::Mipg) { "MIPG" } else { "not MIPG" };
            outcome(s, witness(&f, Predicate::Monotone)?)
        },
    },
    BuiltinExample {
        name: "square-not-monotone",
        about: "e2 -> e, e1 -> e e breaks the Cohn relation e2* e1 = 0",
        expected: "NotMonotone, e1* e2 = 0 becomes e*; e2* e1 = 0 becomes e",
        run: || {
            let f = catalog::not_monotone_rose2_to_loop();
            let rejected = match InducedHom::cohn(&f) {
                Err(AlgebraError::NotMonotone(_)) => "NotMonotone",
                Err(_) => "other error",
                Ok(_) => "accepted",
            };
            let broken: Vec<String> = verify_relations_preserved(&f, InducedKind::Cohn)
                .map_err(err)?
                .into_iter()
                .filter(|c| !c.holds() && c.relation.ends_with("= 0"))
                .map(|c| format!("{} becomes {}", c.relation, c.residual))
                .collect();
            outcome(format!("{rejected}, {}", broken.join("; ")), witness(&f, Predicate::Monotone)?)
        },
    },
    BuiltinExample {
        name: "edge-to-xy",
        about: "e -> x y into the line a -> b -> c",
        expected: "regular",
        run: || {
            let f = catalog::edge_to_xy();
            let r = f.is_regular().map_err(err)?;
            outcome(if r { "regular" } else { "not regular" }, "")
        },
    },
    BuiltinExample {
        name: "missing-branch",
        about: "branching map whose images miss x2 y1",
        expected: "not regular",
        run: || {
            let f = catalog::branching_missing();
            let r = f.is_regular().map_err(err)?;
            outcome(if r { "regular" } else { "not regular" }, witness(&f, Predicate::Regular)?)
        },
    },
    BuiltinExample {
        name: "star-into-loop",
        about: "star2 into star2 with a loop at the centre",
        expected: "not regular",
        run: || {
            let f = catalog::star_into_loop();
            let r = f.is_regular().map_err(err)?;
            outcome(if r { "regular" } else { "not regular" }, witness(&f, Predicate::Regular)?)
        },
    },
    BuiltinExample {
        name: "extended-lift",
        about: "e1 -> g, e2 -> e g lies in MIPG but its extended lift does not",
        expected: "MIPG, lift not monotone",
        run: || {
            let f = catalog::parallel_into_loop_exit();
            let v = f.classify().map_err(err)?;
            let lift = f.extended_lift();
            let detail = match lift.monotonicity_violation() {
                Some((a, b)) => format!(
                    "lift({}) = {} is a prefix of lift({}) = {}",
                    lift.dom().edge_name(a),
                    lift.fmt_edge_image(a),
                    lift.dom().edge_name(b),
                    lift.fmt_edge_image(b)
                ),
                None => String::new(),
            };
            outcome(
                format!(
                    "{}, lift {}",
                    if v.is_member(Category::Mipg) { "MIPG" } else { "not MIPG" },
                    if lift.is_monotone() { "monotone" } else { "not monotone" }
                ),
                detail,
            )
        },
    },
    BuiltinExample {
        name: "line-to-cycle",
        about: "line3 into cycle3 on the matrix units of L(line3)",
        expected: "9 matrix units, 9 independent images",
        run: || {
            let f = catalog::line_to_cycle(3);
            let h = InducedHom::leavitt(&f).map_err(err)?;
            let g = f.dom().clone();
            let paths = g.paths_up_to(g.vertex_count());
            let mut units = 0;
            let mut images = BTreeSet::new();
            for a in &paths {
                for b in paths.iter().filter(|b| b.target() == a.target() && b.target().0 + 1 == g.vertex_count()) {
                    units += 1;
                    let m = h.source().monomial(Monomial {
                        alpha: a.clone(),
                        beta: b.clone(),
                    });
                    let img = h.apply(&m).map_err(err)?;
                    if img.terms().len() == 1 {
                        images.insert(img.terms().keys().next().cloned());
                    }
                }
            }
            outcome(format!("{units} matrix units, {} independent images", images.len()), "")
        },
    },
    BuiltinExample {
        name: "rp2q-pullback",
        about: "the quantum real projective plane square at bound 4",
        expected: "PASS_UP_TO_BOUND, commutes, 25/25 kernel elements lifted",
        run: || {
            let inst = catalog::rp2q_instance(4);
            let r = check_hypotheses(&inst);
            let c = check_commutativity(&inst).map_err(err)?;
            let k = check_kernel_inclusion(&inst).map_err(err)?;
            let lifted = k.entries.iter().filter(|e| e.killed_by_pi1 && e.maps_back).count();
            outcome(
                format!(
                    "{}, {}, {lifted}/{} kernel elements lifted",
                    r.overall,
                    if c.commutes() { "commutes" } else { "does not commute" },
                    k.entries.len()
                ),
                "",
            )
        },
    },
    BuiltinExample {
        name: "rp2q-no-exit",
        about: "rp2q with the exits of the loop removed",
        expected: "FAIL at H2",
        run: || first_failure(catalog::rp2q_mutation_no_exit()),
    },
    BuiltinExample {
        name: "rp2q-not-monotone",
        about: "rp2q with t -> e e f",
        expected: "FAIL at H3",
        run: || first_failure(catalog::rp2q_mutation_not_monotone()),
    },
    BuiltinExample {
        name: "rp2q-enlarged-f2",
        about: "rp2q with F2 enlarged to E2",
        expected: "FAIL at H5",
        run: || first_failure(catalog::rp2q_mutation_enlarged_f2()),
    },
    BuiltinExample {
        name: "loop-ghost",
        about: "e* e e in L(loop)",
        expected: "e",
        run: || eval_in(AlgebraContext::leavitt(Arc::new(catalog::loop_graph())), "e* e e"),
    },
    BuiltinExample {
        name: "loop-cohn",
        about: "e e* in C(loop) is irreducible",
        expected: "e e*",
        run: || eval_in(AlgebraContext::cohn(Arc::new(catalog::loop_graph())), "e e*"),
    },
    BuiltinExample {
        name: "loop-ck",
        about: "e e* - v in L(loop)",
        expected: "0",
        run: || eval_in(AlgebraContext::leavitt(Arc::new(catalog::loop_graph())), "e e* - v"),
    },
];

fn first_failure(inst: pathalg_core::pullback::PullbackInstance) -> Result<Outcome, String> {
    let r = check_hypotheses(&inst);
    let summary = match r.first_failure() {
        Some(h) => format!("{} at {h:?}", Status::Fail),
        None => r.overall.to_string(),
    };
    let detail = r.first_failure().map(|h| r.verdict(h).detail.clone()).unwrap_or_default();
    outcome(summary, detail)
}

pub fn find(name: &str) -> Option<&'static BuiltinExample> {
    EXAMPLES.iter().find(|e| e.name == name)
}
