//! Named graphs and morphisms used throughout the examples and tests.

use std::sync::Arc;

use crate::admissible::GraphInclusion;
use crate::graph::{EmitterSpec, Graph};
use crate::morphism::PathHom;
use crate::pullback::PullbackInstance;

fn build(b: crate::graph::GraphBuilder) -> Graph {
    b.build().expect("catalog graphs are valid")
}

/// One vertex, no edges.
pub fn point() -> Graph {
    build(Graph::builder().vertex("v"))
}

/// One vertex `v` with a loop `e`.
pub fn loop_graph() -> Graph {
    build(Graph::builder().vertex("v").edge("e", "v", "v"))
}

/// One vertex with two loops `e1`, `e2`.
pub fn rose2() -> Graph {
    build(
        Graph::builder()
            .vertex("v")
            .edge("e1", "v", "v")
            .edge("e2", "v", "v"),
    )
}

/// A single edge `e: v → w`.
pub fn edge_graph() -> Graph {
    build(Graph::builder().vertices(["v", "w"]).edge("e", "v", "w"))
}

/// The line `v1 → v2 → … → vn` with edges `e1 … e(n-1)`.
pub fn line(n: usize) -> Graph {
    let mut b = Graph::builder().vertices((1..=n).map(|i| format!("v{i}")));
    for i in 1..n {
        b = b.edge(format!("e{i}"), format!("v{i}"), format!("v{}", i + 1));
    }
    build(b)
}

/// The line of length `n - 1` closed up by `e{n}: vn → v1`.
pub fn cycle(n: usize) -> Graph {
    let mut b = Graph::builder().vertices((1..=n).map(|i| format!("v{i}")));
    for i in 1..=n {
        let next = if i == n { 1 } else { i + 1 };
        b = b.edge(format!("e{i}"), format!("v{i}"), format!("v{next}"));
    }
    build(b)
}

/// `e1: v → w`, `e2: w → v`.
pub fn two_cycle() -> Graph {
    build(
        Graph::builder()
            .vertices(["v", "w"])
            .edge("e1", "v", "w")
            .edge("e2", "w", "v"),
    )
}

/// `a -x-> b -y-> c`.
pub fn line_xy() -> Graph {
    build(
        Graph::builder()
            .vertices(["a", "b", "c"])
            .edge("x", "a", "b")
            .edge("y", "b", "c"),
    )
}

/// `f1: v → w1`, `f2: v → w2`.
pub fn star2() -> Graph {
    build(
        Graph::builder()
            .vertices(["v", "w1", "w2"])
            .edge("f1", "v", "w1")
            .edge("f2", "v", "w2"),
    )
}

/// [`star2`] with an extra loop `u` at `v`.
pub fn star2_loop() -> Graph {
    build(
        Graph::builder()
            .vertices(["v", "w1", "w2"])
            .edge("u", "v", "v")
            .edge("f1", "v", "w1")
            .edge("f2", "v", "w2"),
    )
}

/// `e0: v → u`, `e1, e2: v → w`.
pub fn branching_source() -> Graph {
    build(
        Graph::builder()
            .vertices(["u", "v", "w"])
            .edge("e0", "v", "u")
            .edge("e1", "v", "w")
            .edge("e2", "v", "w"),
    )
}

/// `x1, x2: v → m`, `y1: m → u`, `y2: m → w`.
pub fn branching_target() -> Graph {
    build(
        Graph::builder()
            .vertices(["v", "m", "u", "w"])
            .edge("x1", "v", "m")
            .edge("x2", "v", "m")
            .edge("y1", "m", "u")
            .edge("y2", "m", "w"),
    )
}

/// `e1, e2: v → w`.
pub fn parallel_pair() -> Graph {
    build(
        Graph::builder()
            .vertices(["v", "w"])
            .edge("e1", "v", "w")
            .edge("e2", "v", "w"),
    )
}

/// Loop `e` at `v` with exit `g: v → w`.
pub fn loop_with_exit() -> Graph {
    build(
        Graph::builder()
            .vertices(["v", "w"])
            .edge("e", "v", "v")
            .edge("g", "v", "w"),
    )
}

/// Loop `s` at `v` and two edges `r, t: v → w`.
pub fn rp2q_e1() -> Graph {
    build(
        Graph::builder()
            .vertices(["v", "w"])
            .edge("s", "v", "v")
            .edge("r", "v", "w")
            .edge("t", "v", "w"),
    )
}

/// Loop `e` at `v` and `f: v → w` (the Toeplitz graph).
pub fn rp2q_e2() -> Graph {
    build(
        Graph::builder()
            .vertices(["v", "w"])
            .edge("e", "v", "v")
            .edge("f", "v", "w"),
    )
}

/// The loop subgraph of [`rp2q_e1`].
pub fn rp2q_f1() -> Graph {
    build(Graph::builder().vertex("v").edge("s", "v", "v"))
}

/// The loop subgraph of [`rp2q_e2`].
pub fn rp2q_f2() -> Graph {
    build(Graph::builder().vertex("v").edge("e", "v", "v"))
}

/// `v` emits the listed loop `a` and infinitely many unlisted edges into `w`.
pub fn infinite_emitter_graph() -> Graph {
    build(
        Graph::builder()
            .vertices(["v", "w"])
            .edge("a", "v", "v")
            .infinite_emitter(EmitterSpec {
                vertex: "v".into(),
                unlisted_targets: Some(vec!["w".into()]),
            }),
    )
}

fn hom(dom: Graph, cod: Graph, vmap: &[(&str, &str)], emap: &[(&str, &[&str])]) -> PathHom {
    PathHom::from_names(Arc::new(dom), Arc::new(cod), vmap, emap)
        .expect("catalog morphisms are valid")
}

/// The only map from the loop to the point.
pub fn constant_loop_to_point() -> PathHom {
    hom(loop_graph(), point(), &[("v", "v")], &[("e", &["v"])])
}

pub fn constant_rose2_to_point() -> PathHom {
    hom(rose2(), point(), &[("v", "v")], &[("e1", &["v"]), ("e2", &["v"])])
}

/// `e2 ↦ e`, `e1 ↦ e e`: injective on edges but not monotone.
pub fn not_monotone_rose2_to_loop() -> PathHom {
    hom(
        rose2(),
        loop_graph(),
        &[("v", "v")],
        &[("e1", &["e", "e"]), ("e2", &["e"])],
    )
}

/// `v ↦ a`, `w ↦ c`, `e ↦ x y`.
pub fn edge_to_xy() -> PathHom {
    hom(
        edge_graph(),
        line_xy(),
        &[("v", "a"), ("w", "c")],
        &[("e", &["x", "y"])],
    )
}

/// `e0 ↦ x1 y1`, `e1 ↦ x1 y2`, `e2 ↦ x2 y2`; not regular.
pub fn branching_missing() -> PathHom {
    hom(
        branching_source(),
        branching_target(),
        &[("u", "u"), ("v", "v"), ("w", "w")],
        &[
            ("e0", &["x1", "y1"]),
            ("e1", &["x1", "y2"]),
            ("e2", &["x2", "y2"]),
        ],
    )
}

/// Identity-shaped map from [`star2`] into [`star2_loop`]; not regular.
pub fn star_into_loop() -> PathHom {
    hom(
        star2(),
        star2_loop(),
        &[("v", "v"), ("w1", "w1"), ("w2", "w2")],
        &[("f1", &["f1"]), ("f2", &["f2"])],
    )
}

/// `e1 ↦ g`, `e2 ↦ e g`: in MIPG, but its extended lift is not monotone.
pub fn parallel_into_loop_exit() -> PathHom {
    hom(
        parallel_pair(),
        loop_with_exit(),
        &[("v", "v"), ("w", "w")],
        &[("e1", &["g"]), ("e2", &["e", "g"])],
    )
}

/// `s ↦ e e`, `r ↦ f`, `t ↦ e f`.
pub fn rp2q_phi() -> PathHom {
    hom(
        rp2q_e1(),
        rp2q_e2(),
        &[("v", "v"), ("w", "w")],
        &[("s", &["e", "e"]), ("r", &["f"]), ("t", &["e", "f"])],
    )
}

/// The restriction of [`rp2q_phi`] to the loop subgraphs: `s ↦ e e`.
pub fn rp2q_phi_res() -> PathHom {
    hom(rp2q_f1(), rp2q_f2(), &[("v", "v")], &[("s", &["e", "e"])])
}

/// The line with `n` vertices included into the `n`-cycle.
pub fn line_to_cycle(n: usize) -> PathHom {
    let names: Vec<(String, String)> = (1..=n).map(|i| (format!("v{i}"), format!("v{i}"))).collect();
    let edges: Vec<String> = (1..n).map(|i| format!("e{i}")).collect();
    let vmap: Vec<(&str, &str)> = names.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let singles: Vec<[&str; 1]> = edges.iter().map(|e| [e.as_str()]).collect();
    let emap: Vec<(&str, &[&str])> = edges
        .iter()
        .zip(&singles)
        .map(|(e, img)| (e.as_str(), &img[..]))
        .collect();
    hom(line(n), cycle(n), &vmap, &emap)
}

/// The inclusion `F1 ↪ E1` of the loop at `v`.
pub fn rp2q_pi1() -> GraphInclusion {
    GraphInclusion::from_names(
        Arc::new(rp2q_f1()),
        Arc::new(rp2q_e1()),
        &[("v", "v")],
        &[("s", "s")],
    )
    .expect("catalog inclusions are valid")
}

/// The inclusion `F2 ↪ E2` of the loop at `v`.
pub fn rp2q_pi2() -> GraphInclusion {
    GraphInclusion::from_names(
        Arc::new(rp2q_f2()),
        Arc::new(rp2q_e2()),
        &[("v", "v")],
        &[("e", "e")],
    )
    .expect("catalog inclusions are valid")
}

/// The square realizing the quantum real projective plane as a pullback.
pub fn rp2q_instance(length_bound: usize) -> PullbackInstance {
    PullbackInstance::new(
        rp2q_pi1(),
        rp2q_pi2(),
        rp2q_phi(),
        rp2q_phi_res(),
        length_bound,
    )
    .expect("catalog instance is consistent")
}

/// [`rp2q_e1`] without the exit edges `r` and `t`: the loop `s` has no exit.
pub fn rp2q_mutation_no_exit() -> PullbackInstance {
    let e1 = Arc::new(build(
        Graph::builder().vertices(["v", "w"]).edge("s", "v", "v"),
    ));
    let e2 = Arc::new(rp2q_e2());
    let f = PathHom::from_names(e1.clone(), e2, &[("v", "v"), ("w", "w")], &[("s", &["e", "e"])])
        .expect("valid mutation");
    let pi1 = GraphInclusion::from_names(Arc::new(rp2q_f1()), e1, &[("v", "v")], &[("s", "s")])
        .expect("valid mutation");
    PullbackInstance::new(pi1, rp2q_pi2(), f, rp2q_phi_res(), 6).expect("consistent mutation")
}

/// `t ↦ e e f`, so that `f(s) = e e` is a prefix of `f(t)`.
pub fn rp2q_mutation_not_monotone() -> PullbackInstance {
    let f = hom(
        rp2q_e1(),
        rp2q_e2(),
        &[("v", "v"), ("w", "w")],
        &[("s", &["e", "e"]), ("r", &["f"]), ("t", &["e", "e", "f"])],
    );
    PullbackInstance::new(rp2q_pi1(), rp2q_pi2(), f, rp2q_phi_res(), 6).expect("consistent mutation")
}

/// `F₂` enlarged to all of `E₂`, so `w` lies in the image of `F₂` but its
/// preimage is outside `F₁`.
pub fn rp2q_mutation_enlarged_f2() -> PullbackInstance {
    let e2 = Arc::new(rp2q_e2());
    let pi2 = GraphInclusion::identity(e2.clone());
    let f_res = PathHom::from_names(Arc::new(rp2q_f1()), e2, &[("v", "v")], &[("s", &["e", "e"])])
        .expect("valid mutation");
    PullbackInstance::new(rp2q_pi1(), pi2, rp2q_phi(), f_res, 6).expect("consistent mutation")
}
