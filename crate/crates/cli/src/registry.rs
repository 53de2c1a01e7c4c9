//! Built-in graphs, morphisms, inclusions and pullback instances, addressable
//! by name from the command line.

use pathalg_core::admissible::GraphInclusion;
use pathalg_core::catalog;
use pathalg_core::pullback::PullbackInstance;
use pathalg_core::{Graph, PathHom};

pub struct Builtin<T> {
    pub name: &'static str,
    pub about: &'static str,
    pub build: fn() -> T,
}

pub const GRAPHS: &[Builtin<Graph>] = &[
    Builtin { name: "point", about: "one vertex, no edges", build: catalog::point },
    Builtin { name: "loop", about: "one vertex v with a loop e", build: catalog::loop_graph },
    Builtin { name: "rose2", about: "one vertex v with loops e1, e2", build: catalog::rose2 },
    Builtin { name: "edge", about: "e: v -> w", build: catalog::edge_graph },
    Builtin { name: "line2", about: "v1 -> v2", build: || catalog::line(2) },
    Builtin { name: "line3", about: "v1 -> v2 -> v3", build: || catalog::line(3) },
    Builtin { name: "line4", about: "v1 -> ... -> v4", build: || catalog::line(4) },
    Builtin { name: "line5", about: "v1 -> ... -> v5", build: || catalog::line(5) },
    Builtin { name: "cycle3", about: "v1 -> v2 -> v3 -> v1", build: || catalog::cycle(3) },
    Builtin { name: "two-cycle", about: "e1: v -> w, e2: w -> v", build: catalog::two_cycle },
    Builtin { name: "line-xy", about: "a -x-> b -y-> c", build: catalog::line_xy },
    Builtin { name: "star2", about: "f1: v -> w1, f2: v -> w2", build: catalog::star2 },
    Builtin { name: "star2-loop", about: "star2 with a loop u at v", build: catalog::star2_loop },
    Builtin {
        name: "branching-source",
        about: "e0: v -> u, e1, e2: v -> w",
        build: catalog::branching_source,
    },
    Builtin {
        name: "branching-target",
        about: "x1, x2: v -> m, y1: m -> u, y2: m -> w",
        build: catalog::branching_target,
    },
    Builtin { name: "parallel-pair", about: "e1, e2: v -> w", build: catalog::parallel_pair },
    Builtin { name: "loop-with-exit", about: "loop e at v, g: v -> w", build: catalog::loop_with_exit },
    Builtin { name: "rp2q-e1", about: "loop s at v, r, t: v -> w", build: catalog::rp2q_e1 },
    Builtin { name: "rp2q-e2", about: "Toeplitz graph: loop e at v, f: v -> w", build: catalog::rp2q_e2 },
    Builtin { name: "rp2q-f1", about: "the loop s of rp2q-e1", build: catalog::rp2q_f1 },
    Builtin { name: "rp2q-f2", about: "the loop e of rp2q-e2", build: catalog::rp2q_f2 },
    Builtin {
        name: "infinite-emitter",
        about: "loop a at v, v emits infinitely many edges into w",
        build: catalog::infinite_emitter_graph,
    },
];

pub const MORPHISMS: &[Builtin<PathHom>] = &[
    Builtin { name: "loop-to-point", about: "e -> v", build: catalog::constant_loop_to_point },
    Builtin { name: "rose2-to-point", about: "e1, e2 -> v", build: catalog::constant_rose2_to_point },
    Builtin { name: "rose2-square", about: "e1 -> e e, e2 -> e", build: catalog::not_monotone_rose2_to_loop },
    Builtin { name: "edge-to-xy", about: "e -> x y", build: catalog::edge_to_xy },
    Builtin {
        name: "branching-missing",
        about: "e0 -> x1 y1, e1 -> x1 y2, e2 -> x2 y2",
        build: catalog::branching_missing,
    },
    Builtin { name: "star-into-loop", about: "star2 into star2-loop", build: catalog::star_into_loop },
    Builtin {
        name: "parallel-into-loop-exit",
        about: "e1 -> g, e2 -> e g",
        build: catalog::parallel_into_loop_exit,
    },
    Builtin { name: "rp2q-phi", about: "s -> e e, r -> f, t -> e f", build: catalog::rp2q_phi },
    Builtin { name: "rp2q-phi-res", about: "s -> e e", build: catalog::rp2q_phi_res },
    Builtin { name: "line-to-cycle3", about: "line3 into cycle3", build: || catalog::line_to_cycle(3) },
];

pub const INCLUSIONS: &[Builtin<GraphInclusion>] = &[
    Builtin { name: "rp2q-pi1", about: "rp2q-f1 into rp2q-e1", build: catalog::rp2q_pi1 },
    Builtin { name: "rp2q-pi2", about: "rp2q-f2 into rp2q-e2", build: catalog::rp2q_pi2 },
];

pub const INSTANCES: &[Builtin<PullbackInstance>] = &[
    Builtin { name: "rp2q", about: "the quantum real projective plane square", build: || catalog::rp2q_instance(6) },
    Builtin {
        name: "rp2q-no-exit",
        about: "rp2q with the exits of s removed",
        build: catalog::rp2q_mutation_no_exit,
    },
    Builtin {
        name: "rp2q-not-monotone",
        about: "rp2q with t -> e e f",
        build: catalog::rp2q_mutation_not_monotone,
    },
    Builtin {
        name: "rp2q-enlarged-f2",
        about: "rp2q with F2 = E2",
        build: catalog::rp2q_mutation_enlarged_f2,
    },
];

pub fn find<T>(table: &[Builtin<T>], name: &str) -> Option<T> {
    table.iter().find(|b| b.name == name).map(|b| (b.build)())
}
