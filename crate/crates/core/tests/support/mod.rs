//! Independent oracles and exhaustive sweeps shared by the test suites.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use pathalg_core::algebra::induced::{verify_relations_preserved, InducedHom, InducedKind};
use pathalg_core::algebra::rewrite::rewrite_word;
use pathalg_core::algebra::{normal_form, AlgebraContext, AlgebraElement, GeneratorWord, Letter, Scalar};
use pathalg_core::enumerate::{injective_morphisms, small_graphs};
use pathalg_core::graph::prefix_leq;
use pathalg_core::{compose, EdgeId, Graph, PathHom, VertexId};
use rand::Rng;

/// A word that mostly follows the graph, so products are often nonzero.
pub fn random_word(ctx: &AlgebraContext, rng: &mut impl Rng, max_len: usize) -> GeneratorWord {
    let g = ctx.graph();
    let n = g.vertex_count();
    let len = rng.random_range(0..=max_len);
    let ghosts = !ctx.is_path_mode();
    let mut letters = Vec::with_capacity(len);
    if n == 0 {
        return GeneratorWord::new(letters);
    }
    let mut at = VertexId(rng.random_range(0..n));
    for _ in 0..len {
        let mut options: Vec<Letter> = vec![Letter::Vertex(at)];
        options.extend(g.out_edges(at).iter().map(|&e| Letter::Edge(e)));
        if ghosts {
            options.extend(g.in_edges(at).iter().map(|&e| Letter::Ghost(e)));
        }
        let l = if rng.random_bool(0.1) || options.len() == 1 && g.edge_count() > 0 && rng.random_bool(0.3) {
            match rng.random_range(0..3) {
                0 => Letter::Vertex(VertexId(rng.random_range(0..n))),
                1 if ghosts && g.edge_count() > 0 => Letter::Ghost(EdgeId(rng.random_range(0..g.edge_count()))),
                _ if g.edge_count() > 0 => Letter::Edge(EdgeId(rng.random_range(0..g.edge_count()))),
                _ => Letter::Vertex(at),
            }
        } else {
            options[rng.random_range(0..options.len())]
        };
        at = match l {
            Letter::Vertex(v) => v,
            Letter::Edge(e) => g.tgt(e),
            Letter::Ghost(e) => g.src(e),
        };
        letters.push(l);
    }
    GeneratorWord::new(letters)
}

pub type Matrix = Vec<Vec<Scalar>>;

fn zero_matrix(n: usize) -> Matrix {
    vec![vec![Scalar::zero(); n]; n]
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = zero_matrix(n);
    m[i][j] = Scalar::one();
    m
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = zero_matrix(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                c[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    c
}

/// `P_vi ↦ E_ii`, `S_e ↦ E_{s(e),t(e)}`, `S_e* ↦ E_{t(e),s(e)}`.
fn letter_matrix(g: &Graph, l: Letter) -> Matrix {
    let n = g.vertex_count();
    match l {
        Letter::Vertex(v) => unit(n, v.0, v.0),
        Letter::Edge(e) => unit(n, g.src(e).0, g.tgt(e).0),
        Letter::Ghost(e) => unit(n, g.tgt(e).0, g.src(e).0),
    }
}

/// `Σ c S_α S_β* ↦ Σ c E_{s(α),s(β)}`.
fn element_matrix(a: &AlgebraElement) -> Matrix {
    let n = a.context().graph().vertex_count();
    let mut m = zero_matrix(n);
    for (mono, c) in a.terms() {
        m[mono.alpha.source().0][mono.beta.source().0] += c;
    }
    m
}

/// Compares normal forms in `L(A_n)` against matrix products in `M_n(ℚ)`.
/// Returns the number of mismatches.
pub fn matrix_oracle(n: usize, samples: usize, max_len: usize, rng: &mut impl Rng) -> usize {
    let g = Arc::new(pathalg_core::catalog::line(n));
    let ctx = AlgebraContext::leavitt(g.clone()).unwrap();
    let mut bad = 0;
    // the normal-form basis must map bijectively onto the matrix units
    let basis: Vec<_> = {
        let paths = g.paths_up_to(n);
        let mut out = Vec::new();
        for a in &paths {
            for b in &paths {
                if a.target() == b.target() {
                    let m = pathalg_core::Monomial { alpha: a.clone(), beta: b.clone() };
                    if ctx.is_normal(&m) {
                        out.push((a.source().0, b.source().0));
                    }
                }
            }
        }
        out
    };
    let mut sorted = basis.clone();
    sorted.sort();
    sorted.dedup();
    if basis.len() != n * n || sorted.len() != n * n {
        bad += 1;
    }
    for _ in 0..samples {
        let w = random_word(&ctx, rng, max_len);
        let nf = normal_form(&ctx, &w).unwrap();
        let mut want = zero_matrix(n);
        for (i, row) in want.iter_mut().enumerate() {
            row[i] = Scalar::one();
        }
        for &l in &w.letters {
            want = matmul(&want, &letter_matrix(&g, l));
        }
        if element_matrix(&nf) != want {
            bad += 1;
        }
    }
    bad
}

/// Compares normal forms in `L(loop)` against Laurent monomials `x^k`.
pub fn laurent_oracle(samples: usize, max_len: usize, rng: &mut impl Rng) -> usize {
    let g = Arc::new(pathalg_core::catalog::loop_graph());
    let ctx = AlgebraContext::leavitt(g).unwrap();
    let mut bad = 0;
    for _ in 0..samples {
        let len = rng.random_range(0..=max_len);
        let letters: Vec<Letter> = (0..len)
            .map(|_| match rng.random_range(0..3) {
                0 => Letter::Vertex(VertexId(0)),
                1 => Letter::Edge(EdgeId(0)),
                _ => Letter::Ghost(EdgeId(0)),
            })
            .collect();
        let degree: i64 = letters
            .iter()
            .map(|l| match l {
                Letter::Vertex(_) => 0,
                Letter::Edge(_) => 1,
                Letter::Ghost(_) => -1,
            })
            .sum();
        let nf = normal_form(&ctx, &GeneratorWord::new(letters)).unwrap();
        let mut poly: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (m, c) in nf.terms() {
            *poly.entry(m.alpha.len() as i64 - m.beta.len() as i64).or_insert_with(Scalar::zero) += c;
        }
        poly.retain(|_, c| !c.is_zero());
        let want = BTreeMap::from([(degree, Scalar::one())]);
        if poly != want || nf.terms().len() != 1 {
            bad += 1;
        }
    }
    bad
}

/// Product of the word's letters under a random bracketing.
fn reassociated(ctx: &Arc<AlgebraContext>, letters: &[Letter], rng: &mut impl Rng) -> AlgebraElement {
    match letters.len() {
        0 => ctx.one(),
        1 => ctx.generator(letters[0]).unwrap(),
        n => {
            let k = rng.random_range(1..n);
            let a = reassociated(ctx, &letters[..k], rng);
            let b = reassociated(ctx, &letters[k..], rng);
            a.mul(&b).unwrap()
        }
    }
}

/// Normal forms against random bracketings and random reduction orders of
/// the independent word rewriter.
pub fn confluence_mismatches(ctx: &Arc<AlgebraContext>, samples: usize, max_len: usize, rng: &mut impl Rng) -> usize {
    let mut bad = 0;
    for _ in 0..samples {
        let w = random_word(ctx, rng, max_len);
        let nf = normal_form(ctx, &w).unwrap();
        if reassociated(ctx, &w.letters, rng) != nf {
            bad += 1;
            continue;
        }
        let seed: u64 = rng.random();
        let mut r = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        if rewrite_word(ctx, &w, |n| r.random_range(0..n)).unwrap() != nf {
            bad += 1;
        }
    }
    bad
}

/// Reflexivity, antisymmetry and transitivity of `⪯` on paths of length
/// at most `max_len`, checked exhaustively.
pub fn prefix_order_violations(g: &Graph, max_len: usize) -> usize {
    let paths = g.paths_up_to(max_len);
    let mut bad = 0;
    for a in &paths {
        if !prefix_leq(a, a) {
            bad += 1;
        }
        for b in &paths {
            let ab = prefix_leq(a, b);
            if ab && prefix_leq(b, a) && a != b {
                bad += 1;
            }
            if !ab {
                continue;
            }
            for c in &paths {
                if prefix_leq(b, c) && !prefix_leq(a, c) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

pub struct Sweep {
    pub checked: usize,
    pub violations: Vec<String>,
}

struct Space {
    graphs: Vec<Arc<Graph>>,
    /// `(morphism, regular)` for every MIPG morphism, indexed by codomain.
    into: Vec<Vec<(PathHom, bool)>>,
    /// The same morphisms indexed by domain.
    out_of: Vec<Vec<(PathHom, bool)>>,
}

fn mipg_space(max_v: usize, max_e: usize, max_len: usize) -> Space {
    let graphs = small_graphs(max_v, max_e);
    let mut into = vec![Vec::new(); graphs.len()];
    let mut out_of = vec![Vec::new(); graphs.len()];
    for (i, a) in graphs.iter().enumerate() {
        for (j, b) in graphs.iter().enumerate() {
            if a.vertex_count() > b.vertex_count() {
                continue;
            }
            for f in injective_morphisms(a, b, max_len) {
                let v = f.classify().unwrap();
                if v.monotone {
                    into[j].push((f.clone(), v.regular));
                    out_of[i].push((f, v.regular));
                }
            }
        }
    }
    Space { graphs, into, out_of }
}

fn name(f: &PathHom) -> String {
    let d = f.dom();
    let parts: Vec<String> = d
        .edges()
        .map(|e| format!("{}->{}", d.edge_name(e), f.fmt_edge_image(e)))
        .collect();
    format!("[{}]", parts.join(", "))
}

/// Composites of MIPG (resp. RMIPG) pairs stay in MIPG (resp. RMIPG).
pub fn closure_sweep(max_v: usize, max_e: usize, max_len: usize) -> Sweep {
    let space = mipg_space(max_v, max_e, max_len);
    let mut checked = 0;
    let mut violations = Vec::new();
    for b in 0..space.graphs.len() {
        for (f, rf) in &space.into[b] {
            for (g, rg) in &space.out_of[b] {
                checked += 1;
                let h = compose(g, f).unwrap();
                if !h.is_vertex_injective() || !h.is_monotone() {
                    violations.push(format!("MIPG: {} then {}", name(f), name(g)));
                }
                if *rf && *rg && !h.is_regular().unwrap() {
                    violations.push(format!("RMIPG: {} then {}", name(f), name(g)));
                }
            }
        }
    }
    Sweep { checked, violations }
}

/// Relation preservation for every RMIPG morphism, and `(g∘f)_* = g_* f_*`
/// on generators for every composable RMIPG pair, in the Leavitt algebras.
pub fn induced_law_sweep(max_v: usize, max_e: usize, max_len: usize) -> Sweep {
    let space = mipg_space(max_v, max_e, max_len);
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut induced: Vec<Vec<(PathHom, InducedHom)>> = vec![Vec::new(); space.graphs.len()];
    let mut induced_out: Vec<Vec<(PathHom, InducedHom)>> = vec![Vec::new(); space.graphs.len()];
    for (b, list) in space.into.iter().enumerate() {
        for (f, regular) in list {
            if !regular {
                continue;
            }
            checked += 1;
            for kind in [InducedKind::Cohn, InducedKind::Leavitt] {
                let bad: Vec<String> = verify_relations_preserved(f, kind)
                    .unwrap()
                    .into_iter()
                    .filter(|c| !c.holds())
                    .map(|c| c.relation)
                    .collect();
                if !bad.is_empty() {
                    violations.push(format!("{kind:?} relations {bad:?} fail for {}", name(f)));
                }
            }
            let h = InducedHom::leavitt(f).unwrap();
            induced[b].push((f.clone(), h.clone()));
            let a = space.graphs.iter().position(|g| g == f.dom()).unwrap();
            induced_out[a].push((f.clone(), h));
        }
    }
    for b in 0..space.graphs.len() {
        for (f, fs) in &induced[b] {
            let gens = generators(fs.source());
            let images: Vec<AlgebraElement> = gens.iter().map(|x| fs.apply(x).unwrap()).collect();
            for (g, gs) in &induced_out[b] {
                checked += 1;
                let hs = InducedHom::leavitt(&compose(g, f).unwrap()).unwrap();
                for (x, fx) in gens.iter().zip(&images) {
                    if hs.apply(x).unwrap() != gs.apply(fx).unwrap() {
                        violations.push(format!("functoriality: {} then {} at {x}", name(f), name(g)));
                        break;
                    }
                }
            }
        }
    }
    Sweep { checked, violations }
}

pub fn generators(ctx: &Arc<AlgebraContext>) -> Vec<AlgebraElement> {
    let g = ctx.graph();
    let mut out: Vec<AlgebraElement> = g.vertices().map(|v| ctx.vertex(v)).collect();
    for e in g.edges() {
        out.push(ctx.edge(e));
        if !ctx.is_path_mode() {
            out.push(ctx.ghost(e).unwrap());
        }
    }
    out
}
