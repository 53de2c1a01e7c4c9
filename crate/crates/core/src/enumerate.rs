//! Exhaustive enumeration of small graphs and of the path homomorphisms
//! between them.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::graph::{Graph, Path, VertexId};
use crate::morphism::PathHom;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = edges.iter().map(|&(s, t)| (p[s], p[t])).collect();
            e.sort();
            e
        })
        .min()
        .unwrap_or_default()
}

fn multisets(items: &[(usize, usize)], k: usize, from: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in from..items.len() {
        cur.push(items[i]);
        multisets(items, k, i, cur, out);
        cur.pop();
    }
}

fn graph_from(n: usize, edges: &[(usize, usize)]) -> Graph {
    let mut b = Graph::builder().vertices((0..n).map(|i| format!("v{i}")));
    for (i, &(s, t)) in edges.iter().enumerate() {
        b = b.edge(format!("e{i}"), format!("v{s}"), format!("v{t}"));
    }
    b.build().expect("enumerated graphs are valid")
}

/// All graphs with at most `max_vertices` vertices and `max_edges` edges, one
/// per isomorphism class, vertices named `v0, v1, …` and edges `e0, e1, …`.
pub fn small_graphs(max_vertices: usize, max_edges: usize) -> Vec<Arc<Graph>> {
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        let mut seen = BTreeSet::new();
        for k in 0..=max_edges {
            if n == 0 && k > 0 {
                break;
            }
            let mut sets = Vec::new();
            multisets(&pairs, k, 0, &mut Vec::new(), &mut sets);
            for s in sets {
                let c = canonical(&s, &perms);
                if seen.insert(c.clone()) {
                    out.push(Arc::new(graph_from(n, &c)));
                }
            }
        }
    }
    out
}

/// Paths of `g` of length at most `max_len`, grouped by `(source, target)`.
fn paths_by_ends(g: &Graph, max_len: usize) -> Vec<Vec<Vec<Path>>> {
    let n = g.vertex_count();
    let mut table = vec![vec![Vec::new(); n]; n];
    for p in g.paths_up_to(max_len) {
        table[p.source().0][p.target().0].push(p);
    }
    table
}

fn injections(n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for x in 0..m {
        if !cur.contains(&x) {
            cur.push(x);
            injections(n, m, cur, out);
            cur.pop();
        }
    }
}

/// Every vertex-injective path homomorphism `dom → cod` whose edge images
/// have length at most `max_len`.
pub fn injective_morphisms(dom: &Arc<Graph>, cod: &Arc<Graph>, max_len: usize) -> Vec<PathHom> {
    let mut vmaps = Vec::new();
    injections(dom.vertex_count(), cod.vertex_count(), &mut Vec::new(), &mut vmaps);
    let table = paths_by_ends(cod, max_len);
    let mut out = Vec::new();
    for vm in vmaps {
        let choices: Vec<&Vec<Path>> = dom
            .edges()
            .map(|e| &table[vm[dom.src(e).0]][vm[dom.tgt(e).0]])
            .collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; choices.len()];
        loop {
            let emap = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
            let vmap = vm.iter().map(|&x| VertexId(x)).collect();
            out.push(PathHom::new(dom.clone(), cod.clone(), vmap, emap).expect("endpoints match"));
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out
}
