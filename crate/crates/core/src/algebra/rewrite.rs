//! A word-level rewriting system for the same algebras, independent of the
//! monomial multiplication in the parent module.
//!
//! Words are reduced one redex at a time with the defining relations read
//! left to right. The caller picks which word and which redex to rewrite, so
//! random choices exercise confluence.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{AlgebraContext, AlgebraElement, AlgebraError, GeneratorWord, Letter, Monomial, Scalar};
use crate::graph::{Graph, Path};

enum Step {
    Zero,
    Replace(Vec<(Scalar, Vec<Letter>)>),
}

fn letter_src(g: &Graph, l: Letter) -> crate::graph::VertexId {
    match l {
        Letter::Vertex(v) => v,
        Letter::Edge(e) => g.src(e),
        Letter::Ghost(e) => g.tgt(e),
    }
}

fn letter_tgt(g: &Graph, l: Letter) -> crate::graph::VertexId {
    match l {
        Letter::Vertex(v) => v,
        Letter::Edge(e) => g.tgt(e),
        Letter::Ghost(e) => g.src(e),
    }
}

/// The rewrite for the pair `(a, b)`, if it is a redex.
fn redex(ctx: &AlgebraContext, a: Letter, b: Letter) -> Option<Step> {
    let g = ctx.graph();
    if letter_tgt(g, a) != letter_src(g, b) {
        return Some(Step::Zero);
    }
    match (a, b) {
        (Letter::Vertex(_), _) => Some(Step::Replace(vec![(Scalar::one(), vec![b])])),
        (_, Letter::Vertex(_)) => Some(Step::Replace(vec![(Scalar::one(), vec![a])])),
        (Letter::Ghost(e), Letter::Edge(f)) => {
            if e == f {
                Some(Step::Replace(vec![(Scalar::one(), vec![Letter::Vertex(g.tgt(e))])]))
            } else {
                Some(Step::Zero)
            }
        }
        (Letter::Edge(e), Letter::Ghost(f)) if e == f => {
            let w = g.src(e);
            if ctx.special_edge(w) != Some(e) {
                return None;
            }
            let mut out = vec![(Scalar::one(), vec![Letter::Vertex(w)])];
            for &h in g.out_edges(w) {
                if h != e {
                    out.push((-Scalar::one(), vec![Letter::Edge(h), Letter::Ghost(h)]));
                }
            }
            Some(Step::Replace(out))
        }
        _ => None,
    }
}

fn redexes(ctx: &AlgebraContext, w: &[Letter]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| redex(ctx, w[i], w[i + 1]).is_some())
        .collect()
}

/// Reads an irreducible word as a monomial `S_α S_β*`.
fn to_monomial(ctx: &AlgebraContext, w: &[Letter]) -> Monomial {
    let g = ctx.graph();
    if let [Letter::Vertex(v)] = w {
        return Monomial::vertex(*v);
    }
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for &l in w {
        match l {
            Letter::Edge(e) => alpha.push(e),
            Letter::Ghost(e) => beta.push(e),
            Letter::Vertex(_) => unreachable!("vertices do not survive in longer words"),
        }
    }
    beta.reverse();
    let mid = match (alpha.last(), beta.last()) {
        (Some(&e), _) => g.tgt(e),
        (None, Some(&e)) => g.tgt(e),
        (None, None) => unreachable!("empty words are expanded before rewriting"),
    };
    let alpha = if alpha.is_empty() {
        Path::vertex(mid)
    } else {
        g.path(alpha).expect("irreducible words are composable")
    };
    let beta = if beta.is_empty() {
        Path::vertex(mid)
    } else {
        g.path(beta).expect("irreducible words are composable")
    };
    Monomial { alpha, beta }
}

/// Reduces `word` to a combination of irreducible words. `choose(n)` must
/// return an index below `n`; it selects the word and then the redex to
/// rewrite at every step.
pub fn rewrite_word(
    ctx: &Arc<AlgebraContext>,
    word: &GeneratorWord,
    mut choose: impl FnMut(usize) -> usize,
) -> Result<AlgebraElement, AlgebraError> {
    if ctx.is_path_mode() && word.letters.iter().any(|l| matches!(l, Letter::Ghost(_))) {
        return Err(AlgebraError::StarInPathMode);
    }
    let mut pending: BTreeMap<Vec<Letter>, Scalar> = BTreeMap::new();
    if word.letters.is_empty() {
        for v in ctx.graph().vertices() {
            pending.insert(vec![Letter::Vertex(v)], word.coeff.clone());
        }
    } else {
        pending.insert(word.letters.clone(), word.coeff.clone());
    }
    let mut done: Vec<(Monomial, Scalar)> = Vec::new();
    loop {
        pending.retain(|_, c| !c.is_zero());
        let mut irreducible = Vec::new();
        for w in pending.keys() {
            if redexes(ctx, w).is_empty() {
                irreducible.push(w.clone());
            }
        }
        for w in irreducible {
            let c = pending.remove(&w).expect("present");
            done.push((to_monomial(ctx, &w), c));
        }
        if pending.is_empty() {
            break;
        }
        let k = choose(pending.len());
        let w = pending.keys().nth(k).expect("choice in range").clone();
        let c = pending.remove(&w).expect("present");
        let spots = redexes(ctx, &w);
        let i = spots[choose(spots.len())];
        match redex(ctx, w[i], w[i + 1]).expect("redex") {
            Step::Zero => {}
            Step::Replace(parts) => {
                for (d, mid) in parts {
                    let mut next = w[..i].to_vec();
                    next.extend(mid);
                    next.extend_from_slice(&w[i + 2..]);
                    *pending.entry(next).or_insert_with(Scalar::zero) += &c * d;
                }
            }
        }
    }
    Ok(AlgebraElement::from_normal_terms(ctx, done))
}

/// Leftmost-innermost reduction.
pub fn rewrite_leftmost(
    ctx: &Arc<AlgebraContext>,
    word: &GeneratorWord,
) -> Result<AlgebraElement, AlgebraError> {
    rewrite_word(ctx, word, |_| 0)
}
