//! Algebra homomorphisms induced by path homomorphisms.

use std::sync::Arc;

use super::{AlgebraContext, AlgebraElement, AlgebraError, Letter, Monomial};
use crate::morphism::PathHom;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InducedKind {
    Path,
    Cohn,
    Leavitt,
}

impl InducedKind {
    pub fn context(self, g: Arc<crate::graph::Graph>) -> Result<Arc<AlgebraContext>, AlgebraError> {
        match self {
            InducedKind::Path => AlgebraContext::path(g),
            InducedKind::Cohn => AlgebraContext::cohn(g),
            InducedKind::Leavitt => AlgebraContext::leavitt(g),
        }
    }
}

/// `f_*` between the path, Cohn or Leavitt algebras of domain and codomain.
#[derive(Debug, Clone)]
pub struct InducedHom {
    f: PathHom,
    kind: InducedKind,
    src: Arc<AlgebraContext>,
    dst: Arc<AlgebraContext>,
}

impl InducedHom {
    /// Checks the preconditions for `kind` and builds `f_*`. Vertex
    /// injectivity is required in every case, monotonicity for Cohn and
    /// Leavitt, regularity for Leavitt.
    pub fn new(f: &PathHom, kind: InducedKind) -> Result<Self, AlgebraError> {
        let verdict = f.classify()?;
        if !verdict.vertex_injective {
            let w = &verdict.witnesses[&crate::morphism::Predicate::VertexInjective];
            return Err(AlgebraError::NotVertexInjective(w.describe(f)));
        }
        if kind != InducedKind::Path && !verdict.monotone {
            let w = &verdict.witnesses[&crate::morphism::Predicate::Monotone];
            return Err(AlgebraError::NotMonotone(w.describe(f)));
        }
        if kind == InducedKind::Leavitt && !verdict.regular {
            let w = &verdict.witnesses[&crate::morphism::Predicate::Regular];
            return Err(AlgebraError::NotRegular(w.describe(f)));
        }
        Ok(InducedHom {
            f: f.clone(),
            kind,
            src: kind.context(f.dom().clone())?,
            dst: kind.context(f.cod().clone())?,
        })
    }

    pub fn path(f: &PathHom) -> Result<Self, AlgebraError> {
        Self::new(f, InducedKind::Path)
    }

    pub fn cohn(f: &PathHom) -> Result<Self, AlgebraError> {
        Self::new(f, InducedKind::Cohn)
    }

    pub fn leavitt(f: &PathHom) -> Result<Self, AlgebraError> {
        Self::new(f, InducedKind::Leavitt)
    }

    pub fn kind(&self) -> InducedKind {
        self.kind
    }

    pub fn source(&self) -> &Arc<AlgebraContext> {
        &self.src
    }

    pub fn target(&self) -> &Arc<AlgebraContext> {
        &self.dst
    }

    pub fn morphism(&self) -> &PathHom {
        &self.f
    }

    /// `S_α S_β* ↦ S_{f(α)} S_{f(β)}*`, extended linearly.
    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if **a.context() != *self.src {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut out = self.dst.zero();
        for (m, c) in a.terms() {
            let image = Monomial {
                alpha: self.f.apply(&m.alpha),
                beta: self.f.apply(&m.beta),
            };
            out = out.add(&self.dst.monomial_with(image, c.clone()))?;
        }
        Ok(out)
    }

    pub fn generator_image(&self, l: Letter) -> Result<AlgebraElement, AlgebraError> {
        generator_image(&self.f, &self.dst, l)
    }
}

fn generator_image(
    f: &PathHom,
    dst: &Arc<AlgebraContext>,
    l: Letter,
) -> Result<AlgebraElement, AlgebraError> {
    match l {
        Letter::Vertex(v) => Ok(dst.vertex(f.vertex_image(v))),
        Letter::Edge(e) => Ok(dst.path_element(f.edge_image(e))),
        Letter::Ghost(e) => dst.path_element(f.edge_image(e)).star(),
    }
}

pub fn induce_path(f: &PathHom, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    InducedHom::path(f)?.apply(a)
}

pub fn induce_cohn(f: &PathHom, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    InducedHom::cohn(f)?.apply(a)
}

pub fn induce_leavitt(f: &PathHom, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    InducedHom::leavitt(f)?.apply(a)
}

/// One defining relation `lhs = rhs` of the domain algebra and the image of
/// `lhs - rhs` under the generator assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    pub residual: AlgebraElement,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Sends every generator of the domain algebra to its image and evaluates
/// each defining relation there, without any precondition on `f`. Returns
/// one entry per relation, in a fixed order.
pub fn verify_relations_preserved(
    f: &PathHom,
    kind: InducedKind,
) -> Result<Vec<RelationCheck>, AlgebraError> {
    let dst = kind.context(f.cod().clone())?;
    let src = kind.context(f.dom().clone())?;
    let d = f.dom();
    let img = |l: Letter| generator_image(f, &dst, l);
    let word = |ls: &[Letter]| -> Result<AlgebraElement, AlgebraError> {
        let mut acc = dst.one();
        for &l in ls {
            acc = acc.mul(&img(l)?)?;
        }
        Ok(acc)
    };
    let mut out = Vec::new();
    let mut push = |relation: String, residual: AlgebraElement| {
        out.push(RelationCheck { relation, residual });
    };
    for v in d.vertices() {
        for w in d.vertices() {
            let lhs = word(&[Letter::Vertex(v), Letter::Vertex(w)])?;
            let (rhs, text) = if v == w {
                (img(Letter::Vertex(v))?, d.vertex_name(v).to_string())
            } else {
                (dst.zero(), "0".to_string())
            };
            push(
                format!("{} {} = {text}", d.vertex_name(v), d.vertex_name(w)),
                lhs.sub(&rhs)?,
            );
        }
    }
    for e in d.edges() {
        let (s, t, n) = (d.src(e), d.tgt(e), d.edge_name(e));
        let ee = Letter::Edge(e);
        let se = img(ee)?;
        push(
            format!("{} {n} = {n}", d.vertex_name(s)),
            word(&[Letter::Vertex(s), ee])?.sub(&se)?,
        );
        push(
            format!("{n} {} = {n}", d.vertex_name(t)),
            word(&[ee, Letter::Vertex(t)])?.sub(&se)?,
        );
        if kind != InducedKind::Path {
            let g = Letter::Ghost(e);
            let sg = img(g)?;
            push(
                format!("{} {n}* = {n}*", d.vertex_name(t)),
                word(&[Letter::Vertex(t), g])?.sub(&sg)?,
            );
            push(
                format!("{n}* {} = {n}*", d.vertex_name(s)),
                word(&[g, Letter::Vertex(s)])?.sub(&sg)?,
            );
        }
    }
    if kind != InducedKind::Path {
        for e in d.edges() {
            for e2 in d.edges() {
                let lhs = word(&[Letter::Ghost(e), Letter::Edge(e2)])?;
                let (rhs, text) = if e == e2 {
                    (img(Letter::Vertex(d.tgt(e)))?, d.vertex_name(d.tgt(e)).to_string())
                } else {
                    (dst.zero(), "0".to_string())
                };
                push(
                    format!("{}* {} = {text}", d.edge_name(e), d.edge_name(e2)),
                    lhs.sub(&rhs)?,
                );
            }
        }
        for v in src.relation_vertices() {
            let mut lhs = dst.zero();
            let mut names = Vec::new();
            for &e in d.out_edges(v) {
                lhs = lhs.add(&word(&[Letter::Edge(e), Letter::Ghost(e)])?)?;
                names.push(format!("{0} {0}*", d.edge_name(e)));
            }
            push(
                format!("{} = {}", names.join(" + "), d.vertex_name(v)),
                lhs.sub(&img(Letter::Vertex(v))?)?,
            );
        }
    }
    Ok(out)
}

/// Whether `f_*` is unital on the finite-vertex algebras: `f_*(1) = 1`.
pub fn is_unital(h: &InducedHom) -> Result<bool, AlgebraError> {
    Ok(h.apply(&h.src.one())? == h.dst.one())
}
