//! Graph inclusions, saturated and hereditary sets, admissibility, breaking
//! vertices, and the quotient map between Leavitt path algebras.
//!
//! Infinite emitters are handled symbolically. A flagged vertex emits its
//! listed edges plus infinitely many unlisted ones. When the annotation names
//! `unlisted_targets`, every unlisted edge lands in that set; without it the
//! targets are unknown and any vertex may receive them.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraContext, AlgebraElement, AlgebraError, Monomial};
use crate::graph::{EdgeId, Graph, GraphError, Path, VertexId};
use crate::morphism::PathHom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("no image given for `{0}`")]
    MissingImage(String),
    #[error("`{0}` and `{1}` have the same image")]
    NotInjective(String, String),
    #[error("image of edge `{0}` does not connect the images of its endpoints")]
    EndpointMismatch(String),
    #[error("unlisted edges of `{0}` have no room among the unlisted edges of its image")]
    UnlistedEdgesUnmapped(String),
    #[error("inclusion is not admissible: {0}")]
    NotAdmissible(String),
    #[error("cannot decide whether `{0}` is a breaking vertex: its unlisted edges may land on both sides")]
    AmbiguousInfiniteEmitter(String),
}

/// An injective graph homomorphism `sub ↪ amb`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInclusion {
    sub: Arc<Graph>,
    amb: Arc<Graph>,
    vmap: Vec<VertexId>,
    emap: Vec<EdgeId>,
}

/// Unlisted targets of a flagged vertex, `None` meaning "any vertex".
fn unlisted(g: &Graph, v: VertexId) -> Option<Option<&BTreeSet<VertexId>>> {
    g.infinite_emitter(v).map(|ie| ie.unlisted_targets.as_ref())
}

fn unlisted_meets(targets: Option<&BTreeSet<VertexId>>, set: &BTreeSet<VertexId>) -> Option<VertexId> {
    match targets {
        Some(t) => t.intersection(set).next().copied(),
        None => set.iter().next().copied(),
    }
}

impl GraphInclusion {
    pub fn new(
        sub: Arc<Graph>,
        amb: Arc<Graph>,
        vmap: Vec<VertexId>,
        emap: Vec<EdgeId>,
    ) -> Result<Self, AdmissibleError> {
        if vmap.len() != sub.vertex_count() || emap.len() != sub.edge_count() {
            return Err(AdmissibleError::MissingImage("sub".into()));
        }
        if let Some(v) = vmap.iter().find(|v| v.0 >= amb.vertex_count()) {
            return Err(GraphError::UnknownId(v.to_string()).into());
        }
        if let Some(e) = emap.iter().find(|e| e.0 >= amb.edge_count()) {
            return Err(GraphError::UnknownId(e.to_string()).into());
        }
        for i in 0..vmap.len() {
            for j in i + 1..vmap.len() {
                if vmap[i] == vmap[j] {
                    return Err(AdmissibleError::NotInjective(
                        sub.vertex_name(VertexId(i)).into(),
                        sub.vertex_name(VertexId(j)).into(),
                    ));
                }
            }
        }
        for i in 0..emap.len() {
            for j in i + 1..emap.len() {
                if emap[i] == emap[j] {
                    return Err(AdmissibleError::NotInjective(
                        sub.edge_name(EdgeId(i)).into(),
                        sub.edge_name(EdgeId(j)).into(),
                    ));
                }
            }
        }
        for e in sub.edges() {
            let img = emap[e.0];
            if amb.src(img) != vmap[sub.src(e).0] || amb.tgt(img) != vmap[sub.tgt(e).0] {
                return Err(AdmissibleError::EndpointMismatch(sub.edge_name(e).into()));
            }
        }
        for ie in sub.infinite_emitters() {
            let u = ie.vertex;
            let name = || AdmissibleError::UnlistedEdgesUnmapped(sub.vertex_name(u).into());
            let amb_targets = unlisted(&amb, vmap[u.0]).ok_or_else(name)?;
            if let Some(amb_t) = amb_targets {
                let ok = match &ie.unlisted_targets {
                    Some(t) => t.iter().all(|x| amb_t.contains(&vmap[x.0])),
                    None => false,
                };
                if !ok {
                    return Err(name());
                }
            }
        }
        Ok(GraphInclusion {
            sub,
            amb,
            vmap,
            emap,
        })
    }

    pub fn from_names(
        sub: Arc<Graph>,
        amb: Arc<Graph>,
        vmap: &[(&str, &str)],
        emap: &[(&str, &str)],
    ) -> Result<Self, AdmissibleError> {
        let mut vs = vec![None; sub.vertex_count()];
        for (a, b) in vmap {
            let a = sub.vertex_by_name(a).ok_or_else(|| GraphError::UnknownId(a.to_string()))?;
            let b = amb.vertex_by_name(b).ok_or_else(|| GraphError::UnknownId(b.to_string()))?;
            vs[a.0] = Some(b);
        }
        let mut es = vec![None; sub.edge_count()];
        for (a, b) in emap {
            let a = sub.edge_by_name(a).ok_or_else(|| GraphError::UnknownId(a.to_string()))?;
            let b = amb.edge_by_name(b).ok_or_else(|| GraphError::UnknownId(b.to_string()))?;
            es[a.0] = Some(b);
        }
        let vmap = vs
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| AdmissibleError::MissingImage(sub.vertex_name(VertexId(i)).into())))
            .collect::<Result<_, _>>()?;
        let emap = es
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| AdmissibleError::MissingImage(sub.edge_name(EdgeId(i)).into())))
            .collect::<Result<_, _>>()?;
        GraphInclusion::new(sub, amb, vmap, emap)
    }

    pub fn identity(g: Arc<Graph>) -> Self {
        GraphInclusion {
            vmap: g.vertices().collect(),
            emap: g.edges().collect(),
            sub: g.clone(),
            amb: g,
        }
    }

    pub fn sub(&self) -> &Arc<Graph> {
        &self.sub
    }

    pub fn amb(&self) -> &Arc<Graph> {
        &self.amb
    }

    pub fn vertex_image(&self, v: VertexId) -> VertexId {
        self.vmap[v.0]
    }

    pub fn edge_image(&self, e: EdgeId) -> EdgeId {
        self.emap[e.0]
    }

    pub fn image_vertices(&self) -> BTreeSet<VertexId> {
        self.vmap.iter().copied().collect()
    }

    pub fn image_edges(&self) -> BTreeSet<EdgeId> {
        self.emap.iter().copied().collect()
    }

    pub fn vertex_preimage(&self, v: VertexId) -> Option<VertexId> {
        self.vmap.iter().position(|&x| x == v).map(VertexId)
    }

    pub fn edge_preimage(&self, e: EdgeId) -> Option<EdgeId> {
        self.emap.iter().position(|&x| x == e).map(EdgeId)
    }

    /// `E⁰ ∖ π⁰(F⁰)`.
    pub fn complement(&self) -> BTreeSet<VertexId> {
        let img = self.image_vertices();
        self.amb.vertices().filter(|v| !img.contains(v)).collect()
    }

    /// The inclusion as a path homomorphism (every edge to a length-1 path).
    pub fn as_path_hom(&self) -> PathHom {
        PathHom::new(
            self.sub.clone(),
            self.amb.clone(),
            self.vmap.clone(),
            self.emap.iter().map(|&e| self.amb.edge_path(e)).collect(),
        )
        .expect("inclusions intertwine endpoints")
    }

    /// Preimage of an ambient path whose edges all lie in the image.
    pub fn path_preimage(&self, p: &Path) -> Option<Path> {
        if p.is_vertex() {
            return self.vertex_preimage(p.source()).map(Path::vertex);
        }
        let edges = p
            .edges()
            .iter()
            .map(|&e| self.edge_preimage(e))
            .collect::<Option<Vec<_>>>()?;
        self.sub.path(edges).ok()
    }
}

/// A regular vertex outside `h` all of whose edges land in `h`, if any.
pub fn saturation_witness(g: &Graph, h: &BTreeSet<VertexId>) -> Option<VertexId> {
    g.vertices().find(|v| {
        !h.contains(v)
            && !g.is_infinite_emitter(*v)
            && !g.out_edges(*v).is_empty()
            && g.out_edges(*v).iter().all(|&e| h.contains(&g.tgt(e)))
    })
}

pub fn is_saturated(g: &Graph, h: &BTreeSet<VertexId>) -> bool {
    saturation_witness(g, h).is_none()
}

/// An edge leaving a set of vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapingEdge {
    Listed(EdgeId),
    /// Some unlisted edge of `from` lands in `to`.
    Unlisted { from: VertexId, to: VertexId },
}

impl EscapingEdge {
    pub fn describe(&self, g: &Graph) -> String {
        match self {
            EscapingEdge::Listed(e) => g.edge_name(*e).to_string(),
            EscapingEdge::Unlisted { from, to } => format!(
                "an unlisted edge {} -> {}",
                g.vertex_name(*from),
                g.vertex_name(*to)
            ),
        }
    }
}

/// An edge from `h` to its complement, if any.
pub fn hereditary_witness(g: &Graph, h: &BTreeSet<VertexId>) -> Option<EscapingEdge> {
    let outside: BTreeSet<VertexId> = g.vertices().filter(|v| !h.contains(v)).collect();
    for e in g.edges() {
        if h.contains(&g.src(e)) && outside.contains(&g.tgt(e)) {
            return Some(EscapingEdge::Listed(e));
        }
    }
    for ie in g.infinite_emitters() {
        if h.contains(&ie.vertex) {
            if let Some(to) = unlisted_meets(ie.unlisted_targets.as_ref(), &outside) {
                return Some(EscapingEdge::Unlisted { from: ie.vertex, to });
            }
        }
    }
    None
}

pub fn is_hereditary(g: &Graph, h: &BTreeSet<VertexId>) -> bool {
    hereditary_witness(g, h).is_none()
}

/// Per-axiom admissibility verdicts; `None` means the condition holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    /// A regular vertex outside the image feeding only into the complement.
    pub a1: Option<VertexId>,
    /// An ambient edge into the image that is not itself in the image.
    pub a2: Option<EscapingEdge>,
    /// An edge from the complement back into the image.
    pub hereditary: Option<EscapingEdge>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.a1.is_none() && self.a2.is_none()
    }

    pub fn describe(&self, amb: &Graph) -> String {
        let mut out = Vec::new();
        if let Some(v) = self.a1 {
            out.push(format!(
                "(A1) fails: regular vertex {} feeds only into the complement",
                amb.vertex_name(v)
            ));
        }
        if let Some(e) = &self.a2 {
            out.push(format!(
                "(A2) fails: {} ends in the image but is not in it",
                e.describe(amb)
            ));
        }
        if out.is_empty() {
            "admissible".into()
        } else {
            out.join("; ")
        }
    }
}

pub fn admissibility(inc: &GraphInclusion) -> AdmissibilityReport {
    let amb = &inc.amb;
    let image = inc.image_vertices();
    let image_edges = inc.image_edges();
    let complement = inc.complement();
    let a1 = saturation_witness(amb, &complement);
    let mut a2 = amb
        .edges()
        .find(|e| image.contains(&amb.tgt(*e)) && !image_edges.contains(e))
        .map(EscapingEdge::Listed);
    if a2.is_none() {
        for ie in amb.infinite_emitters() {
            let v = ie.vertex;
            let Some(to) = unlisted_meets(ie.unlisted_targets.as_ref(), &image) else {
                continue;
            };
            // The unlisted edges into the image must come from a flagged
            // vertex of the subgraph whose own unlisted edges cover them.
            let covered = inc.vertex_preimage(v).and_then(|u| unlisted(&inc.sub, u)).is_some_and(|sub_t| {
                let reach: Option<BTreeSet<VertexId>> = sub_t.map(|t| t.iter().map(|x| inc.vmap[x.0]).collect());
                let needed: Vec<VertexId> = match ie.unlisted_targets.as_ref() {
                    Some(t) => t.intersection(&image).copied().collect(),
                    None => image.iter().copied().collect(),
                };
                match reach {
                    None => true,
                    Some(r) => needed.iter().all(|x| r.contains(x)),
                }
            });
            if !covered {
                a2 = Some(EscapingEdge::Unlisted { from: v, to });
                break;
            }
        }
    }
    AdmissibilityReport {
        a1,
        a2,
        hereditary: hereditary_witness(amb, &complement),
    }
}

pub fn is_admissible(inc: &GraphInclusion) -> bool {
    admissibility(inc).is_admissible()
}

/// `B_H`: flagged vertices outside `h` with finitely many but some edges
/// into the complement of `h`.
pub fn breaking_vertices(g: &Graph, h: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>, AdmissibleError> {
    let outside: BTreeSet<VertexId> = g.vertices().filter(|v| !h.contains(v)).collect();
    let mut out = BTreeSet::new();
    for ie in g.infinite_emitters() {
        let v = ie.vertex;
        if h.contains(&v) {
            continue;
        }
        let all: BTreeSet<VertexId>;
        let targets = match &ie.unlisted_targets {
            Some(t) => t,
            None => {
                all = g.vertices().collect();
                &all
            }
        };
        if targets.is_disjoint(&outside) {
            let listed = g
                .out_edges(v)
                .iter()
                .filter(|&&e| outside.contains(&g.tgt(e)))
                .count();
            if listed > 0 {
                out.insert(v);
            }
        } else if !targets.is_subset(&outside) {
            return Err(AdmissibleError::AmbiguousInfiniteEmitter(g.vertex_name(v).into()));
        }
    }
    Ok(out)
}

/// Generators of `ker π*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelGenerators {
    pub vertex_projections: BTreeSet<VertexId>,
    /// `(w, π¹((π⁰∘s_F)⁻¹(w)))` for each breaking vertex `w`, standing for
    /// `P_w − Σ S_e S_e*` over the edge set.
    pub breaking_corrections: Vec<(VertexId, BTreeSet<EdgeId>)>,
}

pub fn kernel_generators(inc: &GraphInclusion) -> Result<KernelGenerators, AdmissibleError> {
    let report = admissibility(inc);
    if !report.is_admissible() {
        return Err(AdmissibleError::NotAdmissible(report.describe(&inc.amb)));
    }
    let complement = inc.complement();
    let breaking = breaking_vertices(&inc.amb, &complement)?;
    let mut corrections = Vec::new();
    for w in breaking {
        let edges = inc
            .sub
            .edges()
            .filter(|&e| inc.vmap[inc.sub.src(e).0] == w)
            .map(|e| inc.emap[e.0])
            .collect();
        corrections.push((w, edges));
    }
    Ok(KernelGenerators {
        vertex_projections: complement,
        breaking_corrections: corrections,
    })
}

/// `π*`: keeps generators in the image, kills the rest.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    inc: GraphInclusion,
    src: Arc<AlgebraContext>,
    dst: Arc<AlgebraContext>,
}

impl QuotientMap {
    pub fn new(inc: &GraphInclusion) -> Result<Self, AdmissibleError> {
        let report = admissibility(inc);
        if !report.is_admissible() {
            return Err(AdmissibleError::NotAdmissible(report.describe(&inc.amb)));
        }
        Ok(QuotientMap {
            src: AlgebraContext::leavitt(inc.amb.clone())?,
            dst: AlgebraContext::leavitt(inc.sub.clone())?,
            inc: inc.clone(),
        })
    }

    pub fn source(&self) -> &Arc<AlgebraContext> {
        &self.src
    }

    pub fn target(&self) -> &Arc<AlgebraContext> {
        &self.dst
    }

    pub fn apply_monomial(&self, m: &Monomial) -> AlgebraElement {
        match (self.inc.path_preimage(&m.alpha), self.inc.path_preimage(&m.beta)) {
            (Some(alpha), Some(beta)) if alpha.target() == beta.target() => {
                self.dst.monomial(Monomial { alpha, beta })
            }
            _ => self.dst.zero(),
        }
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement, AdmissibleError> {
        if **a.context() != *self.src {
            return Err(AlgebraError::ContextMismatch.into());
        }
        let mut out = self.dst.zero();
        for (m, c) in a.terms() {
            out = out.add(&self.apply_monomial(m).scale(c))?;
        }
        Ok(out)
    }
}

pub fn quotient_map(inc: &GraphInclusion, a: &AlgebraElement) -> Result<AlgebraElement, AdmissibleError> {
    QuotientMap::new(inc)?.apply(a)
}
