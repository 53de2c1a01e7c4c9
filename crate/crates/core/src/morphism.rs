//! Path homomorphisms and the decision procedures for the subcategories
//! IPG, BPG, MIPG, MBPG, RMIPG and RMBPG.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, Path, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no image given for vertex `{0}`")]
    MissingVertexImage(String),
    #[error("no image given for edge `{0}`")]
    MissingEdgeImage(String),
    #[error("image of edge `{edge}` runs from `{found_src}` to `{found_tgt}`, expected `{want_src}` to `{want_tgt}`")]
    EndpointMismatch {
        edge: String,
        found_src: String,
        found_tgt: String,
        want_src: String,
        want_tgt: String,
    },
    #[error("vertex or edge map does not cover the domain exactly")]
    ArityMismatch,
    #[error("codomain of the first morphism differs from the domain of the second")]
    DomainMismatch,
}

/// A path homomorphism `dom → cod`: a vertex map and an edge-to-path map,
/// extended multiplicatively to all finite paths.
///
/// Construction checks `s(f(e)) = f(s(e))` and `t(f(e)) = f(t(e))` for every
/// edge, which makes the extension well defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathHom {
    dom: Arc<Graph>,
    cod: Arc<Graph>,
    vmap: Vec<VertexId>,
    emap: Vec<Path>,
}

impl PathHom {
    pub fn new(
        dom: Arc<Graph>,
        cod: Arc<Graph>,
        vmap: Vec<VertexId>,
        emap: Vec<Path>,
    ) -> Result<Self, MorphismError> {
        if vmap.len() != dom.vertex_count() || emap.len() != dom.edge_count() {
            return Err(MorphismError::ArityMismatch);
        }
        if let Some(bad) = vmap.iter().find(|v| v.0 >= cod.vertex_count()) {
            return Err(GraphError::UnknownId(bad.to_string()).into());
        }
        for e in dom.edges() {
            let img = &emap[e.0];
            let want_src = vmap[dom.src(e).0];
            let want_tgt = vmap[dom.tgt(e).0];
            if img.source() != want_src || img.target() != want_tgt {
                return Err(MorphismError::EndpointMismatch {
                    edge: dom.edge_name(e).to_string(),
                    found_src: cod.vertex_name(img.source()).to_string(),
                    found_tgt: cod.vertex_name(img.target()).to_string(),
                    want_src: cod.vertex_name(want_src).to_string(),
                    want_tgt: cod.vertex_name(want_tgt).to_string(),
                });
            }
        }
        Ok(PathHom {
            dom,
            cod,
            vmap,
            emap,
        })
    }

    /// Builds a morphism from names. Each edge image is a list of codomain
    /// edge names, or a single codomain vertex name for a length-0 image.
    pub fn from_names(
        dom: Arc<Graph>,
        cod: Arc<Graph>,
        vmap: &[(&str, &str)],
        emap: &[(&str, &[&str])],
    ) -> Result<Self, MorphismError> {
        let mut vs: Vec<Option<VertexId>> = vec![None; dom.vertex_count()];
        for (a, b) in vmap {
            let a = dom
                .vertex_by_name(a)
                .ok_or_else(|| GraphError::UnknownId(a.to_string()))?;
            let b = cod
                .vertex_by_name(b)
                .ok_or_else(|| GraphError::UnknownId(b.to_string()))?;
            vs[a.0] = Some(b);
        }
        let mut es: Vec<Option<Path>> = vec![None; dom.edge_count()];
        for (a, img) in emap {
            let a = dom
                .edge_by_name(a)
                .ok_or_else(|| GraphError::UnknownId(a.to_string()))?;
            es[a.0] = Some(cod.path_by_names(img)?);
        }
        let vmap = vs
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    MorphismError::MissingVertexImage(dom.vertex_name(VertexId(i)).to_string())
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let emap = es
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                p.ok_or_else(|| MorphismError::MissingEdgeImage(dom.edge_name(EdgeId(i)).to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        PathHom::new(dom, cod, vmap, emap)
    }

    pub fn identity(g: Arc<Graph>) -> Self {
        let vmap = g.vertices().collect();
        let emap = g.edges().map(|e| g.edge_path(e)).collect();
        PathHom {
            dom: g.clone(),
            cod: g,
            vmap,
            emap,
        }
    }

    pub fn dom(&self) -> &Arc<Graph> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Graph> {
        &self.cod
    }

    pub fn vertex_image(&self, v: VertexId) -> VertexId {
        self.vmap[v.0]
    }

    pub fn edge_image(&self, e: EdgeId) -> &Path {
        &self.emap[e.0]
    }

    /// Image of a path: `f(v)` on vertices, concatenation of edge images otherwise.
    pub fn apply(&self, p: &Path) -> Path {
        let source = self.vmap[p.source().0];
        let target = self.vmap[p.target().0];
        let edges = p
            .edges()
            .iter()
            .flat_map(|&e| self.emap[e.0].edges().iter().copied())
            .collect();
        Path::from_parts(source, target, edges)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &PathHom) -> Result<PathHom, MorphismError> {
        compose(self, f)
    }

    /// Longest edge image, at least 1.
    pub fn max_image_len(&self) -> usize {
        self.emap.iter().map(Path::len).max().unwrap_or(0).max(1)
    }

    pub fn is_vertex_injective(&self) -> bool {
        self.first_vertex_collision().is_none()
    }

    fn first_vertex_collision(&self) -> Option<(VertexId, VertexId)> {
        let n = self.vmap.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.vmap[i] == self.vmap[j] {
                    return Some((VertexId(i), VertexId(j)));
                }
            }
        }
        None
    }

    /// The first ordered pair of distinct edges `(e, e′)` with `f(e) ⪯ f(e′)`.
    pub fn monotonicity_violation(&self) -> Option<(EdgeId, EdgeId)> {
        for e in self.dom.edges() {
            for e2 in self.dom.edges() {
                if e != e2 && self.emap[e.0].is_prefix_of(&self.emap[e2.0]) {
                    return Some((e, e2));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_violation().is_none()
    }

    /// Regularity of the morphism; `Ok(None)` means regular, otherwise the
    /// first failing domain vertex with its reason.
    pub fn regularity_violation(&self) -> Result<Option<RegularityWitness>, MorphismError> {
        self.dom.require_finite()?;
        self.cod.require_finite()?;
        for v in self.dom.vertices() {
            let out = self.dom.out_edges(v);
            if out.is_empty() {
                continue;
            }
            let root = self.vmap[v.0];
            if self.dom.is_reg0(v) {
                let img = &self.emap[out[0].0];
                if img.is_vertex() {
                    // escape clause: f(s⁻¹(v)) = f(v)
                    continue;
                }
                if let Err(failure) = expansion_check(&self.cod, root, &[img]) {
                    return Ok(Some(RegularityWitness { vertex: v, failure }));
                }
                continue;
            }
            for (i, &a) in out.iter().enumerate() {
                for &b in &out[i + 1..] {
                    if self.emap[a.0] == self.emap[b.0] {
                        return Ok(Some(RegularityWitness {
                            vertex: v,
                            failure: RegularityFailure::NotInjective(a, b),
                        }));
                    }
                }
            }
            if let Some(&e) = out.iter().find(|&&e| self.emap[e.0].is_vertex()) {
                return Ok(Some(RegularityWitness {
                    vertex: v,
                    failure: RegularityFailure::VertexImage(e),
                }));
            }
            let images: Vec<&Path> = out.iter().map(|e| &self.emap[e.0]).collect();
            if let Err(failure) = expansion_check(&self.cod, root, &images) {
                return Ok(Some(RegularityWitness { vertex: v, failure }));
            }
        }
        Ok(None)
    }

    pub fn is_regular(&self) -> Result<bool, MorphismError> {
        Ok(self.regularity_violation()?.is_none())
    }

    /// Evaluates every category predicate.
    pub fn classify(&self) -> Result<CategoryVerdict, MorphismError> {
        let mut witnesses = BTreeMap::new();
        let collision = self.first_vertex_collision();
        if let Some((a, b)) = collision {
            witnesses.insert(Predicate::VertexInjective, Witness::VertexCollision(a, b));
            witnesses.insert(Predicate::VertexBijective, Witness::VertexCollision(a, b));
        } else if let Some(w) = self.cod.vertices().find(|w| !self.vmap.contains(w)) {
            witnesses.insert(Predicate::VertexBijective, Witness::MissedVertex(w));
        }
        if let Some((a, b)) = self.monotonicity_violation() {
            witnesses.insert(Predicate::Monotone, Witness::PrefixPair(a, b));
        }
        if let Some(r) = self.regularity_violation()? {
            witnesses.insert(Predicate::Regular, Witness::Regularity(r));
        }
        Ok(CategoryVerdict {
            is_path_hom: true,
            vertex_injective: !witnesses.contains_key(&Predicate::VertexInjective),
            vertex_bijective_finite: !witnesses.contains_key(&Predicate::VertexBijective),
            monotone: !witnesses.contains_key(&Predicate::Monotone),
            regular: !witnesses.contains_key(&Predicate::Regular),
            witnesses,
        })
    }

    /// The lift `f̄ : Ē → F̄` with `f̄(e*) = f(e)*`.
    pub fn extended_lift(&self) -> PathHom {
        let xd = self.dom.extended_graph();
        let xc = self.cod.extended_graph();
        let mut emap: Vec<Path> = self.emap.clone();
        for e in self.dom.edges() {
            emap.push(xc.star_path(&self.emap[e.0]));
        }
        PathHom {
            dom: Arc::new(xd.into_graph()),
            cod: Arc::new(xc.into_graph()),
            vmap: self.vmap.clone(),
            emap,
        }
    }

    /// Describes an edge image by names.
    pub fn fmt_edge_image(&self, e: EdgeId) -> String {
        self.cod.fmt_path(&self.emap[e.0])
    }
}

/// `g ∘ f`, defined when `cod(f) = dom(g)`.
pub fn compose(g: &PathHom, f: &PathHom) -> Result<PathHom, MorphismError> {
    if !(Arc::ptr_eq(&f.cod, &g.dom) || *f.cod == *g.dom) {
        return Err(MorphismError::DomainMismatch);
    }
    Ok(PathHom {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        vmap: f.vmap.iter().map(|&v| g.vmap[v.0]).collect(),
        emap: f.emap.iter().map(|p| g.apply(p)).collect(),
    })
}

/// Checks that `images` (positive-length paths from `root`) form the leaf set
/// of a complete expansion tree rooted at `root`.
///
/// The tree is grown by taking every edge out of `root` and, at each node,
/// either stopping (the path is a leaf) or continuing with every edge out of
/// the node's end. Partitioning by first edge, the leaf set is valid iff the
/// first edges are exactly the edges out of the root, and for each first edge
/// `x` the residual suffix set is either just the leaf `x` itself or, without
/// the empty suffix, again a valid leaf set rooted at `t(x)`. This captures the
/// three clauses of the regularity condition: positive length, no member is a
/// proper prefix of another, and every sibling of every letter is continued
/// inside the set (with an empty prefix at the first letter).
fn expansion_check(cod: &Graph, root: VertexId, images: &[&Path]) -> Result<(), RegularityFailure> {
    let suffixes: Vec<&[EdgeId]> = images.iter().map(|p| p.edges()).collect();
    expand(cod, &Path::vertex(root), &suffixes)
}

fn expand(cod: &Graph, prefix: &Path, suffixes: &[&[EdgeId]]) -> Result<(), RegularityFailure> {
    let node = prefix.target();
    let mut groups: BTreeMap<EdgeId, Vec<&[EdgeId]>> = BTreeMap::new();
    for s in suffixes {
        groups.entry(s[0]).or_default().push(s);
    }
    for &x in cod.out_edges(node) {
        let branch = prefix
            .concat(&cod.edge_path(x))
            .expect("edge leaves the prefix end");
        let Some(group) = groups.get(&x) else {
            return Err(RegularityFailure::MissingBranch(branch));
        };
        if group.iter().any(|s| s.len() == 1) {
            if group.len() > 1 {
                return Err(RegularityFailure::PrefixClash(branch));
            }
            continue;
        }
        let rest: Vec<&[EdgeId]> = group.iter().map(|s| &s[1..]).collect();
        expand(cod, &branch, &rest)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityWitness {
    /// Domain vertex at which the condition fails.
    pub vertex: VertexId,
    pub failure: RegularityFailure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityFailure {
    /// Two edges out of the vertex share an image.
    NotInjective(EdgeId, EdgeId),
    /// An edge out of a non-0-regular vertex is sent to a vertex.
    VertexImage(EdgeId),
    /// A codomain path that is an image but also extended by another image.
    PrefixClash(Path),
    /// A codomain path the expansion tree needs but no image continues.
    MissingBranch(Path),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    VertexInjective,
    VertexBijective,
    Monotone,
    Regular,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::VertexInjective => "vertex_injective",
            Predicate::VertexBijective => "vertex_bijective_finite",
            Predicate::Monotone => "monotone",
            Predicate::Regular => "regular",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    VertexCollision(VertexId, VertexId),
    /// A codomain vertex outside the image.
    MissedVertex(VertexId),
    /// Distinct edges `(e, e′)` with `f(e) ⪯ f(e′)`.
    PrefixPair(EdgeId, EdgeId),
    Regularity(RegularityWitness),
}

impl Witness {
    pub fn describe(&self, f: &PathHom) -> String {
        let (d, c) = (f.dom(), f.cod());
        match self {
            Witness::VertexCollision(a, b) => format!(
                "vertices {} and {} both map to {}",
                d.vertex_name(*a),
                d.vertex_name(*b),
                c.vertex_name(f.vertex_image(*a))
            ),
            Witness::MissedVertex(w) => format!("vertex {} is not in the image", c.vertex_name(*w)),
            Witness::PrefixPair(a, b) => format!(
                "f({}) = {} is a prefix of f({}) = {}",
                d.edge_name(*a),
                f.fmt_edge_image(*a),
                d.edge_name(*b),
                f.fmt_edge_image(*b)
            ),
            Witness::Regularity(r) => {
                let v = d.vertex_name(r.vertex);
                match &r.failure {
                    RegularityFailure::NotInjective(a, b) => format!(
                        "at {v}: edges {} and {} have the same image",
                        d.edge_name(*a),
                        d.edge_name(*b)
                    ),
                    RegularityFailure::VertexImage(e) => {
                        format!("at {v}: edge {} is sent to a vertex", d.edge_name(*e))
                    }
                    RegularityFailure::PrefixClash(p) => format!(
                        "at {v}: image {} is extended by another image",
                        c.fmt_path(p)
                    ),
                    RegularityFailure::MissingBranch(p) => {
                        format!("at {v}: missing branch {}", c.fmt_path(p))
                    }
                }
            }
        }
    }
}

/// Result of [`PathHom::classify`]. A witness is stored for exactly the
/// predicates that fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryVerdict {
    pub is_path_hom: bool,
    pub vertex_injective: bool,
    pub vertex_bijective_finite: bool,
    pub monotone: bool,
    pub regular: bool,
    pub witnesses: BTreeMap<Predicate, Witness>,
}

impl CategoryVerdict {
    pub fn flag(&self, p: Predicate) -> bool {
        match p {
            Predicate::VertexInjective => self.vertex_injective,
            Predicate::VertexBijective => self.vertex_bijective_finite,
            Predicate::Monotone => self.monotone,
            Predicate::Regular => self.regular,
        }
    }

    pub fn is_member(&self, class: Category) -> bool {
        class.predicates().iter().all(|&p| self.flag(p))
    }

    /// The first predicate required by `class` that fails.
    pub fn first_failure(&self, class: Category) -> Option<Predicate> {
        class.predicates().iter().copied().find(|&p| !self.flag(p))
    }
}

/// The tower of graph categories with path homomorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    Pg,
    Ipg,
    Bpg,
    Mipg,
    Mbpg,
    Rmipg,
    Rmbpg,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::Pg,
        Category::Ipg,
        Category::Bpg,
        Category::Mipg,
        Category::Mbpg,
        Category::Rmipg,
        Category::Rmbpg,
    ];

    pub fn predicates(self) -> &'static [Predicate] {
        use Predicate::*;
        match self {
            Category::Pg => &[],
            Category::Ipg => &[VertexInjective],
            Category::Bpg => &[VertexBijective],
            Category::Mipg => &[VertexInjective, Monotone],
            Category::Mbpg => &[VertexBijective, Monotone],
            Category::Rmipg => &[VertexInjective, Monotone, Regular],
            Category::Rmbpg => &[VertexBijective, Monotone, Regular],
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Category::Pg => "PG",
            Category::Ipg => "IPG",
            Category::Bpg => "BPG",
            Category::Mipg => "MIPG",
            Category::Mbpg => "MBPG",
            Category::Rmipg => "RMIPG",
            Category::Rmbpg => "RMBPG",
        };
        f.write_str(s)
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown category `{s}`"))
    }
}
