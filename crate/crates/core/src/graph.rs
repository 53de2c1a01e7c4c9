//! Finite directed graphs and their finite paths.
//!
//! Vertices and edges are addressed by dense indices ([`VertexId`], [`EdgeId`])
//! assigned in declaration order. Every iteration in this crate follows that
//! order, so all derived normal forms and reports are deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("infinite-emitter annotation references unknown vertex `{0}`")]
    UnknownAnnotatedVertex(String),
    #[error("vertex `{0}` is an infinite emitter; this operation needs a finite graph")]
    UnsupportedInfiniteEmitter(String),
    #[error("edges `{0}` and `{1}` do not compose")]
    NotComposable(String, String),
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
}

/// Index of a vertex in its graph's declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Index of an edge in its graph's declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub tgt: VertexId,
}

/// Symbolic marker for a vertex emitting infinitely many edges.
///
/// The listed edges of the vertex are the known ones. The unlisted (infinitely
/// many) edges land somewhere in `unlisted_targets`; `None` means nothing is
/// known about them and they may land anywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfiniteEmitter {
    pub vertex: VertexId,
    pub unlisted_targets: Option<BTreeSet<VertexId>>,
}

/// A finite path: a vertex (length 0) or a nonempty composable edge sequence.
///
/// Paths do not carry a reference to their graph; they are only meaningful
/// against the graph that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            source: v,
            target: v,
            edges: Vec::new(),
        }
    }

    /// Assembles a path from parts the caller has already checked.
    pub(crate) fn from_parts(source: VertexId, target: VertexId, edges: Vec<EdgeId>) -> Self {
        Path {
            source,
            target,
            edges,
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first_edge(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// Concatenation `self · other`, defined when `t(self) = s(other)`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path {
            source: self.source,
            target: other.target,
            edges,
        })
    }

    /// Prefix order: `self ⪯ other` iff `other = self · γ` for some path `γ`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.source == other.source && other.edges.starts_with(&self.edges)
    }

    /// Returns `γ` with `self = prefix · γ`, if `prefix ⪯ self`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if !prefix.is_prefix_of(self) {
            return None;
        }
        Some(Path {
            source: prefix.target,
            target: self.target,
            edges: self.edges[prefix.edges.len()..].to_vec(),
        })
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Top-level free function form of the prefix order.
pub fn prefix_leq(a: &Path, b: &Path) -> bool {
    a.is_prefix_of(b)
}

#[derive(Debug, Clone)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    infinite: Vec<InfiniteEmitter>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out: Vec<Vec<EdgeId>>,
    inc: Vec<Vec<EdgeId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.infinite == other.infinite
    }
}

impl Eq for Graph {}

/// Raw infinite-emitter annotation by name, as accepted by [`GraphBuilder`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmitterSpec {
    pub vertex: String,
    pub unlisted_targets: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
    infinite: Vec<EmitterSpec>,
}

impl GraphBuilder {
    pub fn vertex(mut self, name: impl Into<String>) -> Self {
        self.vertices.push(name.into());
        self
    }

    pub fn vertices<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn edge(
        mut self,
        name: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> Self {
        self.edges.push((name.into(), src.into(), tgt.into()));
        self
    }

    pub fn infinite_emitter(mut self, spec: EmitterSpec) -> Self {
        self.infinite.push(spec);
        self
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        let mut vertex_index = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), VertexId(i)).is_some() {
                return Err(GraphError::DuplicateId(v.clone()));
            }
        }
        let lookup = |edge: &str, v: &str| {
            vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| GraphError::DanglingEndpoint {
                    edge: edge.to_string(),
                    vertex: v.to_string(),
                })
        };
        let mut edge_index = HashMap::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, (name, src, tgt)) in self.edges.iter().enumerate() {
            if vertex_index.contains_key(name) || edge_index.insert(name.clone(), EdgeId(i)).is_some()
            {
                return Err(GraphError::DuplicateId(name.clone()));
            }
            edges.push(Edge {
                name: name.clone(),
                src: lookup(name, src)?,
                tgt: lookup(name, tgt)?,
            });
        }
        let mut infinite: Vec<InfiniteEmitter> = Vec::new();
        for spec in &self.infinite {
            let vertex = *vertex_index
                .get(&spec.vertex)
                .ok_or_else(|| GraphError::UnknownAnnotatedVertex(spec.vertex.clone()))?;
            if infinite.iter().any(|ie| ie.vertex == vertex) {
                return Err(GraphError::DuplicateId(spec.vertex.clone()));
            }
            let unlisted_targets = match &spec.unlisted_targets {
                None => None,
                Some(names) => Some(
                    names
                        .iter()
                        .map(|n| {
                            vertex_index
                                .get(n)
                                .copied()
                                .ok_or_else(|| GraphError::UnknownAnnotatedVertex(n.clone()))
                        })
                        .collect::<Result<BTreeSet<_>, _>>()?,
                ),
            };
            infinite.push(InfiniteEmitter {
                vertex,
                unlisted_targets,
            });
        }
        let n = self.vertices.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out[e.src.0].push(EdgeId(i));
            inc[e.tgt.0].push(EdgeId(i));
        }
        Ok(Graph {
            vertices: self.vertices,
            edges,
            infinite,
            vertex_index,
            edge_index,
            out,
            inc,
        })
    }
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn empty() -> Graph {
        GraphBuilder::default()
            .build()
            .expect("the empty graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].src
    }

    pub fn tgt(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].tgt
    }

    /// Listed edges emitted by `v`, in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.0]
    }

    /// Listed edges received by `v`, in declaration order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.inc[v.0]
    }

    pub fn infinite_emitters(&self) -> &[InfiniteEmitter] {
        &self.infinite
    }

    pub fn infinite_emitter(&self, v: VertexId) -> Option<&InfiniteEmitter> {
        self.infinite.iter().find(|ie| ie.vertex == v)
    }

    pub fn is_infinite_emitter(&self, v: VertexId) -> bool {
        self.infinite_emitter(v).is_some()
    }

    pub fn has_infinite_emitters(&self) -> bool {
        !self.infinite.is_empty()
    }

    /// Fails with [`GraphError::UnsupportedInfiniteEmitter`] on annotated graphs.
    pub fn require_finite(&self) -> Result<(), GraphError> {
        match self.infinite.first() {
            Some(ie) => Err(GraphError::UnsupportedInfiniteEmitter(
                self.vertex_name(ie.vertex).to_string(),
            )),
            None => Ok(()),
        }
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        let edge = &self.edges[e.0];
        Path {
            source: edge.src,
            target: edge.tgt,
            edges: vec![e],
        }
    }

    /// Builds a path from an edge sequence, checking composability.
    /// An empty sequence is rejected because its endpoints would be unknown.
    pub fn path(&self, edges: Vec<EdgeId>) -> Result<Path, GraphError> {
        let (first, last) = match (edges.first(), edges.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(GraphError::UnknownId(String::from("<empty path>"))),
        };
        for w in edges.windows(2) {
            if self.tgt(w[0]) != self.src(w[1]) {
                return Err(GraphError::NotComposable(
                    self.edge_name(w[0]).to_string(),
                    self.edge_name(w[1]).to_string(),
                ));
            }
        }
        Ok(Path {
            source: self.src(first),
            target: self.tgt(last),
            edges,
        })
    }

    /// Resolves a path given by edge names; a single vertex name gives a length-0 path.
    pub fn path_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, GraphError> {
        if let [single] = names {
            if let Some(v) = self.vertex_by_name(single.as_ref()) {
                return Ok(Path::vertex(v));
            }
        }
        let edges = names
            .iter()
            .map(|n| {
                self.edge_by_name(n.as_ref())
                    .ok_or_else(|| GraphError::UnknownId(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.path(edges)
    }

    /// Drops the last edge of a positive-length path.
    pub fn split_last(&self, p: &Path) -> Option<(Path, EdgeId)> {
        let (&last, rest) = p.edges.split_last()?;
        Some((
            Path {
                source: p.source,
                target: self.src(last),
                edges: rest.to_vec(),
            },
            last,
        ))
    }

    /// Edge names separated by spaces, or the vertex name for length-0 paths.
    pub fn fmt_path(&self, p: &Path) -> String {
        if p.is_vertex() {
            return self.vertex_name(p.source).to_string();
        }
        p.edges
            .iter()
            .map(|&e| self.edge_name(e))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Regular vertices: non-sinks with finitely many outgoing edges.
    pub fn regular_vertices(&self) -> Result<BTreeSet<VertexId>, GraphError> {
        self.require_finite()?;
        Ok(self
            .vertices()
            .filter(|&v| !self.out[v.0].is_empty())
            .collect())
    }

    /// Regular vertices emitting exactly one edge, which is a loop at the vertex.
    pub fn reg0_vertices(&self) -> Result<BTreeSet<VertexId>, GraphError> {
        self.require_finite()?;
        Ok(self.vertices().filter(|&v| self.is_reg0(v)).collect())
    }

    pub(crate) fn is_reg0(&self, v: VertexId) -> bool {
        matches!(self.out[v.0].as_slice(), [e] if self.tgt(*e) == v)
    }

    /// All paths of length at most `n`, ordered by length and then
    /// lexicographically in declaration order. This is the single path
    /// enumerator of the crate.
    pub fn paths_up_to(&self, n: usize) -> Vec<Path> {
        let mut all: Vec<Path> = self.vertices().map(Path::vertex).collect();
        let mut frontier: Vec<Path> = Vec::new();
        for e in self.edges() {
            frontier.push(self.edge_path(e));
        }
        let mut len = 1;
        while len <= n && !frontier.is_empty() {
            all.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.target) {
                    let mut edges = p.edges.clone();
                    edges.push(e);
                    next.push(Path {
                        source: p.source,
                        target: self.tgt(e),
                        edges,
                    });
                }
            }
            next.sort();
            frontier = next;
            len += 1;
        }
        all
    }

    /// Vertex-simple loops: cycles whose vertices are pairwise distinct.
    /// Each cycle is reported once, rotated to start at its smallest vertex.
    pub fn vertex_simple_loops(&self) -> Vec<Path> {
        let mut loops = Vec::new();
        for start in self.vertices() {
            let mut stack = vec![start];
            let mut trail = Vec::new();
            self.simple_cycles_from(start, start, &mut stack, &mut trail, &mut loops);
        }
        loops
    }

    fn simple_cycles_from(
        &self,
        start: VertexId,
        at: VertexId,
        visited: &mut Vec<VertexId>,
        trail: &mut Vec<EdgeId>,
        loops: &mut Vec<Path>,
    ) {
        for &e in self.out_edges(at) {
            let next = self.tgt(e);
            if next == start {
                trail.push(e);
                loops.push(Path {
                    source: start,
                    target: start,
                    edges: trail.clone(),
                });
                trail.pop();
            } else if next > start && !visited.contains(&next) {
                visited.push(next);
                trail.push(e);
                self.simple_cycles_from(start, next, visited, trail, loops);
                trail.pop();
                visited.pop();
            }
        }
    }

    /// Checks that every vertex-simple loop has an exit. On failure the first
    /// loop without an exit (in enumeration order) is returned.
    pub fn vertex_simple_loops_have_exits(&self) -> Result<LoopExitCheck, GraphError> {
        self.require_finite()?;
        Ok(self.loop_exit_check(|_| false))
    }

    /// Loop-exit check where `always_exits(v)` marks vertices known to emit
    /// edges beyond the listed ones.
    pub(crate) fn loop_exit_check(&self, always_exits: impl Fn(VertexId) -> bool) -> LoopExitCheck {
        for lp in self.vertex_simple_loops() {
            let has_exit = lp
                .edges
                .iter()
                .any(|&e| self.out_edges(self.src(e)).len() > 1 || always_exits(self.src(e)));
            if !has_exit {
                return LoopExitCheck {
                    all_have_exits: false,
                    witness: Some(lp),
                };
            }
        }
        LoopExitCheck {
            all_have_exits: true,
            witness: None,
        }
    }

    /// The extended graph: every edge `e` gains a ghost `e*` with reversed endpoints.
    pub fn extended_graph(&self) -> ExtendedGraph {
        let mut b = Graph::builder().vertices(self.vertices.iter().cloned());
        for e in &self.edges {
            b = b.edge(
                e.name.clone(),
                self.vertex_name(e.src).to_string(),
                self.vertex_name(e.tgt).to_string(),
            );
        }
        for e in &self.edges {
            b = b.edge(
                format!("{}*", e.name),
                self.vertex_name(e.tgt).to_string(),
                self.vertex_name(e.src).to_string(),
            );
        }
        let graph = match b.build() {
            Ok(g) => g,
            // Ghost names can clash only if the graph already uses `x*` names;
            // fall back to index-based construction in that case.
            Err(_) => self.extended_graph_unnamed(),
        };
        ExtendedGraph {
            graph,
            base_edges: self.edges.len(),
        }
    }

    fn extended_graph_unnamed(&self) -> Graph {
        let mut g = self.clone();
        let n = self.edges.len();
        for i in 0..n {
            let e = self.edges[i].clone();
            let name = format!("{}*#{}", e.name, i);
            g.edge_index.insert(name.clone(), EdgeId(n + i));
            g.out[e.tgt.0].push(EdgeId(n + i));
            g.inc[e.src.0].push(EdgeId(n + i));
            g.edges.push(Edge {
                name,
                src: e.tgt,
                tgt: e.src,
            });
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopExitCheck {
    pub all_have_exits: bool,
    pub witness: Option<Path>,
}

/// The extended (double) graph of a graph. Edge `i` of the base graph keeps
/// index `i`; its ghost has index `i + base_edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedGraph {
    graph: Graph,
    base_edges: usize,
}

impl ExtendedGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn is_ghost(&self, e: EdgeId) -> bool {
        e.0 >= self.base_edges
    }

    /// `e ↦ e*` and `e* ↦ e`.
    pub fn star_edge(&self, e: EdgeId) -> EdgeId {
        if self.is_ghost(e) {
            EdgeId(e.0 - self.base_edges)
        } else {
            EdgeId(e.0 + self.base_edges)
        }
    }

    /// Embeds a path of the base graph.
    pub fn lift(&self, p: &Path) -> Path {
        p.clone()
    }

    /// `(e_1 … e_n)* = e_n* … e_1*`; vertices are fixed.
    pub fn star_path(&self, p: &Path) -> Path {
        if p.is_vertex() {
            return p.clone();
        }
        Path {
            source: p.target,
            target: p.source,
            edges: p.edges.iter().rev().map(|&e| self.star_edge(e)).collect(),
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#e{}", self.0)
    }
}

/// Checks the graph invariants of a raw description by building it.
pub fn validate_graph(b: GraphBuilder) -> Result<(), GraphError> {
    b.build().map(|_| ())
}
