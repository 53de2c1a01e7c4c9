//! Exact arithmetic in path algebras, (relative) Cohn path algebras and
//! Leavitt path algebras over ℚ.
//!
//! Elements of a relative Cohn algebra `C^X(E)` are kept as linear
//! combinations of monomials `S_α S_β*` with `t(α) = t(β)`. Every `w ∈ X`
//! has a special edge, the first edge it emits in declaration order; a
//! monomial is in normal form unless `α` and `β` both end in the same special
//! edge `γ`. Such a tail is removed with the second Cuntz–Krieger relation:
//!
//! ```text
//! S_{α₁γ} S_{β₁γ}* = S_{α₁} S_{β₁}* − Σ_{e ∈ s⁻¹(w), e ≠ γ} S_{α₁e} S_{β₁e}*
//! ```
//!
//! Each step shortens the monomial or replaces a special tail by a
//! non-special one, so normalization terminates. The path algebra `kE` uses
//! the same representation with `β = t(α)` and admits no ghost letters.

pub mod expr;
pub mod induced;
pub mod rewrite;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, Path, VertexId};
use crate::morphism::MorphismError;

/// Coefficient field. Kept behind an alias so a different exact field can
/// replace ℚ in one place.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ghost letters are not available in the path algebra")]
    StarInPathMode,
    #[error("elements belong to different algebras")]
    ContextMismatch,
    #[error("vertex `{0}` is not regular and cannot carry the second Cuntz-Krieger relation")]
    NotRegularInX(String),
    #[error("morphism is not injective on vertices: {0}")]
    NotVertexInjective(String),
    #[error("morphism is not monotone: {0}")]
    NotMonotone(String),
    #[error("morphism is not regular: {0}")]
    NotRegular(String),
    #[error("induced homomorphisms exist only for the path, Cohn and Leavitt algebras")]
    UnsupportedMode,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    /// The path algebra `kE`.
    Path,
    /// `C^X(E)`; `X = ∅` gives the Cohn algebra and `X = reg(E)` the Leavitt algebra.
    RelativeCohn(BTreeSet<VertexId>),
}

/// A graph together with the algebra built on it.
#[derive(Debug, Clone)]
pub struct AlgebraContext {
    graph: Arc<Graph>,
    mode: Mode,
    special: Vec<Option<EdgeId>>,
}

impl PartialEq for AlgebraContext {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode
            && (Arc::ptr_eq(&self.graph, &other.graph) || self.graph == other.graph)
    }
}

impl Eq for AlgebraContext {}

impl AlgebraContext {
    pub fn path(graph: Arc<Graph>) -> Result<Arc<Self>, AlgebraError> {
        graph.require_finite()?;
        let n = graph.vertex_count();
        Ok(Arc::new(AlgebraContext {
            graph,
            mode: Mode::Path,
            special: vec![None; n],
        }))
    }

    pub fn cohn(graph: Arc<Graph>) -> Result<Arc<Self>, AlgebraError> {
        Self::relative_cohn(graph, BTreeSet::new())
    }

    pub fn leavitt(graph: Arc<Graph>) -> Result<Arc<Self>, AlgebraError> {
        let reg = graph.regular_vertices()?;
        Self::relative_cohn(graph, reg)
    }

    pub fn relative_cohn(graph: Arc<Graph>, x: BTreeSet<VertexId>) -> Result<Arc<Self>, AlgebraError> {
        graph.require_finite()?;
        let mut special = vec![None; graph.vertex_count()];
        for &v in &x {
            match graph.out_edges(v).first() {
                Some(&e) => special[v.0] = Some(e),
                None => return Err(AlgebraError::NotRegularInX(graph.vertex_name(v).to_string())),
            }
        }
        Ok(Arc::new(AlgebraContext {
            graph,
            mode: Mode::RelativeCohn(x),
            special,
        }))
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn is_path_mode(&self) -> bool {
        self.mode == Mode::Path
    }

    /// Vertices carrying the second Cuntz–Krieger relation.
    pub fn relation_vertices(&self) -> BTreeSet<VertexId> {
        match &self.mode {
            Mode::Path => BTreeSet::new(),
            Mode::RelativeCohn(x) => x.clone(),
        }
    }

    /// The special edge of `v`, if `v ∈ X`.
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.special[v.0]
    }

    pub fn label(&self) -> String {
        let name = match &self.mode {
            Mode::Path => "P",
            Mode::RelativeCohn(x) if x.is_empty() => "C",
            Mode::RelativeCohn(x) => {
                if self.graph.regular_vertices().is_ok_and(|r| &r == x) {
                    "L"
                } else {
                    "R"
                }
            }
        };
        name.to_string()
    }

    pub fn zero(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement {
            ctx: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `Σ_v P_v`, the unit of a graph with finitely many vertices.
    pub fn one(self: &Arc<Self>) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        for v in self.graph.vertices() {
            terms.insert(Monomial::vertex(v), Scalar::one());
        }
        AlgebraElement {
            ctx: self.clone(),
            terms,
        }
    }

    pub fn vertex(self: &Arc<Self>, v: VertexId) -> AlgebraElement {
        self.monomial(Monomial::vertex(v))
    }

    /// `S_e`.
    pub fn edge(self: &Arc<Self>, e: EdgeId) -> AlgebraElement {
        self.path_element(&self.graph.edge_path(e))
    }

    /// `S_e*`.
    pub fn ghost(self: &Arc<Self>, e: EdgeId) -> Result<AlgebraElement, AlgebraError> {
        if self.is_path_mode() {
            return Err(AlgebraError::StarInPathMode);
        }
        let p = self.graph.edge_path(e);
        Ok(self.monomial(Monomial {
            alpha: Path::vertex(p.target()),
            beta: p,
        }))
    }

    /// `S_p`.
    pub fn path_element(self: &Arc<Self>, p: &Path) -> AlgebraElement {
        self.monomial(Monomial {
            alpha: p.clone(),
            beta: Path::vertex(p.target()),
        })
    }

    pub fn generator(self: &Arc<Self>, letter: Letter) -> Result<AlgebraElement, AlgebraError> {
        match letter {
            Letter::Vertex(v) => Ok(self.vertex(v)),
            Letter::Edge(e) => Ok(self.edge(e)),
            Letter::Ghost(e) => self.ghost(e),
        }
    }

    /// `S_α S_β*` reduced to normal form. Requires `t(α) = t(β)`; in the
    /// path algebra `β` must be the vertex `t(α)`.
    pub fn monomial(self: &Arc<Self>, m: Monomial) -> AlgebraElement {
        self.monomial_with(m, Scalar::one())
    }

    pub fn monomial_with(self: &Arc<Self>, m: Monomial, c: Scalar) -> AlgebraElement {
        let mut out = self.zero();
        self.reduce_into(c, m, &mut out.terms);
        out
    }

    /// Adds `c · S_α S_β*` to `out`, rewriting special tails away.
    fn reduce_into(&self, c: Scalar, m: Monomial, out: &mut BTreeMap<Monomial, Scalar>) {
        debug_assert_eq!(m.alpha.target(), m.beta.target());
        let mut stack = vec![(c, m)];
        while let Some((c, m)) = stack.pop() {
            if c.is_zero() {
                continue;
            }
            if let Some(gamma) = self.special_tail(&m) {
                let w = self.graph.src(gamma);
                let (a1, _) = self.graph.split_last(&m.alpha).expect("tail edge");
                let (b1, _) = self.graph.split_last(&m.beta).expect("tail edge");
                for &e in self.graph.out_edges(w) {
                    if e == gamma {
                        continue;
                    }
                    let ep = self.graph.edge_path(e);
                    stack.push((
                        -c.clone(),
                        Monomial {
                            alpha: a1.concat(&ep).expect("composable"),
                            beta: b1.concat(&ep).expect("composable"),
                        },
                    ));
                }
                stack.push((c, Monomial { alpha: a1, beta: b1 }));
                continue;
            }
            add_term(out, m, c);
        }
    }

    /// The special edge both `α` and `β` end in, if any.
    fn special_tail(&self, m: &Monomial) -> Option<EdgeId> {
        let a = m.alpha.last_edge()?;
        let b = m.beta.last_edge()?;
        if a != b {
            return None;
        }
        (self.special[self.graph.src(a).0] == Some(a)).then_some(a)
    }

    /// Whether `m` is a basis monomial of this algebra.
    pub fn is_normal(&self, m: &Monomial) -> bool {
        if m.alpha.target() != m.beta.target() {
            return false;
        }
        if self.is_path_mode() && !m.beta.is_vertex() {
            return false;
        }
        self.special_tail(m).is_none()
    }

    /// Product of two monomials before renormalization:
    /// `(α,β)(γ,δ) = (αγ′,δ)` if `γ = βγ′`, `(α,δβ′)` if `β = γβ′`, else 0.
    fn mul_monomials(a: &Monomial, b: &Monomial) -> Option<Monomial> {
        if let Some(rest) = b.alpha.strip_prefix(&a.beta) {
            return Some(Monomial {
                alpha: a.alpha.concat(&rest)?,
                beta: b.beta.clone(),
            });
        }
        if let Some(rest) = a.beta.strip_prefix(&b.alpha) {
            return Some(Monomial {
                alpha: a.alpha.clone(),
                beta: b.beta.concat(&rest)?,
            });
        }
        None
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        if m.alpha.is_vertex() && m.beta.is_vertex() {
            return self.graph.vertex_name(m.alpha.source()).to_string();
        }
        let mut parts: Vec<String> = m
            .alpha
            .edges()
            .iter()
            .map(|&e| self.graph.edge_name(e).to_string())
            .collect();
        parts.extend(
            m.beta
                .edges()
                .iter()
                .rev()
                .map(|&e| format!("{}*", self.graph.edge_name(e))),
        );
        parts.join(" ")
    }
}

fn add_term(out: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    use std::collections::btree_map::Entry;
    match out.entry(m) {
        Entry::Vacant(slot) => {
            if !c.is_zero() {
                slot.insert(c);
            }
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// `S_α S_β*` with `t(α) = t(β)`; `P_v` is `(v, v)` and `S_p` is `(p, t(p))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub alpha: Path,
    pub beta: Path,
}

impl Monomial {
    pub fn vertex(v: VertexId) -> Self {
        Monomial {
            alpha: Path::vertex(v),
            beta: Path::vertex(v),
        }
    }

    pub fn degree(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    pub fn star(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A generator `P_v`, `S_e` or `S_e*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Vertex(VertexId),
    Edge(EdgeId),
    Ghost(EdgeId),
}

/// A scalar times a product of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord {
    pub coeff: Scalar,
    pub letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GeneratorWord {
            coeff: Scalar::one(),
            letters,
        }
    }
}

/// Class of a generator word in the algebra, in normal form.
pub fn normal_form(
    ctx: &Arc<AlgebraContext>,
    word: &GeneratorWord,
) -> Result<AlgebraElement, AlgebraError> {
    let mut acc = ctx.one().scale(&word.coeff);
    for &l in &word.letters {
        acc = acc.mul(&ctx.generator(l)?)?;
    }
    Ok(acc)
}

/// A finite linear combination of normal-form monomials.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    ctx: Arc<AlgebraContext>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    fn check(&self, other: &AlgebraElement) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Ok(AlgebraElement {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return self.ctx.zero();
        }
        AlgebraElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = AlgebraContext::mul_monomials(m1, m2) {
                    self.ctx.reduce_into(c1 * c2, m, &mut terms);
                }
            }
        }
        Ok(AlgebraElement {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// The involution `(S_α S_β*)* = S_β S_α*`; scalars are fixed.
    pub fn star(&self) -> Result<AlgebraElement, AlgebraError> {
        if self.ctx.is_path_mode() {
            return Err(AlgebraError::StarInPathMode);
        }
        Ok(AlgebraElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.star(), c.clone()))
                .collect(),
        })
    }

    /// Builds an element from monomials assumed to be in normal form.
    /// Used by independent reduction routes that must not reuse
    /// [`AlgebraContext::monomial`].
    pub fn from_normal_terms(
        ctx: &Arc<AlgebraContext>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> AlgebraElement {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            add_term(&mut out, m, c);
        }
        AlgebraElement {
            ctx: ctx.clone(),
            terms: out,
        }
    }

    /// Re-expresses the element in another context over the same graph
    /// (for instance a Cohn element viewed in the Leavitt quotient).
    pub fn project(&self, target: &Arc<AlgebraContext>) -> Result<AlgebraElement, AlgebraError> {
        if !(Arc::ptr_eq(self.ctx.graph(), target.graph()) || self.ctx.graph() == target.graph()) {
            return Err(AlgebraError::ContextMismatch);
        }
        let mut out = target.zero();
        for (m, c) in &self.terms {
            if target.is_path_mode() && !m.beta.is_vertex() {
                return Err(AlgebraError::StarInPathMode);
            }
            target.reduce_into(c.clone(), m.clone(), &mut out.terms);
        }
        Ok(out)
    }
}

fn fmt_coeff(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for AlgebraElement {
    /// Terms in canonical order, e.g. `v - f f* + 1/2 e`. Zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{} ", fmt_coeff(&abs))?;
            }
            f.write_str(&self.ctx.fmt_monomial(m))?;
        }
        Ok(())
    }
}
