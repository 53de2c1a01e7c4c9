//! JSON documents for graphs, morphisms, inclusions and pullback instances.
//!
//! Documents keep field and key order, so `to_json(parse(text)) == text` for
//! any file written by [`to_json`].

use std::sync::Arc;

use indexmap::IndexMap;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::admissible::{AdmissibleError, GraphInclusion};
use crate::graph::{EmitterSpec, Graph, GraphError, VertexId};
use crate::morphism::{MorphismError, PathHom};
use crate::pullback::{PullbackError, PullbackInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("{line}:{column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("unknown graph `{0}`")]
    UnknownGraph(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Admissible(#[from] AdmissibleError),
    #[error(transparent)]
    Pullback(Box<PullbackError>),
}

impl From<PullbackError> for FormatError {
    fn from(e: PullbackError) -> Self {
        FormatError::Pullback(Box::new(e))
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the message.
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EmitterDoc {
    Plain(String),
    Annotated {
        vertex: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unlisted_targets: Option<Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub infinite_emitters: Vec<EmitterDoc>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDoc {
            vertices: g.vertices().map(|v| g.vertex_name(v).to_string()).collect(),
            edges: g
                .edges()
                .map(|e| EdgeDoc {
                    id: g.edge_name(e).to_string(),
                    src: g.vertex_name(g.src(e)).to_string(),
                    tgt: g.vertex_name(g.tgt(e)).to_string(),
                })
                .collect(),
            infinite_emitters: g
                .infinite_emitters()
                .iter()
                .map(|ie| {
                    let name = g.vertex_name(ie.vertex).to_string();
                    match &ie.unlisted_targets {
                        None => EmitterDoc::Plain(name),
                        Some(t) => EmitterDoc::Annotated {
                            vertex: name,
                            unlisted_targets: Some(
                                t.iter().map(|&v: &VertexId| g.vertex_name(v).to_string()).collect(),
                            ),
                        },
                    }
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<Graph, FormatError> {
        let mut b = Graph::builder().vertices(self.vertices.iter().cloned());
        for e in &self.edges {
            b = b.edge(e.id.clone(), e.src.clone(), e.tgt.clone());
        }
        for ie in &self.infinite_emitters {
            b = b.infinite_emitter(match ie {
                EmitterDoc::Plain(v) => EmitterSpec {
                    vertex: v.clone(),
                    unlisted_targets: None,
                },
                EmitterDoc::Annotated {
                    vertex,
                    unlisted_targets,
                } => EmitterSpec {
                    vertex: vertex.clone(),
                    unlisted_targets: unlisted_targets.clone(),
                },
            });
        }
        Ok(b.build()?)
    }
}

/// A graph given inline or by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Name(String),
    Inline(GraphDoc),
}

impl GraphRef {
    pub fn resolve(
        &self,
        lookup: &dyn Fn(&str) -> Option<Arc<Graph>>,
    ) -> Result<Arc<Graph>, FormatError> {
        match self {
            GraphRef::Name(n) => lookup(n).ok_or_else(|| FormatError::UnknownGraph(n.clone())),
            GraphRef::Inline(doc) => Ok(Arc::new(doc.build()?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageDoc {
    Path(Vec<String>),
    Vertex { vertex: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub dom: GraphRef,
    pub cod: GraphRef,
    pub vmap: IndexMap<String, String>,
    pub emap: IndexMap<String, ImageDoc>,
}

impl MorphismDoc {
    pub fn from_morphism(f: &PathHom, dom: GraphRef, cod: GraphRef) -> Self {
        let (d, c) = (f.dom(), f.cod());
        MorphismDoc {
            dom,
            cod,
            vmap: d
                .vertices()
                .map(|v| (d.vertex_name(v).to_string(), c.vertex_name(f.vertex_image(v)).to_string()))
                .collect(),
            emap: d
                .edges()
                .map(|e| {
                    let p = f.edge_image(e);
                    let img = if p.is_vertex() {
                        ImageDoc::Vertex {
                            vertex: c.vertex_name(p.source()).to_string(),
                        }
                    } else {
                        ImageDoc::Path(p.edges().iter().map(|&x| c.edge_name(x).to_string()).collect())
                    };
                    (d.edge_name(e).to_string(), img)
                })
                .collect(),
        }
    }

    pub fn build(&self, lookup: &dyn Fn(&str) -> Option<Arc<Graph>>) -> Result<PathHom, FormatError> {
        let dom = self.dom.resolve(lookup)?;
        let cod = self.cod.resolve(lookup)?;
        let vmap: Vec<(&str, &str)> = self.vmap.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let images: Vec<(&str, Vec<&str>)> = self
            .emap
            .iter()
            .map(|(e, img)| {
                let names = match img {
                    ImageDoc::Path(p) => p.iter().map(String::as_str).collect(),
                    ImageDoc::Vertex { vertex } => vec![vertex.as_str()],
                };
                (e.as_str(), names)
            })
            .collect();
        for (e, img) in &self.emap {
            if let ImageDoc::Path(p) = img {
                if p.is_empty() {
                    return Err(MorphismError::MissingEdgeImage(e.clone()).into());
                }
                if p.len() == 1 && cod.vertex_by_name(&p[0]).is_some() {
                    return Err(GraphError::UnknownId(p[0].clone()).into());
                }
            }
        }
        let emap: Vec<(&str, &[&str])> = images.iter().map(|(e, n)| (*e, n.as_slice())).collect();
        Ok(PathHom::from_names(dom, cod, &vmap, &emap)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InclusionDoc {
    pub sub: GraphRef,
    pub amb: GraphRef,
    pub vmap: IndexMap<String, String>,
    pub emap: IndexMap<String, String>,
}

impl InclusionDoc {
    pub fn from_inclusion(inc: &GraphInclusion, sub: GraphRef, amb: GraphRef) -> Self {
        let (s, a) = (inc.sub(), inc.amb());
        InclusionDoc {
            sub,
            amb,
            vmap: s
                .vertices()
                .map(|v| (s.vertex_name(v).to_string(), a.vertex_name(inc.vertex_image(v)).to_string()))
                .collect(),
            emap: s
                .edges()
                .map(|e| (s.edge_name(e).to_string(), a.edge_name(inc.edge_image(e)).to_string()))
                .collect(),
        }
    }

    pub fn build(&self, lookup: &dyn Fn(&str) -> Option<Arc<Graph>>) -> Result<GraphInclusion, FormatError> {
        let sub = self.sub.resolve(lookup)?;
        let amb = self.amb.resolve(lookup)?;
        let vmap: Vec<(&str, &str)> = self.vmap.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let emap: Vec<(&str, &str)> = self.emap.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Ok(GraphInclusion::from_names(sub, amb, &vmap, &emap)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub graphs: IndexMap<String, GraphDoc>,
    pub pi1: InclusionDoc,
    pub pi2: InclusionDoc,
    pub f: MorphismDoc,
    pub f_res: MorphismDoc,
    pub length_bound: usize,
}

impl InstanceDoc {
    /// Bundles the four graphs as `E1`, `E2`, `F1`, `F2` and refers to them
    /// by name.
    pub fn from_instance(inst: &PullbackInstance) -> Self {
        let name = |s: &str| GraphRef::Name(s.into());
        let graphs = [
            ("E1", inst.e1()),
            ("E2", inst.e2()),
            ("F1", inst.pi1.sub()),
            ("F2", inst.pi2.sub()),
        ]
        .into_iter()
        .map(|(n, g)| (n.to_string(), GraphDoc::from_graph(g)))
        .collect();
        InstanceDoc {
            graphs,
            pi1: InclusionDoc::from_inclusion(&inst.pi1, name("F1"), name("E1")),
            pi2: InclusionDoc::from_inclusion(&inst.pi2, name("F2"), name("E2")),
            f: MorphismDoc::from_morphism(&inst.f, name("E1"), name("E2")),
            f_res: MorphismDoc::from_morphism(&inst.f_res, name("F1"), name("F2")),
            length_bound: inst.length_bound,
        }
    }

    /// Builds the instance; graph names resolve against `graphs` first and
    /// `outer` second.
    pub fn build(
        &self,
        outer: &dyn Fn(&str) -> Option<Arc<Graph>>,
    ) -> Result<PullbackInstance, FormatError> {
        let mut local: IndexMap<String, Arc<Graph>> = IndexMap::new();
        for (name, doc) in &self.graphs {
            local.insert(name.clone(), Arc::new(doc.build()?));
        }
        let lookup = |n: &str| local.get(n).cloned().or_else(|| outer(n));
        Ok(PullbackInstance::new(
            self.pi1.build(&lookup)?,
            self.pi2.build(&lookup)?,
            self.f.build(&lookup)?,
            self.f_res.build(&lookup)?,
            self.length_bound,
        )?)
    }
}

pub fn no_names(_: &str) -> Option<Arc<Graph>> {
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn graph_round_trip() {
        for g in [catalog::rp2q_e1(), catalog::infinite_emitter_graph(), Graph::empty()] {
            let doc = GraphDoc::from_graph(&g);
            let text = to_json(&doc);
            let back: GraphDoc = parse(&text).unwrap();
            assert_eq!(to_json(&back), text);
            assert_eq!(back.build().unwrap(), g);
        }
    }

    #[test]
    fn plain_emitter_annotation() {
        let doc: GraphDoc =
            parse(r#"{"vertices":["v"],"edges":[],"infinite_emitters":["v"]}"#).unwrap();
        let g = doc.build().unwrap();
        assert!(g.infinite_emitter(VertexId(0)).unwrap().unlisted_targets.is_none());
    }

    #[test]
    fn morphism_round_trip() {
        let f = catalog::constant_loop_to_point();
        let doc = MorphismDoc::from_morphism(&f, GraphRef::Name("loop".into()), GraphRef::Name("point".into()));
        let text = to_json(&doc);
        assert!(text.contains(r#""vertex": "v""#));
        let back: MorphismDoc = parse(&text).unwrap();
        let lookup = |n: &str| match n {
            "loop" => Some(Arc::new(catalog::loop_graph())),
            "point" => Some(Arc::new(catalog::point())),
            _ => None,
        };
        assert_eq!(back.build(&lookup).unwrap(), f);
    }

    #[test]
    fn instance_round_trip() {
        let inst = catalog::rp2q_instance(6);
        let doc = InstanceDoc::from_instance(&inst);
        let text = to_json(&doc);
        let back: InstanceDoc = parse(&text).unwrap();
        assert_eq!(to_json(&back), text);
        let rebuilt = back.build(&no_names).unwrap();
        assert_eq!(rebuilt.f.classify(), inst.f.classify());
        assert_eq!(rebuilt.length_bound, 6);
    }

    #[test]
    fn json_errors_carry_positions() {
        let err = parse::<GraphDoc>("{\n  \"vertices\": [\"v\",]\n}").unwrap_err();
        match err {
            FormatError::Json { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse::<GraphDoc>(r#"{"vertices":[],"edges":[],"extra":1}"#),
            Err(FormatError::Json { .. })
        ));
    }

    #[test]
    fn unknown_graph_name() {
        let doc: MorphismDoc =
            parse(r#"{"dom":"nope","cod":"nope","vmap":{},"emap":{}}"#).unwrap();
        assert_eq!(doc.build(&no_names), Err(FormatError::UnknownGraph("nope".into())));
    }
}
