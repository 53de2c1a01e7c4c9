//! Directed graphs, path homomorphisms, and exact arithmetic in the path,
//! Cohn and Leavitt path algebras they generate.

pub mod admissible;
pub mod algebra;
pub mod catalog;
pub mod enumerate;
pub mod format;
pub mod graph;
pub mod morphism;
pub mod pathset;
pub mod pullback;

pub use algebra::{AlgebraContext, AlgebraElement, AlgebraError, GeneratorWord, Letter, Monomial, Scalar};
pub use graph::{EdgeId, Graph, GraphBuilder, GraphError, Path, VertexId};
pub use morphism::{compose, Category, CategoryVerdict, MorphismError, PathHom};
pub use pathset::PathSet;
