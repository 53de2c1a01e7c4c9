//! Finite sets of paths with union and concatenation.

use std::collections::BTreeSet;

use crate::graph::{Graph, Path};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSet(BTreeSet<Path>);

impl PathSet {
    pub fn new() -> Self {
        PathSet(BTreeSet::new())
    }

    /// The multiplicative unit: every vertex of the graph.
    pub fn unit(g: &Graph) -> Self {
        PathSet(g.vertices().map(Path::vertex).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Path> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.0.contains(p)
    }

    pub fn insert(&mut self, p: Path) -> bool {
        self.0.insert(p)
    }

    pub fn add(&self, other: &PathSet) -> PathSet {
        PathSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn mul(&self, other: &PathSet) -> PathSet {
        let mut out = BTreeSet::new();
        for p in &self.0 {
            for q in &other.0 {
                if let Some(pq) = p.concat(q) {
                    out.insert(pq);
                }
            }
        }
        PathSet(out)
    }
}

impl FromIterator<Path> for PathSet {
    fn from_iter<I: IntoIterator<Item = Path>>(iter: I) -> Self {
        PathSet(iter.into_iter().collect())
    }
}

pub fn pathset_add(a: &PathSet, b: &PathSet) -> PathSet {
    a.add(b)
}

pub fn pathset_mul(a: &PathSet, b: &PathSet) -> PathSet {
    a.mul(b)
}
