//! Paths and edge-disjoint path systems, stored as edge-id sequences.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graft::{EdgeId, EdgeSet, Graft, VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("a path needs at least one edge")]
    Empty,
    #[error("edge {0} is not an edge of the graft")]
    UnknownEdge(EdgeId),
    #[error("edge {edge} does not continue the walk at vertex {at}")]
    Disconnected { edge: EdgeId, at: VertexId },
    #[error("vertex {0} is visited twice")]
    RepeatedVertex(VertexId),
    #[error("the walk ends at {actual}, expected {expected}")]
    EndMismatch {
        expected: VertexId,
        actual: VertexId,
    },
}

/// A path given by its start vertex and its edges in traversal order.
///
/// The fields are public so that claimed paths (for instance from a solution
/// file) can be represented before they are checked; [`Path::new`] and
/// [`Path::vertices`] perform the check against a graft.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: VertexId,
    pub end: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    /// Walks `edges` from `start` and rejects anything that is not a path.
    pub fn new(graft: &Graft, start: VertexId, edges: Vec<EdgeId>) -> Result<Self, PathError> {
        let verts = walk(graft, start, &edges)?;
        let end = *verts.last().expect("walk is nonempty");
        Ok(Path { start, end, edges })
    }

    /// Vertex sequence of the path in `graft`, validating it on the way.
    pub fn vertices(&self, graft: &Graft) -> Result<Vec<VertexId>, PathError> {
        let verts = walk(graft, self.start, &self.edges)?;
        let last = *verts.last().expect("walk is nonempty");
        if last != self.end {
            return Err(PathError::EndMismatch {
                expected: self.end,
                actual: last,
            });
        }
        Ok(verts)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn reversed(&self) -> Path {
        Path {
            start: self.end,
            end: self.start,
            edges: self.edges.iter().rev().copied().collect(),
        }
    }

    /// The same path oriented to start at `v`, if `v` is an endpoint.
    pub fn oriented_from(&self, v: VertexId) -> Option<Path> {
        if self.start == v {
            Some(self.clone())
        } else if self.end == v {
            Some(self.reversed())
        } else {
            None
        }
    }

    pub fn has_endpoint(&self, v: VertexId) -> bool {
        self.start == v || self.end == v
    }

    /// True when the path joins distinct terminals and avoids terminals
    /// inside.
    pub fn is_t_path(&self, graft: &Graft) -> bool {
        match self.vertices(graft) {
            Ok(verts) => {
                self.start != self.end
                    && graft.is_terminal(self.start)
                    && graft.is_terminal(self.end)
                    && verts[1..verts.len() - 1]
                        .iter()
                        .all(|&v| !graft.is_terminal(v))
            }
            Err(_) => false,
        }
    }

    /// True when the path runs between `a` and `b` (either orientation) with
    /// no inner vertex in `a ∪ b`.
    pub fn is_ab_path(&self, graft: &Graft, a: &VertexSet, b: &VertexSet) -> bool {
        let Ok(verts) = self.vertices(graft) else {
            return false;
        };
        let ends_ok = (a.contains(&self.start) && b.contains(&self.end))
            || (b.contains(&self.start) && a.contains(&self.end));
        ends_ok
            && verts[1..verts.len() - 1]
                .iter()
                .all(|v| !a.contains(v) && !b.contains(v))
    }
}

pub(crate) fn walk(
    graft: &Graft,
    start: VertexId,
    edges: &[EdgeId],
) -> Result<Vec<VertexId>, PathError> {
    if edges.is_empty() {
        return Err(PathError::Empty);
    }
    let mut seen = BTreeSet::from([start]);
    let mut verts = vec![start];
    let mut at = start;
    for &e in edges {
        if !graft.contains_edge(e) {
            return Err(PathError::UnknownEdge(e));
        }
        let next = graft
            .other_end(e, at)
            .ok_or(PathError::Disconnected { edge: e, at })?;
        if !seen.insert(next) {
            return Err(PathError::RepeatedVertex(next));
        }
        verts.push(next);
        at = next;
    }
    Ok(verts)
}

/// A family of paths. Edge-disjointness is checked by the operations that
/// consume a system, not by construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathSystem {
    pub paths: Vec<Path>,
}

impl PathSystem {
    pub fn new(paths: Vec<Path>) -> Self {
        PathSystem { paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Path> {
        self.paths.iter()
    }

    /// Union of the edge sets.
    pub fn edge_set(&self) -> EdgeSet {
        self.paths
            .iter()
            .flat_map(|p| p.edges.iter().copied())
            .collect()
    }

    pub fn is_edge_disjoint(&self) -> bool {
        let total: usize = self.paths.iter().map(Path::len).sum();
        total == self.edge_set().len()
    }

    /// The path using `e`, if any.
    pub fn path_through(&self, e: EdgeId) -> Option<&Path> {
        self.paths.iter().find(|p| p.contains_edge(e))
    }

    /// `δ_P(X)`: edges of the system lying in `δ(X)`.
    pub fn delta_trace(&self, graft: &Graft, x: &VertexSet) -> EdgeSet {
        let used = self.edge_set();
        graft
            .delta(x)
            .map(|d| d.intersection(&used).copied().collect())
            .unwrap_or_default()
    }

    /// Whether the system covers `δ(t)`.
    pub fn links(&self, graft: &Graft, t: VertexId) -> bool {
        let used = self.edge_set();
        graft.incident(t).iter().all(|e| used.contains(e))
    }
}

impl FromIterator<Path> for PathSystem {
    fn from_iter<I: IntoIterator<Item = Path>>(iter: I) -> Self {
        PathSystem {
            paths: iter.into_iter().collect(),
        }
    }
}

impl IntoIterator for PathSystem {
    type Item = Path;
    type IntoIter = std::vec::IntoIter<Path>;

    fn into_iter(self) -> Self::IntoIter {
        self.paths.into_iter()
    }
}

impl<'a> IntoIterator for &'a PathSystem {
    type Item = &'a Path;
    type IntoIter = std::slice::Iter<'a, Path>;

    fn into_iter(self) -> Self::IntoIter {
        self.paths.iter()
    }
}
