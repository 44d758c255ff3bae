//! Multigraphs with a distinguished terminal set.
//!
//! A [`Graft`] is an undirected loopless multigraph together with a set of at
//! least two terminals. Vertices and edges are addressed by dense ids. Edge
//! ids are the stable identity of an edge: deleting, contracting or splitting
//! off never renumbers a surviving edge, and freshly created edges take the
//! next id that was never used in the lineage of the graft. This is what lets
//! paths and cuts, stored as edge-id sequences, move freely between a graft
//! and the grafts derived from it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Dense vertex index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Dense edge index, assigned in construction order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

impl From<usize> for EdgeId {
    fn from(e: usize) -> Self {
        EdgeId(e)
    }
}

pub type VertexSet = BTreeSet<VertexId>;
pub type EdgeSet = BTreeSet<EdgeId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraftError {
    #[error("edge {index} is a loop at vertex {vertex}")]
    LoopEdge { index: usize, vertex: VertexId },
    #[error("a graft needs at least two distinct terminals, got {0}")]
    TooFewTerminals(usize),
    #[error("terminal {0} is listed twice")]
    DuplicateTerminal(VertexId),
    #[error("vertex {vertex} is out of range for {count} vertices")]
    DanglingVertexRef { vertex: VertexId, count: usize },
    #[error("vertex {0} is not a live vertex of the graft")]
    UnknownVertex(VertexId),
    #[error("edge {0} is not an edge of the graft")]
    UnknownEdge(EdgeId),
    #[error("invalid contraction family: {0}")]
    InvalidFamily(String),
    #[error("cannot split off: {0}")]
    NotIncident(String),
    #[error("splitting off would create a loop at {0}")]
    WouldCreateLoop(VertexId),
}

/// A finite loopless multigraph with terminals.
///
/// Values are immutable once built; every operation returns a new graft.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graft {
    alive: Vec<bool>,
    is_terminal: Vec<bool>,
    terminals: Vec<VertexId>,
    edges: Vec<Option<(VertexId, VertexId)>>,
    incidence: Vec<Vec<EdgeId>>,
}

impl Graft {
    /// Builds a graft on vertices `0..vertex_count`. Edge ids follow the
    /// order of `edges`.
    pub fn new(
        vertex_count: usize,
        terminals: &[VertexId],
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraftError> {
        let check = |v: VertexId| {
            if v.0 < vertex_count {
                Ok(())
            } else {
                Err(GraftError::DanglingVertexRef {
                    vertex: v,
                    count: vertex_count,
                })
            }
        };
        let mut is_terminal = vec![false; vertex_count];
        for &t in terminals {
            check(t)?;
            if is_terminal[t.0] {
                return Err(GraftError::DuplicateTerminal(t));
            }
            is_terminal[t.0] = true;
        }
        if terminals.len() < 2 {
            return Err(GraftError::TooFewTerminals(terminals.len()));
        }
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut stored = Vec::with_capacity(edges.len());
        for (index, &(u, v)) in edges.iter().enumerate() {
            check(u)?;
            check(v)?;
            if u == v {
                return Err(GraftError::LoopEdge { index, vertex: u });
            }
            incidence[u.0].push(EdgeId(index));
            incidence[v.0].push(EdgeId(index));
            stored.push(Some((u, v)));
        }
        let mut terminals = terminals.to_vec();
        terminals.sort();
        Ok(Graft {
            alive: vec![true; vertex_count],
            is_terminal,
            terminals,
            edges: stored,
            incidence,
        })
    }

    /// Upper bound (exclusive) on vertex ids, including retired ones.
    pub fn vertex_bound(&self) -> usize {
        self.alive.len()
    }

    /// Live vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| VertexId(i))
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.alive.get(v.0).copied().unwrap_or(false)
    }

    /// Terminals in ascending order.
    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.is_terminal.get(v.0).copied().unwrap_or(false)
    }

    /// The id the next freshly created edge will receive.
    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.len())
    }

    /// Live edges in ascending id order.
    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_some())
            .map(|(i, _)| EdgeId(i))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_some()).count()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        matches!(self.edges.get(e.0), Some(Some(_)))
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(e.0).copied().flatten()
    }

    /// The endpoint of `e` that is not `v`, if `e` is incident with `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    /// Edges incident with `v`, ascending. Empty for unknown vertices.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.incidence.get(v.0).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    /// Edges with exactly one endpoint in `x`.
    pub fn delta(&self, x: &VertexSet) -> Result<EdgeSet, GraftError> {
        for &v in x {
            if !self.contains_vertex(v) {
                return Err(GraftError::UnknownVertex(v));
            }
        }
        let mut out = EdgeSet::new();
        for &v in x {
            for &e in self.incident(v) {
                let w = self.other_end(e, v).expect("incidence is consistent");
                if !x.contains(&w) {
                    out.insert(e);
                }
            }
        }
        Ok(out)
    }

    /// Size of [`Graft::delta`].
    pub fn d(&self, x: &VertexSet) -> Result<usize, GraftError> {
        self.delta(x).map(|c| c.len())
    }

    /// Edges at a single vertex; an unknown vertex has none.
    pub fn delta_vertex(&self, v: VertexId) -> EdgeSet {
        self.incident(v).iter().copied().collect()
    }

    /// Same vertices and terminals, only the edges in `keep`.
    pub fn restrict(&self, keep: &EdgeSet) -> Result<Graft, GraftError> {
        for &e in keep {
            if !self.contains_edge(e) {
                return Err(GraftError::UnknownEdge(e));
            }
        }
        Ok(self.filter_edges(|e| keep.contains(&e)))
    }

    /// Same vertices and terminals without the edges in `remove`.
    /// Ids in `remove` that are not edges of the graft are ignored.
    pub fn without_edges(&self, remove: &EdgeSet) -> Graft {
        self.filter_edges(|e| !remove.contains(&e))
    }

    fn filter_edges(&self, mut keep: impl FnMut(EdgeId) -> bool) -> Graft {
        let edges: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| e.filter(|_| keep(EdgeId(i))))
            .collect();
        let incidence = self
            .incidence
            .iter()
            .map(|list| {
                list.iter()
                    .copied()
                    .filter(|e| edges[e.0].is_some())
                    .collect()
            })
            .collect();
        Graft {
            alive: self.alive.clone(),
            is_terminal: self.is_terminal.clone(),
            terminals: self.terminals.clone(),
            edges,
            incidence,
        }
    }

    /// Contracts every set of `family` onto its terminal and drops the edges
    /// that become loops.
    pub fn contract(&self, family: &ContractionFamily) -> Result<Graft, GraftError> {
        family.validate(self)?;
        let mut alive = self.alive.clone();
        for (&t, set) in &family.sets {
            for &v in set {
                if v != t {
                    alive[v.0] = false;
                }
            }
        }
        let mut incidence = vec![Vec::new(); self.alive.len()];
        let mut edges = vec![None; self.edges.len()];
        for e in self.edge_ids() {
            if family.deleted_edges.contains(&e) {
                continue;
            }
            let (u, v) = self.endpoints(e).expect("live edge");
            let (u, v) = (family.relabel(u), family.relabel(v));
            edges[e.0] = Some((u, v));
            incidence[u.0].push(e);
            incidence[v.0].push(e);
        }
        Ok(Graft {
            alive,
            is_terminal: self.is_terminal.clone(),
            terminals: self.terminals.clone(),
            edges,
            incidence,
        })
    }

    /// Splits off the edges `e0 = s x` and `f0 = x y` at the inner vertex `x`,
    /// replacing them by a fresh edge `h0 = s y`.
    pub fn split_off(
        &self,
        s: VertexId,
        e0: EdgeId,
        f0: EdgeId,
    ) -> Result<(Graft, EdgeId), GraftError> {
        if !self.contains_edge(e0) {
            return Err(GraftError::UnknownEdge(e0));
        }
        if !self.contains_edge(f0) {
            return Err(GraftError::UnknownEdge(f0));
        }
        if e0 == f0 {
            return Err(GraftError::NotIncident(format!(
                "edge {e0} cannot be split off against itself"
            )));
        }
        if !self.is_terminal(s) {
            return Err(GraftError::NotIncident(format!("{s} is not a terminal")));
        }
        let x = self
            .other_end(e0, s)
            .ok_or_else(|| GraftError::NotIncident(format!("edge {e0} does not meet {s}")))?;
        if self.is_terminal(x) {
            return Err(GraftError::NotIncident(format!(
                "edge {e0} ends at terminal {x}, not at an inner vertex"
            )));
        }
        let y = self.other_end(f0, x).ok_or_else(|| {
            GraftError::NotIncident(format!("edges {e0} and {f0} do not share {x}"))
        })?;
        if y == s {
            return Err(GraftError::WouldCreateLoop(s));
        }
        let h0 = self.next_edge_id();
        let mut out = self.without_edges(&[e0, f0].into_iter().collect());
        out.edges.push(Some((s, y)));
        out.incidence[s.0].push(h0);
        out.incidence[y.0].push(h0);
        Ok((out, h0))
    }
}

/// Disjoint vertex sets `X_t`, one per contracted terminal, with the induced
/// relabelling of vertices and the edges that contraction deletes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionFamily {
    sets: BTreeMap<VertexId, VertexSet>,
    relabel: BTreeMap<VertexId, VertexId>,
    deleted_edges: EdgeSet,
}

impl ContractionFamily {
    /// Checks disjointness and `X_t ∩ T = {t}`; terminals without an entry
    /// get `X_t = {t}`.
    pub fn new(graft: &Graft, sets: BTreeMap<VertexId, VertexSet>) -> Result<Self, GraftError> {
        let mut full = BTreeMap::new();
        for &t in graft.terminals() {
            full.insert(t, [t].into_iter().collect::<VertexSet>());
        }
        for (t, set) in sets {
            if !graft.is_terminal(t) {
                return Err(GraftError::InvalidFamily(format!("{t} is not a terminal")));
            }
            full.insert(t, set);
        }
        let mut relabel = BTreeMap::new();
        for (&t, set) in &full {
            if !set.contains(&t) {
                return Err(GraftError::InvalidFamily(format!(
                    "X_{t} does not contain {t}"
                )));
            }
            for &v in set {
                if !graft.contains_vertex(v) {
                    return Err(GraftError::UnknownVertex(v));
                }
                if v != t && graft.is_terminal(v) {
                    return Err(GraftError::InvalidFamily(format!(
                        "X_{t} contains the other terminal {v}"
                    )));
                }
                if let Some(prev) = relabel.insert(v, t) {
                    return Err(GraftError::InvalidFamily(format!(
                        "vertex {v} lies in both X_{prev} and X_{t}"
                    )));
                }
            }
        }
        let deleted_edges = graft
            .edge_ids()
            .filter(|&e| {
                let (u, v) = graft.endpoints(e).expect("live edge");
                matches!((relabel.get(&u), relabel.get(&v)), (Some(a), Some(b)) if a == b)
            })
            .collect();
        Ok(ContractionFamily {
            sets: full,
            relabel,
            deleted_edges,
        })
    }

    /// The family with `X_t = {t}` for every terminal.
    pub fn identity(graft: &Graft) -> Self {
        Self::new(graft, BTreeMap::new()).expect("singletons are always valid")
    }

    fn validate(&self, graft: &Graft) -> Result<(), GraftError> {
        for (&t, set) in &self.sets {
            if !graft.is_terminal(t) {
                return Err(GraftError::InvalidFamily(format!("{t} is not a terminal")));
            }
            if let Some(&v) = set.iter().find(|&&v| !graft.contains_vertex(v)) {
                return Err(GraftError::UnknownVertex(v));
            }
        }
        Ok(())
    }

    /// `X_t`, or `None` for a vertex that is not a terminal of the family.
    pub fn set(&self, t: VertexId) -> Option<&VertexSet> {
        self.sets.get(&t)
    }

    pub fn sets(&self) -> &BTreeMap<VertexId, VertexSet> {
        &self.sets
    }

    /// `i_F`: the terminal whose set contains `v`, or `v` itself.
    pub fn relabel(&self, v: VertexId) -> VertexId {
        self.relabel.get(&v).copied().unwrap_or(v)
    }

    /// Edges with both endpoints inside one `X_t`.
    pub fn deleted_edges(&self) -> &EdgeSet {
        &self.deleted_edges
    }

    /// Union of all sets.
    pub fn covered(&self) -> VertexSet {
        self.relabel.keys().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.sets.values().all(|s| s.len() == 1)
    }
}
