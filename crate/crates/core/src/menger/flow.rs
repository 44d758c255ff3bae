//! Unit-capacity flow on the undirected edges of a graft between two vertex
//! sets. The sets act as a virtual super-source and super-sink: a search
//! never re-enters a source vertex and never leaves a sink vertex, so every
//! flow decomposes into AB-paths without inner vertices in `A ∪ B`.

use std::collections::VecDeque;

use crate::graft::{EdgeId, Graft, VertexId, VertexSet};
use crate::path::{Path, PathSystem};

pub(crate) struct UnitFlow<'g> {
    graft: &'g Graft,
    source: Vec<bool>,
    sink: Vec<bool>,
    /// +1: flow from the first endpoint to the second.
    flow: Vec<i8>,
}

impl<'g> UnitFlow<'g> {
    pub fn new(graft: &'g Graft, a: &VertexSet, b: &VertexSet) -> Self {
        let n = graft.vertex_bound();
        let mut source = vec![false; n];
        let mut sink = vec![false; n];
        for v in a {
            source[v.0] = true;
        }
        for v in b {
            sink[v.0] = true;
        }
        UnitFlow {
            graft,
            source,
            sink,
            flow: vec![0; graft.next_edge_id().0],
        }
    }

    fn is_source(&self, v: VertexId) -> bool {
        self.source[v.0]
    }

    fn is_sink(&self, v: VertexId) -> bool {
        self.sink[v.0]
    }

    /// Edges inside `A` or inside `B` never lie on an AB-path.
    fn usable(&self, e: EdgeId) -> bool {
        let (u, v) = self.graft.endpoints(e).expect("live edge");
        !(self.is_source(u) && self.is_source(v)) && !(self.is_sink(u) && self.is_sink(v))
    }

    /// Flow on `e` in the direction leaving `from`.
    pub fn along(&self, e: EdgeId, from: VertexId) -> i8 {
        let (u, _) = self.graft.endpoints(e).expect("live edge");
        if u == from {
            self.flow[e.0]
        } else {
            -self.flow[e.0]
        }
    }

    pub fn push(&mut self, e: EdgeId, from: VertexId) {
        let (u, _) = self.graft.endpoints(e).expect("live edge");
        if u == from {
            self.flow[e.0] += 1;
        } else {
            self.flow[e.0] -= 1;
        }
    }

    pub fn set_along(&mut self, e: EdgeId, from: VertexId, value: i8) {
        let (u, _) = self.graft.endpoints(e).expect("live edge");
        self.flow[e.0] = if u == from { value } else { -value };
    }

    /// Loads a path system whose paths are already oriented from `A` to `B`.
    pub fn load(&mut self, paths: &PathSystem) {
        for p in paths {
            let mut at = p.start;
            for &e in &p.edges {
                self.push(e, at);
                at = self.graft.other_end(e, at).expect("validated path");
            }
        }
    }

    fn residual_step(&self, e: EdgeId, from: VertexId) -> Option<VertexId> {
        if !self.usable(e) || self.along(e, from) >= 1 {
            return None;
        }
        self.graft.other_end(e, from)
    }

    /// Breadth-first augmenting search, exploring edges in ascending id
    /// order. Returns the (edge, tail) steps of the augmenting path.
    pub fn find_augmenting(&self) -> Option<Vec<(EdgeId, VertexId)>> {
        let n = self.graft.vertex_bound();
        let mut parent: Vec<Option<(EdgeId, VertexId)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for v in self.graft.vertices().filter(|&v| self.is_source(v)) {
            seen[v.0] = true;
            queue.push_back(v);
        }
        while let Some(w) = queue.pop_front() {
            for &e in self.graft.incident(w) {
                let Some(z) = self.residual_step(e, w) else {
                    continue;
                };
                if seen[z.0] || self.is_source(z) {
                    continue;
                }
                seen[z.0] = true;
                parent[z.0] = Some((e, w));
                if self.is_sink(z) {
                    let mut steps = Vec::new();
                    let mut at = z;
                    while let Some((e, from)) = parent[at.0] {
                        steps.push((e, from));
                        at = from;
                    }
                    steps.reverse();
                    return Some(steps);
                }
                queue.push_back(z);
            }
        }
        None
    }

    pub fn apply(&mut self, steps: &[(EdgeId, VertexId)]) {
        for &(e, from) in steps {
            self.push(e, from);
        }
    }

    /// Augments until no augmenting path is left; returns the flow value.
    pub fn maximize(&mut self) -> usize {
        while let Some(steps) = self.find_augmenting() {
            self.apply(&steps);
        }
        self.value()
    }

    pub fn value(&self) -> usize {
        self.graft
            .vertices()
            .filter(|&v| self.is_source(v))
            .flat_map(|v| self.graft.incident(v).iter().map(move |&e| (e, v)))
            .filter(|&(e, v)| self.along(e, v) == 1)
            .count()
    }

    /// Vertices reachable from `seeds` in the residual graph.
    pub fn residual_reach(&self, seeds: impl IntoIterator<Item = VertexId>) -> VertexSet {
        let n = self.graft.vertex_bound();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for v in seeds {
            if !seen[v.0] {
                seen[v.0] = true;
                queue.push_back(v);
            }
        }
        while let Some(w) = queue.pop_front() {
            if self.is_sink(w) {
                continue;
            }
            for &e in self.graft.incident(w) {
                if let Some(z) = self.residual_step(e, w) {
                    if !seen[z.0] && !self.is_source(z) {
                        seen[z.0] = true;
                        queue.push_back(z);
                    }
                }
            }
        }
        self.graft.vertices().filter(|v| seen[v.0]).collect()
    }

    /// Vertices from which `B` is reachable in the residual graph.
    pub fn residual_coreach(&self) -> VertexSet {
        let n = self.graft.vertex_bound();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for v in self.graft.vertices().filter(|&v| self.is_sink(v)) {
            seen[v.0] = true;
            queue.push_back(v);
        }
        while let Some(z) = queue.pop_front() {
            if self.is_source(z) {
                continue;
            }
            for &e in self.graft.incident(z) {
                let w = self.graft.other_end(e, z).expect("incident");
                if seen[w.0] || self.is_sink(w) {
                    continue;
                }
                if self.residual_step(e, w) == Some(z) {
                    seen[w.0] = true;
                    queue.push_back(w);
                }
            }
        }
        self.graft.vertices().filter(|v| seen[v.0]).collect()
    }

    /// Splits the flow into AB-paths, starting from source vertices and
    /// edges in ascending order. Circulations are dropped.
    pub fn decompose(&self) -> PathSystem {
        let mut used = vec![false; self.flow.len()];
        let mut out = Vec::new();
        let sources: Vec<_> = self
            .graft
            .vertices()
            .filter(|&v| self.is_source(v))
            .collect();
        for a in sources {
            for &first in self.graft.incident(a) {
                if used[first.0] || self.along(first, a) != 1 {
                    continue;
                }
                used[first.0] = true;
                // stack of (vertex, edge that entered it)
                let mut verts = vec![a];
                let mut edges = vec![first];
                let mut at = self.graft.other_end(first, a).expect("incident");
                loop {
                    if let Some(pos) = verts.iter().position(|&v| v == at) {
                        verts.truncate(pos + 1);
                        edges.truncate(pos);
                    } else {
                        verts.push(at);
                    }
                    if self.is_sink(at) {
                        break;
                    }
                    let next = self
                        .graft
                        .incident(at)
                        .iter()
                        .copied()
                        .find(|&e| !used[e.0] && self.along(e, at) == 1)
                        .expect("flow is conserved at inner vertices");
                    used[next.0] = true;
                    edges.push(next);
                    at = self.graft.other_end(next, at).expect("incident");
                }
                out.push(Path {
                    start: a,
                    end: at,
                    edges,
                });
            }
        }
        PathSystem::new(out)
    }
}

/// A small directed network with integer capacities, solved by shortest
/// augmenting paths. Arcs come in (forward, reverse) pairs.
pub(crate) struct Network {
    head: Vec<usize>,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    pub fn new(nodes: usize) -> Self {
        Network {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.head.len();
        self.head.push(to);
        self.cap.push(cap);
        self.adj[from].push(id);
        self.head.push(from);
        self.cap.push(0);
        self.adj[to].push(id + 1);
        id
    }

    /// Flow currently on the forward arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.cap[id + 1]
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut parent = vec![usize::MAX; self.adj.len()];
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &a in &self.adj[u] {
                    let v = self.head[a];
                    if self.cap[a] > 0 && !seen[v] {
                        seen[v] = true;
                        parent[v] = a;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut bottleneck = i64::MAX;
            let mut v = t;
            while v != s {
                let a = parent[v];
                bottleneck = bottleneck.min(self.cap[a]);
                v = self.head[a ^ 1];
            }
            let mut v = t;
            while v != s {
                let a = parent[v];
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                v = self.head[a ^ 1];
            }
            total += bottleneck;
        }
    }
}
