//! Edge-disjoint path systems between vertex sets and their cuts.
//!
//! Everything here is the undirected, edge-disjoint form of Menger's theorem
//! on a finite graft: augmenting paths, maximum systems with orthogonal
//! cuts, the lattice of minimum (Erdős–Menger) cuts ordered by how early
//! they are crossed, tight cuts through a forced edge, and Pym-style merging
//! of two systems.
//!
//! On finite grafts an Erdős–Menger AB-cut is the same thing as a minimum
//! AB-cut, and every such cut is stored canonically: its `source_region` is
//! the set of vertices reachable from `A` without using cut edges. Under that
//! normal form the lattice order is plain inclusion of source regions.

mod flow;

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graft::{EdgeId, EdgeSet, Graft, GraftError, VertexId, VertexSet};
use crate::path::{Path, PathError, PathSystem};

use flow::Network;
pub(crate) use flow::UnitFlow;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MengerError {
    #[error(transparent)]
    Graft(#[from] GraftError),
    #[error("the two sides share vertex {0}")]
    SidesOverlap(VertexId),
    #[error("both sides must be nonempty")]
    EmptySide,
    #[error("not a system of edge-disjoint AB-paths: {0}")]
    NotAPathSystem(String),
    #[error("edge set {0:?} is not a minimum cut between the given sides")]
    NotMinCut(Vec<EdgeId>),
    #[error("the source side is not linked")]
    NotLinked,
    #[error("some linkage of the source side avoids edge {0}")]
    PreconditionEdgeAvoidable(EdgeId),
    #[error("edge {0} is incident with the source side")]
    EdgeAtSource(EdgeId),
    #[error("pivot is not on both paths")]
    PivotMissing,
    #[error("the combination is not a path: {0}")]
    NotAPath(#[from] PathError),
    #[error("no system meets the requested endpoint edges")]
    Infeasible,
}

/// An edge cut `δ(X)` together with its canonical source region `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub edges: EdgeSet,
    pub source_region: VertexSet,
}

impl Cut {
    /// The cut `δ(X)` recorded with the region `A` reaches once its edges
    /// are removed.
    pub fn from_edges(graft: &Graft, a: &VertexSet, edges: EdgeSet) -> Cut {
        let source_region = reach_avoiding(graft, a, &edges);
        Cut {
            edges,
            source_region,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Outcome of one augmenting step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Augmentation {
    /// The system is maximum; the cut is orthogonal to it.
    Cut(Cut),
    /// A system with one more path.
    Augmented(PathSystem),
}

/// Vertices reachable from `a` in `graft` minus `avoid`.
pub fn reach_avoiding(graft: &Graft, a: &VertexSet, avoid: &EdgeSet) -> VertexSet {
    let mut seen: VertexSet = a
        .iter()
        .copied()
        .filter(|&v| graft.contains_vertex(v))
        .collect();
    let mut queue: VecDeque<_> = seen.iter().copied().collect();
    while let Some(w) = queue.pop_front() {
        for &e in graft.incident(w) {
            if avoid.contains(&e) {
                continue;
            }
            let z = graft.other_end(e, w).expect("incident");
            if seen.insert(z) {
                queue.push_back(z);
            }
        }
    }
    seen
}

/// Whether `cut` consists of exactly one edge from each path and nothing
/// else.
pub fn is_orthogonal(cut: &EdgeSet, paths: &PathSystem) -> bool {
    paths
        .iter()
        .all(|p| p.edges.iter().filter(|e| cut.contains(e)).count() == 1)
        && cut.is_subset(&paths.edge_set())
}

fn check_sides(graft: &Graft, a: &VertexSet, b: &VertexSet) -> Result<(), MengerError> {
    if a.is_empty() || b.is_empty() {
        return Err(MengerError::EmptySide);
    }
    for v in a.iter().chain(b) {
        if !graft.contains_vertex(*v) {
            return Err(GraftError::UnknownVertex(*v).into());
        }
    }
    if let Some(v) = a.intersection(b).next() {
        return Err(MengerError::SidesOverlap(*v));
    }
    Ok(())
}

/// Orients every path of `paths` from `A` to `B`, checking that it is a
/// system of edge-disjoint AB-paths.
fn oriented_system(
    graft: &Graft,
    a: &VertexSet,
    b: &VertexSet,
    paths: &PathSystem,
) -> Result<PathSystem, MengerError> {
    if !paths.is_edge_disjoint() {
        return Err(MengerError::NotAPathSystem("paths share an edge".into()));
    }
    paths
        .iter()
        .map(|p| {
            if !p.is_ab_path(graft, a, b) {
                return Err(MengerError::NotAPathSystem(format!(
                    "{:?} is not an AB-path",
                    p.edges
                )));
            }
            Ok(if a.contains(&p.start) {
                p.clone()
            } else {
                p.reversed()
            })
        })
        .collect()
}

/// One augmenting step: either certifies `paths` maximum with an orthogonal
/// cut, or returns a system with one more path whose endpoint edges at `A`
/// and at `B` each grow by exactly one.
pub fn augment(
    graft: &Graft,
    a: &VertexSet,
    b: &VertexSet,
    paths: &PathSystem,
) -> Result<Augmentation, MengerError> {
    check_sides(graft, a, b)?;
    let oriented = oriented_system(graft, a, b, paths)?;
    let mut flow = UnitFlow::new(graft, a, b);
    flow.load(&oriented);
    match flow.find_augmenting() {
        None => {
            let region = flow.residual_reach(a.iter().copied());
            let edges = graft.delta(&region)?;
            Ok(Augmentation::Cut(Cut {
                edges,
                source_region: region,
            }))
        }
        Some(steps) => {
            flow.apply(&steps);
            Ok(Augmentation::Augmented(flow.decompose()))
        }
    }
}

/// A maximum system of edge-disjoint AB-paths with its ⊴-smallest
/// orthogonal cut.
pub fn max_path_system(
    graft: &Graft,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<(PathSystem, Cut), MengerError> {
    check_sides(graft, a, b)?;
    let mut flow = UnitFlow::new(graft, a, b);
    flow.maximize();
    let region = flow.residual_reach(a.iter().copied());
    let edges = graft.delta(&region)?;
    Ok((
        flow.decompose(),
        Cut {
            edges,
            source_region: region,
        },
    ))
}

/// `λ(X, Y)`: the maximum number of edge-disjoint XY-paths.
pub fn lambda(graft: &Graft, x: &VertexSet, y: &VertexSet) -> Result<usize, MengerError> {
    check_sides(graft, x, y)?;
    let mut flow = UnitFlow::new(graft, x, y);
    Ok(flow.maximize())
}

/// Validates `cut` as a minimum AB-cut and returns its canonical region.
fn min_cut_region(
    graft: &Graft,
    a: &VertexSet,
    b: &VertexSet,
    cut: &Cut,
    lam: usize,
) -> Result<VertexSet, MengerError> {
    let not_min = || MengerError::NotMinCut(cut.edges.iter().copied().collect());
    if cut.edges.len() != lam || cut.edges.iter().any(|&e| !graft.contains_edge(e)) {
        return Err(not_min());
    }
    let region = reach_avoiding(graft, a, &cut.edges);
    if region.iter().any(|v| b.contains(v)) || graft.delta(&region)? != cut.edges {
        return Err(not_min());
    }
    Ok(region)
}

/// `C ⊴ C'` for minimum AB-cuts: every AB-path meets `C` no later than `C'`.
pub fn cut_leq(
    graft: &Graft,
    a: &VertexSet,
    b: &VertexSet,
    c: &Cut,
    c2: &Cut,
) -> Result<bool, MengerError> {
    check_sides(graft, a, b)?;
    let lam = lambda(graft, a, b)?;
    let r1 = min_cut_region(graft, a, b, c, lam)?;
    let r2 = min_cut_region(graft, a, b, c2, lam)?;
    Ok(r1.is_subset(&r2))
}

/// The ⊴-smallest and ⊴-largest minimum AB-cuts, read off the residual
/// graph of one maximum flow.
pub fn extreme_cuts(
    graft: &Graft,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<(Cut, Cut), MengerError> {
    check_sides(graft, a, b)?;
    let mut flow = UnitFlow::new(graft, a, b);
    flow.maximize();
    let small_region = flow.residual_reach(a.iter().copied());
    let smallest = Cut {
        edges: graft.delta(&small_region)?,
        source_region: small_region,
    };
    let coreach = flow.residual_coreach();
    let far_side: VertexSet = graft.vertices().filter(|v| !coreach.contains(v)).collect();
    let largest = Cut::from_edges(graft, a, graft.delta(&far_side)?);
    Ok((smallest, largest))
}

/// The ⊴-smallest minimum AB-cut containing `e`, for an edge that every
/// linkage of `A` must use. Such a cut is tight: every linkage of `A` is
/// orthogonal to it.
pub fn tight_cut_through(
    graft: &Graft,
    a: &VertexSet,
    b: &VertexSet,
    e: EdgeId,
) -> Result<Cut, MengerError> {
    check_sides(graft, a, b)?;
    let (u, w) = graft.endpoints(e).ok_or(GraftError::UnknownEdge(e))?;
    if a.contains(&u) || a.contains(&w) {
        return Err(MengerError::EdgeAtSource(e));
    }
    let demand = graft.d(a)?;
    let mut flow = UnitFlow::new(graft, a, b);
    if flow.maximize() != demand {
        return Err(MengerError::NotLinked);
    }
    let without = graft.without_edges(&[e].into_iter().collect());
    if lambda(&without, a, b)? == demand {
        return Err(MengerError::PreconditionEdgeAvoidable(e));
    }
    let (tail, head) = if flow.along(e, u) == 1 {
        (u, w)
    } else {
        (w, u)
    };
    let region = flow.residual_reach(a.iter().copied().chain([tail]));
    if region.contains(&head) || region.iter().any(|v| b.contains(v)) {
        return Err(MengerError::PreconditionEdgeAvoidable(e));
    }
    let edges = graft.delta(&region)?;
    if edges.len() != demand || !edges.contains(&e) {
        return Err(MengerError::PreconditionEdgeAvoidable(e));
    }
    Ok(Cut {
        edges,
        source_region: region,
    })
}

/// Merges two AB-path systems into one whose endpoint edges at `A` contain
/// those of `p` and whose endpoint edges at `B` contain those of `q`.
///
/// Solved as a feasible flow with unit lower bounds on the prescribed
/// endpoint edges.
pub fn pym_merge(
    graft: &Graft,
    a: &VertexSet,
    b: &VertexSet,
    p: &PathSystem,
    q: &PathSystem,
) -> Result<PathSystem, MengerError> {
    check_sides(graft, a, b)?;
    let p = oriented_system(graft, a, b, p)?;
    let q = oriented_system(graft, a, b, q)?;
    // forced edge -> the vertex it must leave
    let mut forced: std::collections::BTreeMap<EdgeId, VertexId> = Default::default();
    for path in p.iter() {
        forced.insert(path.edges[0], path.start);
    }
    for path in q.iter() {
        let last = *path.edges.last().expect("nonempty");
        let from = graft.other_end(last, path.end).expect("validated");
        forced.insert(last, from);
    }

    let n = graft.vertex_bound();
    let (src, snk, ss, tt) = (n, n + 1, n + 2, n + 3);
    let mut net = Network::new(n + 4);
    let big = graft.edge_count() as i64 + 1;
    let in_a = |v: VertexId| a.contains(&v);
    let in_b = |v: VertexId| b.contains(&v);
    let mut arcs: Vec<(EdgeId, VertexId, usize)> = Vec::new();
    for e in graft.edge_ids() {
        let (u, w) = graft.endpoints(e).expect("live edge");
        if (in_a(u) && in_a(w)) || (in_b(u) && in_b(w)) {
            continue;
        }
        if let Some(&from) = forced.get(&e) {
            let to = graft.other_end(e, from).expect("incident");
            net.add_arc(ss, to.0, 1);
            net.add_arc(from.0, tt, 1);
            continue;
        }
        for (x, y) in [(u, w), (w, u)] {
            if !in_b(x) && !in_a(y) {
                let id = net.add_arc(x.0, y.0, 1);
                arcs.push((e, x, id));
            }
        }
    }
    for &v in a {
        net.add_arc(src, v.0, big);
    }
    for &v in b {
        net.add_arc(v.0, snk, big);
    }
    net.add_arc(snk, src, big);
    if net.max_flow(ss, tt) != forced.len() as i64 {
        return Err(MengerError::Infeasible);
    }

    let mut unit = UnitFlow::new(graft, a, b);
    for (&e, &from) in &forced {
        unit.set_along(e, from, 1);
    }
    for &(e, from, id) in &arcs {
        for _ in 0..net.flow(id) {
            unit.push(e, from);
        }
    }
    Ok(unit.decompose())
}

/// Where two paths are joined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivot {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// `P` from its start up to the pivot, then `Q` from the pivot to its end.
/// With an edge pivot the edge is traversed once and must be crossed in the
/// same direction by both paths.
pub fn splice(graft: &Graft, p: &Path, pivot: Pivot, q: &Path) -> Result<Path, MengerError> {
    let edges = match pivot {
        Pivot::Vertex(v) => {
            let pv = p.vertices(graft)?;
            let qv = q.vertices(graft)?;
            let i = pv
                .iter()
                .position(|&x| x == v)
                .ok_or(MengerError::PivotMissing)?;
            let j = qv
                .iter()
                .position(|&x| x == v)
                .ok_or(MengerError::PivotMissing)?;
            p.edges[..i].iter().chain(&q.edges[j..]).copied().collect()
        }
        Pivot::Edge(e) => {
            let i = p
                .edges
                .iter()
                .position(|&x| x == e)
                .ok_or(MengerError::PivotMissing)?;
            let j = q
                .edges
                .iter()
                .position(|&x| x == e)
                .ok_or(MengerError::PivotMissing)?;
            p.edges[..=i]
                .iter()
                .chain(&q.edges[j + 1..])
                .copied()
                .collect()
        }
    };
    Ok(Path::new(graft, p.start, edges)?)
}

/// Convenience: a one-element vertex set.
pub fn single(v: VertexId) -> VertexSet {
    BTreeSet::from([v])
}
