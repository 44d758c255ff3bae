//! Packing T-paths.
//!
//! [`extract_tpath`] finds, for an edge `e0` at a terminal, a T-path through
//! `e0` whose removal keeps the graft inner-Eulerian and linkable. It
//! recurses on a witness path `P` through `e0` taken from a linkage of the
//! terminal `s` at `e0`. Each level does the following:
//!
//! 1. Contract the joker family of `T − s`, so that the edges at each other
//!    terminal form its unique minimum cut, and truncate the witness at
//!    its first contracted vertex.
//! 2. If `e0` now joins two terminals it is the answer at this level.
//!    Otherwise split off `e0` and its successor `f0` on the witness into a
//!    fresh edge `h0`. Recurse on `h0` with the witness shortened by one
//!    edge, then trade `h0` back for `e0 f0`.
//! 3. Extend the path through the boundary system of the terminal it
//!    reached.
//!
//! The witness gets shorter at every level, which bounds the depth.
//! [`perfect_linkage`] repeats the extraction until every edge at a
//! terminal is covered. [`lovcher_certificate`] runs it inside the joker
//! contraction of all terminals and lifts the result, which yields the
//! per-terminal orthogonal cuts.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::euler::{self, PartitionPiece, PieceKind};
use crate::graft::{EdgeId, EdgeSet, Graft, GraftError, VertexId, VertexSet};
use crate::linkage::{self, LinkageError};
use crate::menger::{self, Cut, MengerError, Pivot};
use crate::path::{Path, PathError, PathSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    #[error("inner vertex {0} has odd degree")]
    NotInnerEulerian(VertexId),
    #[error("terminal {0} is not linked")]
    LinkabilityFails(VertexId),
    #[error("edge {0} is not incident with a terminal")]
    NotATerminalEdge(EdgeId),
    #[error("terminal {0} is not linked")]
    SourceNotLinked(VertexId),
    #[error("expected exactly the two terminals {0} and {1}")]
    NotTwoTerminals(VertexId, VertexId),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error(transparent)]
    Graft(#[from] GraftError),
    #[error(transparent)]
    Menger(#[from] MengerError),
    #[error(transparent)]
    Linkage(#[from] LinkageError),
    #[error(transparent)]
    Path(#[from] PathError),
}

fn internal(msg: impl Into<String>) -> PackingError {
    PackingError::InternalInvariant(msg.into())
}

/// A T-path system together with one cut per terminal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub paths: PathSystem,
    pub cuts: BTreeMap<VertexId, Cut>,
}

/// One level of the extraction recursion.
#[derive(Clone, Debug)]
pub struct ExtractionState {
    pub graft: Graft,
    pub target_edge: EdgeId,
    /// Path from the terminal end of `target_edge`, through it, belonging to
    /// some linkage of that terminal.
    pub witness: Path,
}

impl ExtractionState {
    pub fn depth(&self) -> usize {
        self.witness.len()
    }
}

fn require_inner_eulerian(graft: &Graft) -> Result<(), PackingError> {
    match euler::odd_inner_vertex(graft) {
        Some(v) => Err(PackingError::NotInnerEulerian(v)),
        None => Ok(()),
    }
}

fn require_linkable(graft: &Graft) -> Result<(), PackingError> {
    match linkage::first_unlinked(graft) {
        Some(t) => Err(PackingError::LinkabilityFails(t)),
        None => Ok(()),
    }
}

/// Edges with at least one terminal endpoint, ascending.
pub fn terminal_edges(graft: &Graft) -> EdgeSet {
    graft
        .terminals()
        .iter()
        .flat_map(|&t| graft.incident(t).iter().copied())
        .collect()
}

/// A linkage of `s` plus edge-disjoint cycles, avoiding the linkage, that
/// cover the remaining edges at `t`. The graft must have exactly the
/// terminals `s` and `t`.
pub fn rest_cycle_coverable_linkage(
    graft: &Graft,
    s: VertexId,
    t: VertexId,
) -> Result<(PathSystem, Vec<PartitionPiece>), PackingError> {
    if graft.terminals().len() != 2 || !graft.is_terminal(s) || !graft.is_terminal(t) || s == t {
        return Err(PackingError::NotTwoTerminals(s, t));
    }
    require_inner_eulerian(graft)?;
    if !linkage::is_linked(graft, s)?.0 {
        return Err(PackingError::SourceNotLinked(s));
    }
    let mut current = graft.clone();
    let mut paths = Vec::new();
    let mut cycles = Vec::new();
    while let Some(e) = current
        .incident(s)
        .iter()
        .chain(current.incident(t))
        .copied()
        .min()
    {
        let (linked, link) = linkage::is_linked(&current, s)?;
        if !linked {
            return Err(internal(format!("{s} lost linkability while peeling")));
        }
        let piece = if let Some(p) = link.path_through(e) {
            (PieceKind::TPath, p.clone())
        } else {
            let parts = euler::cycle_tpath_partition(&current)
                .map_err(|_| internal("remainder stopped being inner-Eulerian"))?;
            let h = parts
                .into_iter()
                .find(|p| p.edges.contains(&e))
                .expect("partition covers every edge");
            let used = link.edge_set();
            if h.edges.iter().all(|x| !used.contains(x)) {
                match h.kind {
                    PieceKind::TPath => {
                        let p = Path::new(&current, h.start, h.edges.clone())?;
                        (PieceKind::TPath, p.oriented_from(s).expect("st-path"))
                    }
                    PieceKind::Cycle => {
                        let p = Path {
                            start: h.start,
                            end: h.start,
                            edges: h.edges.clone(),
                        };
                        (PieceKind::Cycle, p)
                    }
                }
            } else {
                (PieceKind::TPath, reroute(&current, s, t, e, &h, &link)?)
            }
        };
        match piece {
            (PieceKind::TPath, p) => {
                current = current.without_edges(&p.edge_set());
                paths.push(p);
            }
            (PieceKind::Cycle, p) => {
                current = current.without_edges(&p.edge_set());
                cycles.push(PartitionPiece {
                    kind: PieceKind::Cycle,
                    start: p.start,
                    edges: p.edges,
                });
            }
        }
    }
    Ok((PathSystem::new(paths), cycles))
}

/// Vertex sequence of a closed walk given by a cycle piece.
fn cycle_vertices(graft: &Graft, piece: &PartitionPiece) -> Vec<VertexId> {
    let mut verts = vec![piece.start];
    let mut at = piece.start;
    for &e in &piece.edges {
        at = graft.other_end(e, at).expect("piece is a walk");
        verts.push(at);
    }
    verts
}

/// `H := s P v Q`: follow the piece `h` out of `t` along `e` until it first
/// meets the linkage at `v`, then continue along the linkage path through
/// `v` back to `s`.
fn reroute(
    graft: &Graft,
    s: VertexId,
    t: VertexId,
    e: EdgeId,
    h: &PartitionPiece,
    link: &PathSystem,
) -> Result<Path, PackingError> {
    // orient h as a walk leaving t through e
    let (mut verts, mut edges) = (cycle_vertices(graft, h), h.edges.clone());
    if h.kind == PieceKind::Cycle {
        let i = edges.iter().position(|&x| x == e).expect("e on piece");
        edges.rotate_left(i);
        verts.pop();
        verts.rotate_left(i);
        verts.push(verts[0]);
    }
    if verts[0] != t {
        edges.reverse();
        verts.reverse();
        if h.kind == PieceKind::Cycle {
            // reversal puts e last; rotate it back to the front
            edges.rotate_right(1);
            verts.pop();
            verts.rotate_right(1);
            verts.push(verts[0]);
        }
    }
    debug_assert_eq!((verts[0], edges[0]), (t, e));
    let mut on_link: BTreeMap<VertexId, &Path> = BTreeMap::new();
    for p in link {
        for v in p.vertices(graft)? {
            on_link.entry(v).or_insert(p);
        }
    }
    let i = (1..verts.len())
        .find(|&i| verts[i] != t && on_link.contains_key(&verts[i]))
        .ok_or_else(|| internal("piece meets the linkage without sharing a vertex"))?;
    let v = verts[i];
    let q = Path::new(graft, t, edges[..i].to_vec())?.reversed();
    let p = on_link[&v]
        .oriented_from(s)
        .expect("linkage paths start at s");
    Ok(menger::splice(graft, &p, Pivot::Vertex(v), &q)?)
}

/// For each terminal, whether it is still linked after deleting `f` and
/// `g` (which may coincide).
pub fn survives_two_deletions(
    graft: &Graft,
    f: EdgeId,
    g: EdgeId,
) -> Result<BTreeMap<VertexId, bool>, PackingError> {
    for e in [f, g] {
        if !graft.contains_edge(e) {
            return Err(GraftError::UnknownEdge(e).into());
        }
    }
    let rest = graft.without_edges(&[f, g].into_iter().collect());
    graft
        .terminals()
        .iter()
        .map(|&t| Ok((t, linkage::is_linked(&rest, t)?.0)))
        .collect()
}

/// A T-path through `e0` whose removal leaves the graft inner-Eulerian and
/// linkable.
pub fn extract_tpath(graft: &Graft, e0: EdgeId) -> Result<Path, PackingError> {
    extract_tpath_traced(graft, e0).map(|(p, _)| p)
}

/// [`extract_tpath`], also reporting the witness length at every recursion
/// level.
pub fn extract_tpath_traced(graft: &Graft, e0: EdgeId) -> Result<(Path, Vec<usize>), PackingError> {
    require_inner_eulerian(graft)?;
    require_linkable(graft)?;
    let (u, w) = graft.endpoints(e0).ok_or(GraftError::UnknownEdge(e0))?;
    let s = match (graft.is_terminal(u), graft.is_terminal(w)) {
        (true, true) => {
            let p = Path::new(graft, u.min(w), vec![e0])?;
            return Ok((p, vec![1]));
        }
        (true, false) => u,
        (false, true) => w,
        (false, false) => return Err(PackingError::NotATerminalEdge(e0)),
    };
    let (_, link) = linkage::is_linked(graft, s)?;
    let witness = link
        .path_through(e0)
        .cloned()
        .ok_or_else(|| internal(format!("linkage of {s} misses edge {e0}")))?;
    let mut depths = Vec::new();
    let state = ExtractionState {
        graft: graft.clone(),
        target_edge: e0,
        witness,
    };
    let path = extract_level(&state, &mut depths)?;
    Ok((path, depths))
}

fn extract_level(state: &ExtractionState, depths: &mut Vec<usize>) -> Result<Path, PackingError> {
    let g = &state.graft;
    let e0 = state.target_edge;
    let s = state.witness.start;
    depths.push(state.depth());
    if g.is_terminal(g.other_end(e0, s).expect("witness starts at s")) {
        return Ok(Path::new(g, s, vec![e0])?);
    }

    let others = linkage::other_terminals(g, s);
    let joker = linkage::joker_family(g, &others)?;
    let c = &joker.contracted;
    let blob: VertexSet = others
        .iter()
        .flat_map(|t| joker.family.set(*t).expect("terminal set").iter().copied())
        .collect();
    let truncated = linkage::truncate_at(g, &state.witness, &blob)?;
    let witness = Path::new(c, s, truncated.edges)?;

    let q = if c.is_terminal(c.other_end(e0, s).expect("e0 survives contraction")) {
        depths.push(1);
        Path::new(c, s, vec![e0])?
    } else {
        let f0 = witness.edges[1];
        let (split, h0) = c.split_off(s, e0, f0)?;
        let mut rest = vec![h0];
        rest.extend(&witness.edges[2..]);
        let next = ExtractionState {
            witness: Path::new(&split, s, rest)?,
            graft: split,
            target_edge: h0,
        };
        if next.depth() >= state.depth() {
            return Err(internal("witness did not shrink"));
        }
        let p = extract_level(&next, depths)?;
        trade_back(c, s, e0, f0, h0, &p)?
    };

    let r = linkage::lift_path(g, &joker, &q)?;
    if !r.is_t_path(g) || !r.contains_edge(e0) {
        return Err(internal(format!(
            "lifted path {:?} is not a T-path through {e0}",
            r.edges
        )));
    }
    let rest = g.without_edges(&r.edge_set());
    if let Some(v) = euler::odd_inner_vertex(&rest) {
        return Err(internal(format!("removing {:?} leaves {v} odd", r.edges)));
    }
    if let Some(t) = linkage::first_unlinked(&rest) {
        return Err(internal(format!("removing {:?} unlinks {t}", r.edges)));
    }
    Ok(r)
}

/// Replaces `h0` by `e0 f0` in `p` and returns the T-path through `e0` in
/// the resulting edge set.
fn trade_back(
    graft: &Graft,
    s: VertexId,
    e0: EdgeId,
    f0: EdgeId,
    h0: EdgeId,
    p: &Path,
) -> Result<Path, PackingError> {
    let mut allowed: EdgeSet = p.edge_set();
    allowed.remove(&h0);
    allowed.insert(e0);
    allowed.insert(f0);
    tpath_within(graft, s, e0, &allowed)
        .ok_or_else(|| internal(format!("no T-path through {e0} in {allowed:?}")))
}

/// Depth-first search, ascending edge ids, for a T-path that leaves `s`
/// through `first` and otherwise uses only `allowed` edges.
fn tpath_within(graft: &Graft, s: VertexId, first: EdgeId, allowed: &EdgeSet) -> Option<Path> {
    fn go(
        graft: &Graft,
        at: VertexId,
        allowed: &EdgeSet,
        seen: &mut BTreeSet<VertexId>,
        edges: &mut Vec<EdgeId>,
    ) -> bool {
        if graft.is_terminal(at) {
            return true;
        }
        for &e in graft.incident(at) {
            if !allowed.contains(&e) || edges.contains(&e) {
                continue;
            }
            let z = graft.other_end(e, at).expect("incident");
            if !seen.insert(z) {
                continue;
            }
            edges.push(e);
            if go(graft, z, allowed, seen, edges) {
                return true;
            }
            edges.pop();
            seen.remove(&z);
        }
        false
    }
    let x = graft.other_end(first, s)?;
    let mut seen = BTreeSet::from([s, x]);
    let mut edges = vec![first];
    if go(graft, x, allowed, &mut seen, &mut edges) {
        Path::new(graft, s, edges).ok()
    } else {
        None
    }
}

/// What the driver re-checked after removing one extracted path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCheck {
    pub path: Path,
    pub inner_eulerian: bool,
    pub linkable: bool,
    pub depths: Vec<usize>,
}

/// Edge-disjoint T-paths covering every edge at every terminal.
pub fn perfect_linkage(graft: &Graft) -> Result<PathSystem, PackingError> {
    perfect_linkage_traced(graft).map(|(p, _)| p)
}

/// [`perfect_linkage`] together with the check made after each extraction.
pub fn perfect_linkage_traced(graft: &Graft) -> Result<(PathSystem, Vec<StepCheck>), PackingError> {
    require_inner_eulerian(graft)?;
    require_linkable(graft)?;
    let mut rest = graft.clone();
    let mut paths = Vec::new();
    let mut steps = Vec::new();
    while let Some(&e) = terminal_edges(&rest).iter().next() {
        let (p, depths) = extract_tpath_traced(&rest, e)?;
        rest = rest.without_edges(&p.edge_set());
        let check = StepCheck {
            path: p.clone(),
            inner_eulerian: euler::is_inner_eulerian(&rest),
            linkable: linkage::linkability_condition(&rest),
            depths,
        };
        if !(check.inner_eulerian && check.linkable) {
            return Err(internal(format!(
                "remainder after {:?} is invalid",
                p.edges
            )));
        }
        steps.push(check);
        paths.push(p);
    }
    Ok((PathSystem::new(paths), steps))
}

/// Edge-disjoint T-paths and, for every terminal `t`, a cut separating `t`
/// from the other terminals that consists of exactly one edge from each
/// path ending at `t`.
pub fn lovcher_certificate(graft: &Graft) -> Result<Certificate, PackingError> {
    require_inner_eulerian(graft)?;
    let all: VertexSet = graft.terminals().iter().copied().collect();
    let joker = linkage::joker_family(graft, &all)?;
    let packed = perfect_linkage(&joker.contracted).map_err(|err| match err {
        PackingError::LinkabilityFails(t) => {
            internal(format!("{t} unlinked after contracting the joker family"))
        }
        other => other,
    })?;
    let paths = linkage::lift(graft, &joker, &packed)?;
    let mut cuts = BTreeMap::new();
    for &t in graft.terminals() {
        let region = joker.family.set(t).expect("terminal set").clone();
        cuts.insert(
            t,
            Cut {
                edges: graft.delta(&region)?,
                source_region: region,
            },
        );
    }
    Ok(Certificate { paths, cuts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graft::fixtures::*;

    fn ids(p: &Path) -> Vec<usize> {
        p.edges.iter().map(|e| e.0).collect()
    }

    #[test]
    fn rest_cycle_examples() {
        // s=0 t=1 x=2; 0: s-t, 1: t-x, 2: x-t
        let g = graft(3, &[0, 1], &[(0, 1), (1, 2), (2, 1)]);
        let (p, cycles) = rest_cycle_coverable_linkage(&g, v(0), v(1)).unwrap();
        assert_eq!(p.paths.iter().map(ids).collect::<Vec<_>>(), vec![vec![0]]);
        assert_eq!(cycles.len(), 1);
        assert_eq!(
            cycles[0].edges.iter().copied().collect::<EdgeSet>(),
            es(&[1, 2])
        );

        let (p, cycles) = rest_cycle_coverable_linkage(&g4(), v(0), v(1)).unwrap();
        assert_eq!(
            p.paths.iter().map(ids).collect::<Vec<_>>(),
            vec![vec![0, 1]]
        );
        assert!(cycles.is_empty());

        assert_eq!(
            rest_cycle_coverable_linkage(&g10(), v(0), v(1)),
            Err(PackingError::SourceNotLinked(v(0)))
        );
    }

    #[test]
    fn rest_cycle_needs_rerouting() {
        // s=0 t=1 x=2 y=3. s-x, x-t, t-y, y-x, x-t
        // linkage of s is s-x-t (edges 0,1); edge 2 at t lies on the cycle t-y-x-t
        // which shares x with the linkage
        let g = graft(4, &[0, 1], &[(0, 2), (2, 1), (1, 3), (3, 2), (2, 1)]);
        let (p, cycles) = rest_cycle_coverable_linkage(&g, v(0), v(1)).unwrap();
        assert!(p.links(&g, v(0)));
        let used = p.edge_set();
        let rest = g.without_edges(&used);
        let covered: EdgeSet = cycles
            .iter()
            .flat_map(|c| c.edges.iter().copied())
            .collect();
        assert!(rest.incident(v(1)).iter().all(|e| covered.contains(e)));
        assert!(covered.is_disjoint(&used));
    }

    #[test]
    fn two_deletion_examples() {
        let g = g6();
        let out = survives_two_deletions(&g, EdgeId(2), EdgeId(3)).unwrap();
        assert!(!out[&v(0)]);
        let g = g1();
        let out = survives_two_deletions(&g, EdgeId(0), EdgeId(0)).unwrap();
        assert!(out.values().all(|&ok| ok));
        assert!(survives_two_deletions(&g, EdgeId(9), EdgeId(0)).is_err());
    }

    #[test]
    fn extract_examples() {
        assert_eq!(ids(&extract_tpath(&g1(), EdgeId(0)).unwrap()), vec![0]);
        assert_eq!(ids(&extract_tpath(&g4(), EdgeId(0)).unwrap()), vec![0, 1]);
        let g = g2();
        let p = extract_tpath(&g, EdgeId(0)).unwrap();
        assert!(p.is_t_path(&g) && p.contains_edge(EdgeId(0)));
        let rest = g.without_edges(&p.edge_set());
        assert!(euler::is_inner_eulerian(&rest));
        assert!(linkage::linkability_condition(&rest));
        assert_eq!(
            extract_tpath(&g3(), EdgeId(0)),
            Err(PackingError::NotInnerEulerian(v(3)))
        );
        assert_eq!(
            extract_tpath(&g10(), EdgeId(0)),
            Err(PackingError::LinkabilityFails(v(0)))
        );
    }

    #[test]
    fn extract_rejects_inner_edge() {
        // a=0 b=1 x=2 y=3; a-x, x-y, y-x, x-b
        let g = graft(4, &[0, 1], &[(0, 2), (2, 3), (3, 2), (2, 1)]);
        assert_eq!(
            extract_tpath(&g, EdgeId(1)),
            Err(PackingError::NotATerminalEdge(EdgeId(1)))
        );
    }

    #[test]
    fn perfect_linkage_examples() {
        let p = perfect_linkage(&g1()).unwrap();
        assert_eq!(
            p.paths.iter().map(ids).collect::<Vec<_>>(),
            vec![vec![0], vec![1], vec![2]]
        );
        let g = g2();
        let p = perfect_linkage(&g).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.edge_set(), es(&[0, 1, 2, 3, 4, 5]));
        assert!(p.iter().all(|x| x.is_t_path(&g)));
        let empty = g2().restrict(&EdgeSet::new()).unwrap();
        assert!(perfect_linkage(&empty).unwrap().is_empty());
    }

    #[test]
    fn certificate_examples() {
        let c = lovcher_certificate(&g1()).unwrap();
        assert_eq!(c.paths.len(), 3);
        assert_eq!(c.cuts[&v(0)].edges, es(&[0, 2]));
        assert_eq!(c.cuts[&v(1)].edges, es(&[0, 1]));
        assert_eq!(c.cuts[&v(2)].edges, es(&[1, 2]));

        let g = g10();
        let c = lovcher_certificate(&g).unwrap();
        assert_eq!(c.paths.len(), 2);
        assert_eq!(c.paths.edge_set().intersection(&es(&[4, 5])).count(), 2);
        assert_eq!(c.cuts[&v(0)].edges, es(&[4, 5]));
        assert_eq!(c.cuts[&v(1)].edges, es(&[4, 5]));

        let c = lovcher_certificate(&g4()).unwrap();
        assert_eq!(
            c.paths.paths.iter().map(ids).collect::<Vec<_>>(),
            vec![vec![0, 1]]
        );
        // the largest cut from 0 swallows the middle vertex
        assert_eq!(c.cuts[&v(0)].edges, es(&[1]));
        assert_eq!(c.cuts[&v(1)].edges, es(&[1]));
    }
}
