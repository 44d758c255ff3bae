//! Linkability, boundary-linked contraction families and lifting.
//!
//! A terminal `t` is linked when edge-disjoint T-paths ending at `t` can
//! cover every edge at `t`. The joker family contracts, around each chosen
//! terminal, the far side of its ⊴-largest minimum cut. Afterwards the edges
//! at that terminal form its only minimum cut, and any T-path system of the
//! contracted graft lifts back along the boundary systems.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graft::{ContractionFamily, EdgeId, Graft, GraftError, VertexId, VertexSet};
use crate::menger::{self, single, MengerError};
use crate::path::{Path, PathError, PathSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkageError {
    #[error("{0} is not a terminal")]
    NotATerminal(VertexId),
    #[error("no boundary path for edge {edge} at terminal {terminal}")]
    BoundaryMissing { terminal: VertexId, edge: EdgeId },
    #[error("lifted paths share edges")]
    Collision,
    #[error("path {0:?} is not a T-path of the contracted graft")]
    NotATPath(Vec<EdgeId>),
    #[error("joker construction broke an invariant: {0}")]
    Internal(String),
    #[error(transparent)]
    Graft(#[from] GraftError),
    #[error(transparent)]
    Menger(#[from] MengerError),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// `T − t`.
pub fn other_terminals(graft: &Graft, t: VertexId) -> VertexSet {
    graft
        .terminals()
        .iter()
        .copied()
        .filter(|&x| x != t)
        .collect()
}

/// Whether `t` is linked, with a witness: a linkage when it is, otherwise a
/// maximum system of T-paths at `t`. Witness paths start at `t`.
pub fn is_linked(graft: &Graft, t: VertexId) -> Result<(bool, PathSystem), LinkageError> {
    if !graft.is_terminal(t) {
        return Err(LinkageError::NotATerminal(t));
    }
    let (paths, _) = menger::max_path_system(graft, &single(t), &other_terminals(graft, t))?;
    Ok((paths.len() == graft.degree(t), paths))
}

/// The first terminal (by id) that is not linked.
pub fn first_unlinked(graft: &Graft) -> Option<VertexId> {
    graft
        .terminals()
        .iter()
        .copied()
        .find(|&t| !is_linked(graft, t).map(|(ok, _)| ok).unwrap_or(false))
}

pub fn linkability_condition(graft: &Graft) -> bool {
    first_unlinked(graft).is_none()
}

/// Paths `P_{t,e}` for the boundary edges `e` of `X_t`: each starts outside
/// `X_t` with `e` and ends at `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySystem {
    pub terminal: VertexId,
    pub paths: BTreeMap<EdgeId, Path>,
}

impl BoundarySystem {
    pub fn covers_terminal_edges(&self, graft: &Graft) -> bool {
        let used: std::collections::BTreeSet<_> = self
            .paths
            .values()
            .flat_map(|p| p.edges.iter().copied())
            .collect();
        graft
            .incident(self.terminal)
            .iter()
            .all(|e| used.contains(e))
    }

    pub fn get(&self, e: EdgeId) -> Option<&Path> {
        self.paths.get(&e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JokerFamily {
    pub family: ContractionFamily,
    pub boundary: BTreeMap<VertexId, BoundarySystem>,
    pub contracted: Graft,
}

/// Builds the joker family for the terminals in `chosen`, processed in
/// ascending order; every other terminal keeps `X_t = {t}`.
pub fn joker_family(graft: &Graft, chosen: &VertexSet) -> Result<JokerFamily, LinkageError> {
    if let Some(&t) = chosen.iter().find(|&&t| !graft.is_terminal(t)) {
        return Err(LinkageError::NotATerminal(t));
    }
    let mut sets: BTreeMap<VertexId, VertexSet> = BTreeMap::new();
    let mut current = graft.clone();
    for &s in chosen {
        let (_, largest) =
            menger::extreme_cuts(&current, &single(s), &other_terminals(&current, s))?;
        sets.insert(s, largest.source_region);
        let family = ContractionFamily::new(graft, sets.clone())?;
        current = graft.contract(&family)?;
    }
    let family = ContractionFamily::new(graft, sets)?;
    let contracted = graft.contract(&family)?;
    let mut boundary = BTreeMap::new();
    for &t in graft.terminals() {
        let x = family.set(t).expect("every terminal has a set");
        boundary.insert(t, boundary_system(graft, t, x)?);
    }
    Ok(JokerFamily {
        family,
        boundary,
        contracted,
    })
}

/// Routes every boundary edge of `x` to `t` inside `x`; when `t` is linked
/// in `graft` the routing also covers every edge at `t`.
fn boundary_system(
    graft: &Graft,
    t: VertexId,
    x: &VertexSet,
) -> Result<BoundarySystem, LinkageError> {
    let boundary = graft.delta(x)?;
    if x.len() == 1 {
        let paths = boundary
            .iter()
            .map(|&e| {
                let w = graft.other_end(e, t).expect("boundary of {t}");
                Ok((e, Path::new(graft, w, vec![e])?))
            })
            .collect::<Result<_, LinkageError>>()?;
        return Ok(BoundarySystem { terminal: t, paths });
    }
    let outside: VertexSet = graft.vertices().filter(|v| !x.contains(v)).collect();
    let src = single(t);
    let (to_boundary, _) = menger::max_path_system(graft, &src, &outside)?;
    if to_boundary.len() != boundary.len() {
        return Err(LinkageError::Internal(format!(
            "boundary of X_{t} is not linked to {t}"
        )));
    }
    let (linked, linkage) = is_linked(graft, t)?;
    let merged = if linked {
        let truncated = linkage
            .iter()
            .map(|p| truncate_at(graft, p, &outside))
            .collect::<Result<PathSystem, _>>()?;
        menger::pym_merge(graft, &src, &outside, &truncated, &to_boundary)?
    } else {
        to_boundary
    };
    let mut paths = BTreeMap::new();
    for p in merged {
        let back = p.reversed();
        let first = back.edges[0];
        if boundary.contains(&first) {
            paths.insert(first, back);
        }
    }
    if paths.len() != boundary.len() {
        return Err(LinkageError::Internal(format!(
            "merged system misses boundary edges of X_{t}"
        )));
    }
    Ok(BoundarySystem { terminal: t, paths })
}

/// Initial segment of `p` up to its first vertex in `stop`.
pub(crate) fn truncate_at(graft: &Graft, p: &Path, stop: &VertexSet) -> Result<Path, PathError> {
    let verts = p.vertices(graft)?;
    let cut = verts
        .iter()
        .skip(1)
        .position(|v| stop.contains(v))
        .map(|i| i + 1)
        .unwrap_or(p.edges.len());
    Path::new(graft, p.start, p.edges[..cut].to_vec())
}

/// Lifts one T-path of the contracted graft to `graft` by attaching the
/// boundary paths at both ends.
pub fn lift_path(graft: &Graft, joker: &JokerFamily, path: &Path) -> Result<Path, LinkageError> {
    let c = &joker.contracted;
    if !path.is_t_path(c) {
        return Err(LinkageError::NotATPath(path.edges.clone()));
    }
    let lookup = |t: VertexId, e: EdgeId| {
        joker
            .boundary
            .get(&t)
            .and_then(|b| b.get(e))
            .ok_or(LinkageError::BoundaryMissing {
                terminal: t,
                edge: e,
            })
    };
    let first = path.edges[0];
    let last = *path.edges.last().expect("nonempty");
    let head = lookup(path.start, first)?;
    let tail = lookup(path.end, last)?;
    let mut edges: Vec<EdgeId> = head.edges.iter().rev().copied().collect();
    if path.edges.len() >= 2 {
        edges.extend(&path.edges[1..path.edges.len() - 1]);
        edges.extend(&tail.edges);
    } else {
        edges.extend(&tail.edges[1..]);
    }
    Ok(Path::new(graft, path.start, edges)?)
}

/// Lifts a T-path system of `joker.contracted` to an edge-disjoint T-path
/// system of `graft` with the same endpoints.
pub fn lift(
    graft: &Graft,
    joker: &JokerFamily,
    paths: &PathSystem,
) -> Result<PathSystem, LinkageError> {
    let lifted: PathSystem = paths
        .iter()
        .map(|p| lift_path(graft, joker, p))
        .collect::<Result<_, _>>()?;
    if !lifted.is_edge_disjoint() {
        return Err(LinkageError::Collision);
    }
    Ok(lifted)
}
