//! Inner-Eulerian grafts and their edge-partitions into cycles and T-paths.

use thiserror::Error;

use crate::graft::{EdgeId, Graft, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error("inner vertex {0} has odd degree")]
    NotInnerEulerian(VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceKind {
    Cycle,
    TPath,
}

/// One piece of an edge-partition. A cycle starts and ends at `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPiece {
    pub kind: PieceKind,
    pub start: VertexId,
    pub edges: Vec<EdgeId>,
}

/// An inner (non-terminal) vertex of odd degree, if there is one.
///
/// For finite grafts a set of inner vertices with odd boundary exists iff a
/// single inner vertex has odd degree, so this is a complete witness.
pub fn odd_inner_vertex(graft: &Graft) -> Option<VertexId> {
    graft
        .vertices()
        .find(|&v| !graft.is_terminal(v) && graft.degree(v) % 2 == 1)
}

pub fn is_inner_eulerian(graft: &Graft) -> bool {
    odd_inner_vertex(graft).is_none()
}

/// Trail bookkeeping that peels closed sub-walks off as simple cycles.
struct Trail {
    verts: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Trail {
    fn new(start: VertexId) -> Self {
        Trail {
            verts: vec![start],
            edges: Vec::new(),
        }
    }

    fn step(&mut self, e: EdgeId, to: VertexId, out: &mut Vec<PartitionPiece>) {
        self.edges.push(e);
        if let Some(pos) = self.verts.iter().position(|&v| v == to) {
            out.push(PartitionPiece {
                kind: PieceKind::Cycle,
                start: to,
                edges: self.edges.split_off(pos),
            });
            self.verts.truncate(pos + 1);
        } else {
            self.verts.push(to);
        }
    }
}

/// Partitions the edges of an inner-Eulerian graft into cycles and T-paths.
///
/// Terminal–terminal edges become single-edge T-paths. Then trails are
/// walked out of terminals until they hit a terminal again; at each inner
/// vertex the walk prefers to finish at a different terminal (the one with
/// the most unused edges there), then to continue to an inner vertex, and
/// only then to return to its own terminal. Repeated vertices are cut off
/// as cycles. A trail that ends where it started is a cycle through that
/// terminal. Whatever is left avoids the terminals and splits into cycles.
pub fn cycle_tpath_partition(graft: &Graft) -> Result<Vec<PartitionPiece>, EulerError> {
    if let Some(v) = odd_inner_vertex(graft) {
        return Err(EulerError::NotInnerEulerian(v));
    }
    let mut used = vec![false; graft.next_edge_id().0];
    let mut out = Vec::new();

    for e in graft.edge_ids() {
        let (u, v) = graft.endpoints(e).expect("live edge");
        if graft.is_terminal(u) && graft.is_terminal(v) {
            used[e.0] = true;
            out.push(PartitionPiece {
                kind: PieceKind::TPath,
                start: u.min(v),
                edges: vec![e],
            });
        }
    }

    while let Some((first, origin)) = graft.edge_ids().find_map(|e| {
        if used[e.0] {
            return None;
        }
        let (u, v) = graft.endpoints(e).expect("live edge");
        [u, v]
            .into_iter()
            .find(|&x| graft.is_terminal(x))
            .map(|t| (e, t))
    }) {
        let mut trail = Trail::new(origin);
        used[first.0] = true;
        let mut at = graft.other_end(first, origin).expect("incident");
        trail.step(first, at, &mut out);
        while !graft.is_terminal(at) {
            let next = choose_next(graft, &used, at, origin);
            used[next.0] = true;
            at = graft.other_end(next, at).expect("incident");
            trail.step(next, at, &mut out);
        }
        if at != origin {
            out.push(PartitionPiece {
                kind: PieceKind::TPath,
                start: origin,
                edges: trail.edges,
            });
        }
    }

    while let Some(first) = graft.edge_ids().find(|e| !used[e.0]) {
        let (origin, _) = graft.endpoints(first).expect("live edge");
        let mut trail = Trail::new(origin);
        let mut at = origin;
        let mut next = Some(first);
        while let Some(e) = next {
            used[e.0] = true;
            at = graft.other_end(e, at).expect("incident");
            trail.step(e, at, &mut out);
            next = graft.incident(at).iter().copied().find(|e| !used[e.0]);
        }
        debug_assert_eq!(at, origin, "even degrees close every trail");
    }
    Ok(out)
}

fn choose_next(graft: &Graft, used: &[bool], at: VertexId, origin: VertexId) -> EdgeId {
    let free: Vec<(EdgeId, VertexId)> = graft
        .incident(at)
        .iter()
        .filter(|e| !used[e.0])
        .map(|&e| (e, graft.other_end(e, at).expect("incident")))
        .collect();
    let to_other_terminal = free
        .iter()
        .filter(|(_, w)| graft.is_terminal(*w) && *w != origin)
        .max_by_key(|(e, w)| {
            let remaining = free.iter().filter(|(_, x)| x == w).count();
            (remaining, std::cmp::Reverse(*e))
        });
    if let Some(&(e, _)) = to_other_terminal {
        return e;
    }
    free.iter()
        .find(|(_, w)| !graft.is_terminal(*w))
        .or_else(|| free.first())
        .map(|&(e, _)| e)
        .expect("an inner vertex of even degree always has a way out")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graft::fixtures::*;
    use crate::graft::EdgeSet;
    use crate::path::Path;

    fn check_partition(g: &Graft, pieces: &[PartitionPiece]) {
        let mut all = EdgeSet::new();
        for piece in pieces {
            for &e in &piece.edges {
                assert!(all.insert(e), "edge {e} used twice");
            }
            let p = Path::new(g, piece.start, piece.edges.clone());
            match piece.kind {
                PieceKind::TPath => assert!(p.unwrap().is_t_path(g)),
                PieceKind::Cycle => {
                    // all but the closing edge form a path back to the start
                    let (last, body) = piece.edges.split_last().unwrap();
                    assert!(!body.is_empty());
                    let body = Path::new(g, piece.start, body.to_vec()).unwrap();
                    assert_eq!(g.other_end(*last, body.end), Some(piece.start));
                    let inner_terms = crate::path::walk(g, piece.start, body.edges.as_slice())
                        .unwrap()
                        .iter()
                        .filter(|&&v| g.is_terminal(v))
                        .count();
                    assert!(inner_terms <= 1);
                }
            }
        }
        assert_eq!(all, g.edge_ids().collect::<EdgeSet>());
    }

    #[test]
    fn predicate_examples() {
        assert!(is_inner_eulerian(&g1()));
        assert!(!is_inner_eulerian(&g3()));
        assert_eq!(odd_inner_vertex(&g3()), Some(v(3)));
        assert!(is_inner_eulerian(&g2()));
    }

    #[test]
    fn components_are_pieces() {
        // a=0 b=1 x=2 y=3 z=4
        let g = graft(5, &[0, 1], &[(0, 1), (2, 3), (3, 4), (4, 2)]);
        let pieces = cycle_tpath_partition(&g).unwrap();
        assert_eq!(
            pieces,
            vec![
                PartitionPiece {
                    kind: PieceKind::TPath,
                    start: v(0),
                    edges: vec![EdgeId(0)]
                },
                PartitionPiece {
                    kind: PieceKind::Cycle,
                    start: v(2),
                    edges: vec![EdgeId(1), EdgeId(2), EdgeId(3)]
                },
            ]
        );
    }

    #[test]
    fn doubled_star_pairs_distinct_terminals() {
        let g = g2();
        let pieces = cycle_tpath_partition(&g).unwrap();
        check_partition(&g, &pieces);
        assert_eq!(pieces.len(), 3);
        assert!(pieces.iter().all(|p| p.kind == PieceKind::TPath));
        let edges: Vec<Vec<usize>> = pieces
            .iter()
            .map(|p| p.edges.iter().map(|e| e.0).collect())
            .collect();
        assert_eq!(edges, vec![vec![0, 2], vec![1, 4], vec![3, 5]]);
    }

    #[test]
    fn odd_star_is_rejected() {
        assert_eq!(
            cycle_tpath_partition(&g3()),
            Err(EulerError::NotInnerEulerian(v(3)))
        );
    }

    #[test]
    fn cycle_through_a_terminal() {
        // s=0 t=1 x=2; 0: s-t, 1: t-x, 2: x-t
        let g = graft(3, &[0, 1], &[(0, 1), (1, 2), (2, 1)]);
        let pieces = cycle_tpath_partition(&g).unwrap();
        check_partition(&g, &pieces);
        assert_eq!(pieces[1].kind, PieceKind::Cycle);
        assert_eq!(pieces[1].start, v(1));
    }

    #[test]
    fn trail_with_inner_repeats() {
        // figure eight hanging between two terminals
        // a=0 b=1 x=2 y=3 z=4: a-x, x-y, y-z, z-x, x-b
        let g = graft(5, &[0, 1], &[(0, 2), (2, 3), (3, 4), (4, 2), (2, 1)]);
        let pieces = cycle_tpath_partition(&g).unwrap();
        check_partition(&g, &pieces);
        assert_eq!(
            pieces.iter().filter(|p| p.kind == PieceKind::Cycle).count(),
            1
        );
    }
}
