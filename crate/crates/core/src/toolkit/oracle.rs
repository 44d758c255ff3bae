//! Exhaustive oracles. Everything here enumerates; nothing calls into the
//! packing code, so agreement with it is evidence rather than tautology.

use std::collections::BTreeSet;

use num_rational::Ratio;
use thiserror::Error;

use crate::graft::{EdgeId, EdgeSet, Graft, VertexId, VertexSet};
use crate::menger::{self, Cut};
use crate::path::{Path, PathSystem};

/// Default bound on the number of enumerated paths or systems.
pub const DEFAULT_CAP: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration exceeded the cap of {0}")]
    CapExceeded(usize),
}

/// Depth-first enumeration of simple paths from `start`. A vertex for which
/// `stop` holds ends the path; `accept` decides whether such an end is
/// recorded, and vertices in `blocked` are never entered.
fn walks_from(
    graft: &Graft,
    start: VertexId,
    stop: &dyn Fn(VertexId) -> bool,
    accept: &dyn Fn(VertexId) -> bool,
    blocked: &dyn Fn(VertexId) -> bool,
    cap: usize,
    out: &mut Vec<Path>,
) -> Result<(), OracleError> {
    struct Walk<'a> {
        graft: &'a Graft,
        stop: &'a dyn Fn(VertexId) -> bool,
        accept: &'a dyn Fn(VertexId) -> bool,
        blocked: &'a dyn Fn(VertexId) -> bool,
        cap: usize,
        start: VertexId,
        seen: BTreeSet<VertexId>,
        edges: Vec<EdgeId>,
    }
    impl Walk<'_> {
        fn go(&mut self, at: VertexId, out: &mut Vec<Path>) -> Result<(), OracleError> {
            for &e in self.graft.incident(at) {
                let z = self.graft.other_end(e, at).expect("incident");
                if self.seen.contains(&z) || (self.blocked)(z) {
                    continue;
                }
                self.edges.push(e);
                if (self.stop)(z) {
                    if (self.accept)(z) {
                        if out.len() == self.cap {
                            return Err(OracleError::CapExceeded(self.cap));
                        }
                        out.push(Path {
                            start: self.start,
                            end: z,
                            edges: self.edges.clone(),
                        });
                    }
                } else {
                    self.seen.insert(z);
                    self.go(z, out)?;
                    self.seen.remove(&z);
                }
                self.edges.pop();
            }
            Ok(())
        }
    }
    let mut walk = Walk {
        graft,
        stop,
        accept,
        blocked,
        cap,
        start,
        seen: BTreeSet::from([start]),
        edges: Vec::new(),
    };
    walk.go(start, out)
}

/// Every T-path, oriented from its smaller terminal.
pub fn enumerate_tpaths(graft: &Graft, cap: usize) -> Result<Vec<Path>, OracleError> {
    let mut out = Vec::new();
    for &s in graft.terminals() {
        walks_from(
            graft,
            s,
            &|z| graft.is_terminal(z),
            &|z| z > s,
            &|_| false,
            cap,
            &mut out,
        )?;
    }
    Ok(out)
}

/// Every AB-path for disjoint `a` and `b`, oriented from `a`.
pub fn enumerate_ab_paths(
    graft: &Graft,
    a: &VertexSet,
    b: &VertexSet,
    cap: usize,
) -> Result<Vec<Path>, OracleError> {
    let mut out = Vec::new();
    for &s in a {
        walks_from(
            graft,
            s,
            &|z| b.contains(&z),
            &|_| true,
            &|z| a.contains(&z),
            cap,
            &mut out,
        )?;
    }
    Ok(out)
}

/// Every system of pairwise edge-disjoint AB-paths, the empty one included.
pub fn enumerate_path_systems(
    graft: &Graft,
    a: &VertexSet,
    b: &VertexSet,
    cap: usize,
) -> Result<Vec<PathSystem>, OracleError> {
    fn go(
        paths: &[Path],
        from: usize,
        chosen: &mut Vec<usize>,
        used: &mut EdgeSet,
        cap: usize,
        out: &mut Vec<PathSystem>,
    ) -> Result<(), OracleError> {
        if out.len() == cap {
            return Err(OracleError::CapExceeded(cap));
        }
        out.push(chosen.iter().map(|&i| paths[i].clone()).collect());
        for i in from..paths.len() {
            if paths[i].edges.iter().any(|e| used.contains(e)) {
                continue;
            }
            used.extend(paths[i].edges.iter().copied());
            chosen.push(i);
            go(paths, i + 1, chosen, used, cap, out)?;
            chosen.pop();
            for e in &paths[i].edges {
                used.remove(e);
            }
        }
        Ok(())
    }
    let paths = enumerate_ab_paths(graft, a, b, cap)?;
    let mut out = Vec::new();
    go(
        &paths,
        0,
        &mut Vec::new(),
        &mut EdgeSet::new(),
        cap,
        &mut out,
    )?;
    Ok(out)
}

/// Every linkage of the terminal `t`: edge-disjoint paths from `t` to the
/// other terminals, one through each edge at `t`.
pub fn enumerate_linkages(
    graft: &Graft,
    t: VertexId,
    cap: usize,
) -> Result<Vec<PathSystem>, OracleError> {
    fn go(
        by_first: &[Vec<&Path>],
        i: usize,
        chosen: &mut Vec<Path>,
        used: &mut EdgeSet,
        cap: usize,
        out: &mut Vec<PathSystem>,
    ) -> Result<(), OracleError> {
        if i == by_first.len() {
            if out.len() == cap {
                return Err(OracleError::CapExceeded(cap));
            }
            out.push(PathSystem::new(chosen.clone()));
            return Ok(());
        }
        for p in &by_first[i] {
            if p.edges.iter().any(|e| used.contains(e)) {
                continue;
            }
            used.extend(p.edges.iter().copied());
            chosen.push((*p).clone());
            go(by_first, i + 1, chosen, used, cap, out)?;
            chosen.pop();
            for e in &p.edges {
                used.remove(e);
            }
        }
        Ok(())
    }
    let others: VertexSet = graft
        .terminals()
        .iter()
        .copied()
        .filter(|&x| x != t)
        .collect();
    let paths = enumerate_ab_paths(graft, &menger::single(t), &others, cap)?;
    let by_first: Vec<Vec<&Path>> = graft
        .incident(t)
        .iter()
        .map(|&e| paths.iter().filter(|p| p.edges[0] == e).collect())
        .collect();
    let mut out = Vec::new();
    go(
        &by_first,
        0,
        &mut Vec::new(),
        &mut EdgeSet::new(),
        cap,
        &mut out,
    )?;
    Ok(out)
}

/// Every minimum cut between disjoint `a` and `b`, found by trying each
/// vertex set between them. Exponential in the number of free vertices.
pub fn enumerate_min_cuts(graft: &Graft, a: &VertexSet, b: &VertexSet) -> Vec<Cut> {
    let free: Vec<VertexId> = graft
        .vertices()
        .filter(|v| !a.contains(v) && !b.contains(v))
        .collect();
    assert!(
        free.len() < 24,
        "too many free vertices for exhaustive cut search"
    );
    let mut best = usize::MAX;
    let mut found: BTreeSet<EdgeSet> = BTreeSet::new();
    for mask in 0u32..(1 << free.len()) {
        let mut x = a.clone();
        x.extend(
            (0..free.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| free[i]),
        );
        let edges = graft.delta(&x).expect("live vertices");
        if edges.len() < best {
            best = edges.len();
            found.clear();
        }
        if edges.len() == best {
            found.insert(edges);
        }
    }
    found
        .into_iter()
        .map(|edges| Cut::from_edges(graft, a, edges))
        .collect()
}

/// Size of a largest edge-disjoint T-path packing and one packing of that
/// size, by branch and bound.
///
/// Terminal edges are decided in ascending order: each is either used by a
/// T-path through it or left out for good. A T-path consumes two terminal
/// incidences, which bounds what the undecided edges can still contribute.
pub fn brute_force_max_packing(
    graft: &Graft,
    cap: usize,
) -> Result<(usize, PathSystem), OracleError> {
    struct Search<'a> {
        graft: &'a Graft,
        paths: Vec<Path>,
        term_edges: Vec<EdgeId>,
        through: Vec<Vec<usize>>,
        blocked: EdgeSet,
        chosen: Vec<usize>,
        best: Vec<usize>,
    }
    impl Search<'_> {
        fn incidences(&self, e: EdgeId) -> usize {
            let (u, v) = self.graft.endpoints(e).expect("live edge");
            usize::from(self.graft.is_terminal(u)) + usize::from(self.graft.is_terminal(v))
        }

        fn go(&mut self, i: usize) {
            let Some(pos) =
                (i..self.term_edges.len()).find(|&j| !self.blocked.contains(&self.term_edges[j]))
            else {
                if self.chosen.len() > self.best.len() {
                    self.best = self.chosen.clone();
                }
                return;
            };
            let open: usize = self.term_edges[pos..]
                .iter()
                .filter(|e| !self.blocked.contains(e))
                .map(|&e| self.incidences(e))
                .sum();
            if self.chosen.len() + open / 2 <= self.best.len() {
                return;
            }
            let e = self.term_edges[pos];
            for k in 0..self.through[pos].len() {
                let p = self.through[pos][k];
                if self.paths[p].edges.iter().any(|x| self.blocked.contains(x)) {
                    continue;
                }
                self.blocked.extend(self.paths[p].edges.iter().copied());
                self.chosen.push(p);
                self.go(pos + 1);
                self.chosen.pop();
                for x in &self.paths[p].edges {
                    self.blocked.remove(x);
                }
            }
            self.blocked.insert(e);
            self.go(pos + 1);
            self.blocked.remove(&e);
        }
    }

    let paths = enumerate_tpaths(graft, cap)?;
    let term_edges: Vec<EdgeId> = graft
        .edge_ids()
        .filter(|&e| {
            let (u, v) = graft.endpoints(e).expect("live edge");
            graft.is_terminal(u) || graft.is_terminal(v)
        })
        .collect();
    let through = term_edges
        .iter()
        .map(|e| {
            (0..paths.len())
                .filter(|&p| paths[p].contains_edge(*e))
                .collect()
        })
        .collect();
    let mut search = Search {
        graft,
        paths,
        term_edges,
        through,
        blocked: EdgeSet::new(),
        chosen: Vec::new(),
        best: Vec::new(),
    };
    search.go(0);
    let system: PathSystem = search
        .best
        .iter()
        .map(|&p| search.paths[p].clone())
        .collect();
    Ok((system.len(), system))
}

/// `½ Σ_t λ(t, T − t)`. On inner-Eulerian grafts the sum is even.
pub fn minimax_value(graft: &Graft) -> Ratio<u64> {
    let total: u64 = graft
        .terminals()
        .iter()
        .map(|&t| {
            let others = graft
                .terminals()
                .iter()
                .copied()
                .filter(|&x| x != t)
                .collect();
            menger::lambda(graft, &menger::single(t), &others).expect("terminal sides are disjoint")
                as u64
        })
        .sum();
    let value = Ratio::new(total, 2);
    if crate::euler::is_inner_eulerian(graft) {
        assert!(
            value.is_integer(),
            "odd terminal-cut sum on an inner-Eulerian graft"
        );
    }
    value
}
