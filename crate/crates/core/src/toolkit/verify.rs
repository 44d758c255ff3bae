use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::graft::{EdgeId, EdgeSet, Graft, VertexId};
use crate::menger;
use crate::packing::Certificate;
use crate::path::{Path, PathSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    NotTPath,
    NotDisjoint,
    CutNotSeparating,
    CutNotOrthogonal,
    ExtraCutEdge,
    CoverageGap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        VerifyReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn push(&mut self, kind: ViolationKind, detail: impl Into<String>) {
        self.0.push(Violation {
            kind,
            detail: detail.into(),
        });
    }
}

fn edge_list(edges: &[EdgeId]) -> String {
    edges
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Recomputes a path's walk from scratch instead of trusting its fields.
fn check_path(graft: &Graft, i: usize, p: &Path, out: &mut Collector) -> bool {
    let rebuilt = Path::new(graft, p.start, p.edges.clone());
    let ok = match rebuilt {
        Ok(q) => q.end == p.end && q.is_t_path(graft),
        Err(_) => false,
    };
    if !ok {
        out.push(
            ViolationKind::NotTPath,
            format!("path {i} ({}) is not a T-path", edge_list(&p.edges)),
        );
    }
    ok
}

fn check_paths(graft: &Graft, paths: &PathSystem, out: &mut Collector) -> Vec<bool> {
    let valid: Vec<bool> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| check_path(graft, i, p, out))
        .collect();
    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (i, p) in paths.iter().enumerate() {
        for &e in &p.edges {
            if let Some(j) = owner.insert(e, i) {
                if j != i {
                    out.push(
                        ViolationKind::NotDisjoint,
                        format!("edge {e} lies on paths {j} and {i}"),
                    );
                }
            }
        }
    }
    valid
}

/// Whether `cut` is `δ(X)` for some `X` holding `t` and no other terminal:
/// collapse the components of `G − cut` and 2-colour them so that every cut
/// edge joins the two sides.
fn is_terminal_cut(graft: &Graft, t: VertexId, cut: &EdgeSet) -> bool {
    let n = graft.vertex_bound();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for v in graft.vertices() {
        if comp[v.0] != usize::MAX {
            continue;
        }
        comp[v.0] = count;
        let mut queue = VecDeque::from([v]);
        while let Some(w) = queue.pop_front() {
            for &e in graft.incident(w) {
                if cut.contains(&e) {
                    continue;
                }
                let z = graft.other_end(e, w).expect("incident");
                if comp[z.0] == usize::MAX {
                    comp[z.0] = count;
                    queue.push_back(z);
                }
            }
        }
        count += 1;
    }
    let mut adj = vec![Vec::new(); count];
    for &e in cut {
        let (u, v) = graft.endpoints(e).expect("checked live");
        let (cu, cv) = (comp[u.0], comp[v.0]);
        if cu == cv {
            return false;
        }
        adj[cu].push(cv);
        adj[cv].push(cu);
    }
    // side: Some(true) inside X
    let mut side: Vec<Option<bool>> = vec![None; count];
    let mut forced: Vec<Option<bool>> = vec![None; count];
    for &s in graft.terminals() {
        let c = comp[s.0];
        let want = s == t;
        match forced[c] {
            Some(prev) if prev != want => return false,
            _ => forced[c] = Some(want),
        }
    }
    for start in 0..count {
        if side[start].is_some() {
            continue;
        }
        // colour this piece of the component graph, then check it against
        // the forced sides up to a global flip
        let mut members = vec![start];
        side[start] = Some(true);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for &d in &adj[c] {
                let want = !side[c].expect("coloured");
                match side[d] {
                    None => {
                        side[d] = Some(want);
                        members.push(d);
                        queue.push_back(d);
                    }
                    Some(have) if have != want => return false,
                    Some(_) => {}
                }
            }
        }
        let mut flip: Option<bool> = None;
        for &c in &members {
            if let Some(want) = forced[c] {
                let needs = side[c] != Some(want);
                match flip {
                    Some(f) if f != needs => return false,
                    _ => flip = Some(needs),
                }
            }
        }
    }
    true
}

fn check_cuts(graft: &Graft, cert: &Certificate, valid: &[bool], out: &mut Collector) {
    for &t in cert.cuts.keys() {
        if !graft.is_terminal(t) {
            out.push(
                ViolationKind::CutNotSeparating,
                format!("cut given for non-terminal {t}"),
            );
        }
    }
    for &t in graft.terminals() {
        let Some(cut) = cert.cuts.get(&t) else {
            out.push(
                ViolationKind::CoverageGap,
                format!("no cut for terminal {t}"),
            );
            continue;
        };
        let c = &cut.edges;
        if let Some(e) = c.iter().find(|e| !graft.contains_edge(**e)) {
            out.push(
                ViolationKind::CutNotSeparating,
                format!("cut of {t} names unknown edge {e}"),
            );
            continue;
        }
        let reach = menger::reach_avoiding(graft, &menger::single(t), c);
        if let Some(x) = reach.iter().find(|&&x| x != t && graft.is_terminal(x)) {
            out.push(
                ViolationKind::CutNotSeparating,
                format!("{t} still reaches {x} without the cut edges"),
            );
        } else if !is_terminal_cut(graft, t, c) {
            out.push(
                ViolationKind::CutNotSeparating,
                format!("cut of {t} is not the boundary of a set around {t}"),
            );
        }
        let mut on_paths = EdgeSet::new();
        for (i, p) in cert.paths.iter().enumerate() {
            if !valid[i] || !p.has_endpoint(t) {
                continue;
            }
            let hits: Vec<EdgeId> = p.edges.iter().copied().filter(|e| c.contains(e)).collect();
            if hits.len() != 1 {
                out.push(
                    ViolationKind::CutNotOrthogonal,
                    format!("path {i} ending at {t} uses {} cut edges", hits.len()),
                );
            }
            on_paths.extend(hits);
        }
        for e in c.difference(&on_paths) {
            out.push(
                ViolationKind::ExtraCutEdge,
                format!("cut edge {e} of {t} lies on no path ending at {t}"),
            );
        }
    }
}

/// Checks a certificate against the graft from first principles.
pub fn verify_certificate(graft: &Graft, cert: &Certificate) -> VerifyReport {
    let mut out = Collector(Vec::new());
    let valid = check_paths(graft, &cert.paths, &mut out);
    check_cuts(graft, cert, &valid, &mut out);
    VerifyReport::from_violations(out.0)
}

/// Checks that `paths` are edge-disjoint T-paths covering every edge at
/// every terminal.
pub fn verify_linkage(graft: &Graft, paths: &PathSystem) -> VerifyReport {
    let mut out = Collector(Vec::new());
    check_paths(graft, paths, &mut out);
    let used = paths.edge_set();
    for e in crate::packing::terminal_edges(graft).difference(&used) {
        out.push(
            ViolationKind::CoverageGap,
            format!("terminal edge {e} is on no path"),
        );
    }
    VerifyReport::from_violations(out.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graft::fixtures::*;
    use crate::menger::Cut;
    use crate::packing::lovcher_certificate;

    #[test]
    fn certificates_from_the_solver_pass() {
        for g in [g1(), g2(), g4(), g10()] {
            let c = lovcher_certificate(&g).unwrap();
            assert_eq!(
                verify_certificate(&g, &c),
                VerifyReport {
                    ok: true,
                    violations: vec![]
                }
            );
        }
    }

    #[test]
    fn shrunken_cut_is_not_separating() {
        let g = g1();
        let mut c = lovcher_certificate(&g).unwrap();
        c.cuts.insert(
            v(0),
            Cut {
                edges: es(&[0]),
                source_region: vs(&[0]),
            },
        );
        let r = verify_certificate(&g, &c);
        assert!(!r.ok);
        assert!(r.has(ViolationKind::CutNotSeparating));
    }

    #[test]
    fn shared_edge_is_reported() {
        let g = g1();
        let mut c = lovcher_certificate(&g).unwrap();
        let dup = c.paths.paths[0].clone();
        c.paths.paths.push(dup);
        assert!(verify_certificate(&g, &c).has(ViolationKind::NotDisjoint));
    }

    #[test]
    fn non_boundary_cut_is_rejected() {
        // a=0 b=1 x=2: a-x, x-b, a-b; {a-x, a-b} separates but so would {a-x, x-b, a-b}
        let g = graft(3, &[0, 1], &[(0, 2), (2, 1), (0, 1)]);
        assert!(is_terminal_cut(&g, v(0), &es(&[0, 2])));
        assert!(!is_terminal_cut(&g, v(0), &es(&[0, 1, 2])));
    }

    #[test]
    fn linkage_coverage() {
        let g = g1();
        let p: PathSystem = [Path::new(&g, v(0), vec![EdgeId(0)]).unwrap()]
            .into_iter()
            .collect();
        let r = verify_linkage(&g, &p);
        assert_eq!(r.violations.len(), 2);
        assert!(r.has(ViolationKind::CoverageGap));
    }
}
