//! The line-based graft and solution formats.
//!
//! ```text
//! # a triangle on three terminals
//! t a b c
//! e a b
//! e b c
//! e a c
//! ```
//!
//! Vertex names are interned in order of first appearance and edges are
//! numbered in file order from 0. A solution lists paths in traversal order
//! and cuts with ascending edge ids:
//!
//! ```text
//! path a b : 0
//! cut a : 0 2
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graft::{EdgeId, Graft, VertexId};
use crate::menger::Cut;
use crate::packing::Certificate;
use crate::path::{Path, PathSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Meaningful lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// A graft together with the names of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraftFile {
    pub names: Vec<String>,
    pub graft: Graft,
}

impl GraftFile {
    pub fn parse(text: &str) -> Result<GraftFile, ParseError> {
        let mut names: Vec<String> = Vec::new();
        let mut ids: HashMap<String, VertexId> = HashMap::new();
        let mut intern = |name: &str| -> VertexId {
            *ids.entry(name.to_owned()).or_insert_with(|| {
                names.push(name.to_owned());
                VertexId(names.len() - 1)
            })
        };
        let mut terminals: Vec<VertexId> = Vec::new();
        let mut edges = Vec::new();
        let mut last = 0;
        for (n, line) in content_lines(text) {
            last = n;
            let mut words = line.split_whitespace();
            match words.next() {
                Some("t") => {
                    let declared: Vec<&str> = words.collect();
                    if declared.is_empty() {
                        return fail(n, "terminal line names no vertex");
                    }
                    for name in declared {
                        let v = intern(name);
                        if terminals.contains(&v) {
                            return fail(n, format!("terminal {name} declared twice"));
                        }
                        terminals.push(v);
                    }
                }
                Some("e") => {
                    if terminals.is_empty() {
                        return fail(n, "edge before any terminal line");
                    }
                    let ends: Vec<&str> = words.collect();
                    let [a, b] = ends[..] else {
                        return fail(n, format!("edge needs two endpoints, found {}", ends.len()));
                    };
                    if a == b {
                        return fail(n, format!("loop at {a}"));
                    }
                    edges.push((intern(a), intern(b)));
                }
                Some(other) => return fail(n, format!("unknown line kind {other:?}")),
                None => unreachable!("blank lines are skipped"),
            }
        }
        if terminals.len() < 2 {
            return fail(
                last.max(1),
                format!("need at least two terminals, found {}", terminals.len()),
            );
        }
        let graft = Graft::new(names.len(), &terminals, &edges).expect("validated above");
        Ok(GraftFile { names, graft })
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name).map(VertexId)
    }

    /// Writes the graft back out; edges keep their ids only if the graft
    /// has no retired edge slots.
    pub fn render(&self, header: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(h) = header {
            writeln!(out, "# {h}").unwrap();
        }
        let terms: Vec<&str> = self
            .graft
            .terminals()
            .iter()
            .map(|&t| self.name(t))
            .collect();
        writeln!(out, "t {}", terms.join(" ")).unwrap();
        for e in self.graft.edge_ids() {
            let (u, v) = self.graft.endpoints(e).expect("live edge");
            writeln!(out, "e {} {}", self.name(u), self.name(v)).unwrap();
        }
        out
    }
}

/// A parsed solution. Paths are kept as written so the verifier, not the
/// parser, judges them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolutionFile {
    pub paths: Vec<Path>,
    pub cuts: BTreeMap<VertexId, Vec<EdgeId>>,
}

fn edge_ids<'a>(n: usize, words: impl Iterator<Item = &'a str>) -> Result<Vec<EdgeId>, ParseError> {
    words
        .map(|w| match w.parse::<usize>() {
            Ok(i) => Ok(EdgeId(i)),
            Err(_) => fail(n, format!("bad edge id {w:?}")),
        })
        .collect()
}

impl SolutionFile {
    pub fn parse(text: &str, graft: &GraftFile) -> Result<SolutionFile, ParseError> {
        let mut sol = SolutionFile::default();
        for (n, line) in content_lines(text) {
            let (head, tail) = line
                .split_once(':')
                .map_or_else(|| fail(n, "missing ':'"), Ok)?;
            let mut words = head.split_whitespace();
            let terminal = |name: Option<&str>| -> Result<VertexId, ParseError> {
                let Some(name) = name else {
                    return fail(n, "missing terminal name");
                };
                match graft.vertex(name) {
                    Some(v) if graft.graft.is_terminal(v) => Ok(v),
                    _ => fail(n, format!("{name} is not a terminal")),
                }
            };
            match words.next() {
                Some("path") => {
                    let start = terminal(words.next())?;
                    let end = terminal(words.next())?;
                    let edges = edge_ids(n, tail.split_whitespace())?;
                    if edges.is_empty() {
                        return fail(n, "path without edges");
                    }
                    sol.paths.push(Path { start, end, edges });
                }
                Some("cut") => {
                    let t = terminal(words.next())?;
                    if sol
                        .cuts
                        .insert(t, edge_ids(n, tail.split_whitespace())?)
                        .is_some()
                    {
                        return fail(n, format!("second cut for {}", graft.name(t)));
                    }
                }
                Some(other) => return fail(n, format!("unknown line kind {other:?}")),
                None => return fail(n, "empty line head"),
            }
            if words.next().is_some() {
                return fail(n, "trailing words before ':'");
            }
        }
        Ok(sol)
    }

    pub fn path_system(&self) -> PathSystem {
        PathSystem::new(self.paths.clone())
    }

    /// `None` when the file has no cut lines.
    pub fn certificate(&self, graft: &Graft) -> Option<Certificate> {
        if self.cuts.is_empty() {
            return None;
        }
        let cuts = self
            .cuts
            .iter()
            .map(|(&t, edges)| {
                let edges = edges.iter().copied().collect();
                let region =
                    crate::menger::reach_avoiding(graft, &crate::menger::single(t), &edges);
                (
                    t,
                    Cut {
                        edges,
                        source_region: region,
                    },
                )
            })
            .collect();
        Some(Certificate {
            paths: self.path_system(),
            cuts,
        })
    }
}

/// Renders paths (and optionally cuts) in the solution format.
pub struct SolutionDisplay<'a> {
    pub file: &'a GraftFile,
    pub paths: &'a PathSystem,
    pub cuts: Option<&'a BTreeMap<VertexId, Cut>>,
}

fn join_ids<'e>(ids: impl Iterator<Item = &'e EdgeId>) -> String {
    ids.map(|e| format!(" {e}")).collect()
}

impl fmt::Display for SolutionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.paths {
            writeln!(
                f,
                "path {} {} :{}",
                self.file.name(p.start),
                self.file.name(p.end),
                join_ids(p.edges.iter())
            )?;
        }
        if let Some(cuts) = self.cuts {
            for (&t, cut) in cuts {
                writeln!(
                    f,
                    "cut {} :{}",
                    self.file.name(t),
                    join_ids(cut.edges.iter())
                )?;
            }
        }
        Ok(())
    }
}
