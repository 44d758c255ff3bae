use thiserror::Error;

use crate::graft::{Graft, VertexId};

use super::rng::XorShift64Star;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

/// Parameters of [`generate_inner_eulerian`]. Terminals are the vertices
/// `0..terminal_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub vertex_count: usize,
    pub terminal_count: usize,
    pub cycle_count: usize,
    pub tpath_count: usize,
    /// Upper bound on the number of edges of a single cycle or T-path.
    pub max_piece_length: usize,
}

/// A graft built as an edge-disjoint union of random cycles and T-paths,
/// hence inner-Eulerian by construction.
///
/// Cycles come first: each has a length drawn from `2..=min(L, n)` and runs
/// through that many distinct vertices drawn from all vertices. Each T-path
/// joins two distinct terminals through a number of distinct inner vertices
/// drawn from `0..=min(L - 1, n - k)`. The edge list is shuffled at the end.
pub fn generate_inner_eulerian(p: &GenParams) -> Result<Graft, GenError> {
    let infeasible = |msg: &str| Err(GenError::Infeasible(msg.to_owned()));
    let (n, k, len) = (p.vertex_count, p.terminal_count, p.max_piece_length);
    if k < 2 {
        return infeasible("at least two terminals are required");
    }
    if k > n {
        return infeasible("more terminals than vertices");
    }
    if p.cycle_count > 0 && len < 2 {
        return infeasible("cycles need a piece length of at least 2");
    }
    if p.tpath_count > 0 && len < 1 {
        return infeasible("T-paths need a piece length of at least 1");
    }

    let mut rng = XorShift64Star::new(p.seed);
    let all: Vec<VertexId> = (0..n).map(VertexId).collect();
    let terminals = &all[..k];
    let inner = &all[k..];
    let mut edges = Vec::new();

    for _ in 0..p.cycle_count {
        let size = rng.between(2, len.min(n));
        let ring = rng.sample(&all, size);
        for i in 0..size {
            edges.push((ring[i], ring[(i + 1) % size]));
        }
    }
    for _ in 0..p.tpath_count {
        let ends = rng.sample(terminals, 2);
        let m = rng.between(0, (len - 1).min(inner.len()));
        let mut walk = vec![ends[0]];
        walk.extend(rng.sample(inner, m));
        walk.push(ends[1]);
        edges.extend(walk.windows(2).map(|w| (w[0], w[1])));
    }
    rng.shuffle(&mut edges);

    Ok(Graft::new(n, terminals, &edges).expect("generated pieces have no loops"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::is_inner_eulerian;

    fn params(seed: u64, cycles: usize, tpaths: usize) -> GenParams {
        GenParams {
            seed,
            vertex_count: 6,
            terminal_count: 3,
            cycle_count: cycles,
            tpath_count: tpaths,
            max_piece_length: 4,
        }
    }

    #[test]
    fn generated_grafts_are_inner_eulerian() {
        let g = generate_inner_eulerian(&params(1, 1, 2)).unwrap();
        assert!(is_inner_eulerian(&g));
        assert!(g.edge_count() >= 2 + 2);
        for seed in 0..200 {
            let g = generate_inner_eulerian(&params(seed, 2, 3)).unwrap();
            assert!(is_inner_eulerian(&g), "seed {seed}");
        }
    }

    #[test]
    fn empty_request_gives_edgeless_graft() {
        let g = generate_inner_eulerian(&params(5, 0, 0)).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.terminals().len(), 3);
    }

    #[test]
    fn infeasible_parameters() {
        let mut p = params(1, 1, 1);
        p.terminal_count = 1;
        assert!(matches!(
            generate_inner_eulerian(&p),
            Err(GenError::Infeasible(_))
        ));
        let mut p = params(1, 1, 0);
        p.max_piece_length = 1;
        assert!(generate_inner_eulerian(&p).is_err());
        let mut p = params(1, 0, 1);
        p.terminal_count = 7;
        assert!(generate_inner_eulerian(&p).is_err());
    }

    #[test]
    fn same_seed_same_graft() {
        let a = generate_inner_eulerian(&params(9, 2, 2)).unwrap();
        let b = generate_inner_eulerian(&params(9, 2, 2)).unwrap();
        assert_eq!(a, b);
    }
}
