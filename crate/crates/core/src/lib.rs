//! Edge-disjoint T-paths in inner-Eulerian grafts.
//!
//! A graft is a multigraph with a set `T` of terminals. When every
//! non-terminal vertex has even degree, the largest number of edge-disjoint
//! paths between distinct terminals equals half the sum of the terminals'
//! cut values. This crate computes such packings and checkable certificates
//! for them.
//!
//! * [`graft`]: the graph type, with contraction and splitting off.
//! * [`path`]: paths and path systems.
//! * [`menger`]: maximum path systems, minimum cuts and their lattice.
//! * [`euler`]: parity and cycle/T-path partitions.
//! * [`linkage`]: linkability, joker families and lifting.
//! * [`packing`]: T-path extraction, perfect linkages and certificates.
//! * [`toolkit`]: generator, brute-force oracles and the verifier.
//! * [`cli`]: file formats and the command dispatcher.
//!
//! ```
//! use tpaths::graft::{Graft, VertexId};
//! use tpaths::packing::perfect_linkage;
//!
//! let v = VertexId;
//! let g = Graft::new(3, &[v(0), v(1)], &[(v(0), v(2)), (v(2), v(1))])?;
//! let paths = perfect_linkage(&g)?;
//! assert_eq!(paths.len(), 1);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod euler;
pub mod graft;
pub mod linkage;
pub mod menger;
pub mod packing;
pub mod path;
pub mod toolkit;

// The guide's snippets run as doctests through these modules.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/grafts.md")]
    mod grafts {}
    #[doc = include_str!("../../../book/src/menger.md")]
    mod menger {}
    #[doc = include_str!("../../../book/src/partition.md")]
    mod partition {}
    #[doc = include_str!("../../../book/src/linkage.md")]
    mod linkage {}
    #[doc = include_str!("../../../book/src/packing.md")]
    mod packing {}
    #[doc = include_str!("../../../book/src/toolkit.md")]
    mod toolkit {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
