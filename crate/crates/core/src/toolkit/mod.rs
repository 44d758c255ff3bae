//! Test infrastructure shipped with the library: a seeded instance
//! generator, exhaustive oracles and a certificate verifier. None of it
//! depends on the packing algorithms it is meant to check.

mod generate;
mod oracle;
mod rng;
mod verify;

pub use generate::{generate_inner_eulerian, GenError, GenParams};
pub use oracle::{
    brute_force_max_packing, enumerate_ab_paths, enumerate_linkages, enumerate_min_cuts,
    enumerate_path_systems, enumerate_tpaths, minimax_value, OracleError, DEFAULT_CAP,
};
pub use rng::XorShift64Star;
pub use verify::{verify_certificate, verify_linkage, VerifyReport, Violation, ViolationKind};
