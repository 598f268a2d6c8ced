//! Complexity classification and solving of list-homomorphism problems
//! `LHOM(H)` for finite digraph templates `H`.
//!
//! The crate is organised bottom-up:
//!
//! * [`digraph`]: digraphs, walks, and the walk predicates (congruence,
//!   avoidance, protection);
//! * [`pairs`]: the pair digraph `H⁺`, its condensation, the processing
//!   order, and `μ`;
//! * [`detect`]: detectors for circular N's, DATs, bicycles and independent
//!   edges, and the four-way classification;
//! * [`hm`]: construction and verification of Hagemann–Mitschke chains;
//! * [`solver`]: the transducer-chain solver and a brute-force oracle;
//! * [`gadget`]: the reduction from directed st-connectivity;
//! * [`selftest`]: exhaustive and randomized consistency suites.

pub mod detect;
pub mod digraph;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod gadget;
pub mod hm;
pub mod pairs;
pub mod selftest;
pub mod solver;

pub use detect::{classify, find_circular_n, CircularNWitness, Classification, Verdict};
pub use digraph::{avoids, congruent, protects, reverse_walk, validate_walk, Digraph, Direction, Vertex, Walk};
pub use error::{Error, Result};
pub use format::{format_digraph, parse_digraph, ParseError};
pub use gadget::{build_gadget, GadgetOutput};
pub use hm::{build_hm_chain, verify_hm_identities, verify_polymorphism, HmChain, TernaryOpTable};
pub use pairs::{build_pair_structure, Pair, PairStructure};
pub use solver::{oracle_solve, solve, Homomorphism, Instance};
