//! Small named templates used throughout the tests, benches, and docs.

use crate::digraph::{Digraph, Vertex};

/// A single arc `0 -> 1`.
pub fn h_arc() -> Digraph {
    Digraph::new(2, [(0, 1)]).unwrap()
}

/// The N: arcs `0 -> 1`, `2 -> 3`, `2 -> 1`.
pub fn h_n() -> Digraph {
    Digraph::new(4, [(0, 1), (2, 3), (2, 1)]).unwrap()
}

/// Reflexive symmetric 4-cycle `0 - 1 - 2 - 3 - 0`.
pub fn h_c4r() -> Digraph {
    reflexive_symmetric(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
}

/// Reflexive symmetric path `0 - 1 - 2 - 3`.
pub fn h_p4r() -> Digraph {
    reflexive_symmetric(4, &[(0, 1), (1, 2), (2, 3)])
}

/// Complete digraph with all loops.
pub fn complete_reflexive(n: usize) -> Digraph {
    Digraph::from_mask(n, if n * n == 64 { u64::MAX } else { (1 << (n * n)) - 1 })
}

/// Undirected graph on `n` vertices with a loop at every vertex.
pub fn reflexive_symmetric(n: usize, edges: &[(Vertex, Vertex)]) -> Digraph {
    let arcs = (0..n)
        .map(|v| (v, v))
        .chain(edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]));
    Digraph::from_arc_set(n, arcs).unwrap()
}
