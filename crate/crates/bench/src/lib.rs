//! Fixed, seeded workloads shared by the benchmarks in `benches/`.

use lhom_core::selftest::{random_digraph, random_instance, random_tractable_template};
use lhom_core::{Digraph, Instance};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;

/// `count` random templates on exactly `n` vertices at arc density `p`.
pub fn templates(n: usize, p: f64, count: usize) -> Vec<Digraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count).map(|_| random_digraph(&mut rng, n, p)).collect()
}

/// `count` circular-N-free templates on at most `max_n` vertices, each
/// paired with one random instance of at most `max_g` vertices.
pub fn solver_cases(max_n: usize, max_g: usize, count: usize) -> Vec<(Digraph, Instance)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| {
            let h = random_tractable_template(&mut rng, max_n);
            let inst = random_instance(&mut rng, &h, max_g);
            (h, inst)
        })
        .collect()
}
