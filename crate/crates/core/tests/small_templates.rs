//! Exhaustive checks over every digraph on at most three vertices.

use lhom_core::detect::find_circular_n;
use lhom_core::hm::{construct_hm_chain, verify_chain};
use lhom_core::{build_pair_structure, Digraph};

fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    (0..1u64 << (n * n)).map(move |mask| Digraph::from_mask(n, mask))
}

#[test]
fn circular_n_free_iff_forced_chain_verifies() {
    for n in 1..=3 {
        for h in all_digraphs(n) {
            let pairs = build_pair_structure(&h);
            let chain = construct_hm_chain(&h, &pairs);
            let clean = verify_chain(&h, &chain).unwrap().is_clean();
            let witness = find_circular_n(&h);
            if let Some(w) = &witness {
                w.validate(&h).unwrap();
            }
            assert_eq!(witness.is_none(), clean, "template {h:?}");
        }
    }
}

#[test]
#[ignore = "exhaustive over 65536 templates; run with --release --ignored"]
fn circular_n_free_iff_forced_chain_verifies_on_four_vertices() {
    for h in all_digraphs(4) {
        let pairs = build_pair_structure(&h);
        let chain = construct_hm_chain(&h, &pairs);
        let clean = verify_chain(&h, &chain).unwrap().is_clean();
        assert_eq!(find_circular_n(&h).is_none(), clean, "template {h:?}");
    }
}
