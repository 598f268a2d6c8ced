//! Property-based checks of the walk calculus, the pair digraph, and the
//! solver.

use lhom_core::pairs::PairStructure;
use lhom_core::solver::{oracle_solve, Instance, Solver};
use lhom_core::{
    avoids, build_pair_structure, congruent, find_circular_n, protects, reverse_walk, Digraph, Direction, Vertex, Walk,
};
use proptest::prelude::*;

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| any::<u64>().prop_map(move |bits| Digraph::from_mask(n, bits & ((1 << (n * n)) - 1))))
}

fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Forward), Just(Direction::Backward)]
}

/// A template together with three congruent vertex sequences over it (not
/// necessarily walks of the template; the predicates do not need that).
fn walk_triple() -> impl Strategy<Value = (Digraph, Walk, Walk, Walk)> {
    (digraph(4), prop::collection::vec(direction(), 0..6)).prop_flat_map(|(h, pattern)| {
        let n = h.n();
        let len = pattern.len() + 1;
        let seq = move || prop::collection::vec(0..n, len);
        (Just(h), Just(pattern), seq(), seq(), seq()).prop_map(|(h, pattern, x, y, z)| {
            (
                h,
                Walk::with_pattern(&x, &pattern),
                Walk::with_pattern(&y, &pattern),
                Walk::with_pattern(&z, &pattern),
            )
        })
    })
}

fn faithful(h: &Digraph, from: &Walk, to: &Walk, i: usize) -> bool {
    h.edge(from.vertex(i), to.vertex(i + 1), from.direction(i))
}

/// Every pair reachable from `p` in `H⁺`.
fn reachable(pairs: &PairStructure, p: (Vertex, Vertex)) -> Vec<(Vertex, Vertex)> {
    let mut seen = vec![p];
    let mut stack = vec![p];
    while let Some(q) = stack.pop() {
        for r in pairs.successors(q) {
            if !seen.contains(&r) {
                seen.push(r);
                stack.push(r);
            }
        }
    }
    seen
}

proptest! {
    #[test]
    fn reversal_is_an_involution((_, x, _, _) in walk_triple()) {
        let back = reverse_walk(&reverse_walk(&x));
        prop_assert_eq!(&back, &x);
        prop_assert!(congruent(&reverse_walk(&x), &reverse_walk(&back)));
    }

    #[test]
    fn avoidance_swaps_under_reversal((h, x, y, _) in walk_triple()) {
        prop_assert_eq!(
            avoids(&h, &x, &y).unwrap(),
            avoids(&h, &reverse_walk(&y), &reverse_walk(&x)).unwrap()
        );
    }

    #[test]
    fn protection_is_a_prefix_suffix_split((h, x, y, z) in walk_triple()) {
        let len = x.len();
        let split = (0..=len).any(|s| {
            (0..len).all(|i| !faithful(&h, &x, &z, i) || i >= s)
                && (0..len).all(|j| !faithful(&h, &z, &y, j) || j <= s)
        });
        prop_assert_eq!(protects(&h, &z, &y, &x).unwrap(), split);
    }

    #[test]
    fn mu_never_decreases_along_arcs(h in digraph(4)) {
        let pairs = build_pair_structure(&h);
        for arc in pairs.arcs() {
            prop_assert!(pairs.mu(arc.to.0, arc.to.1) >= pairs.mu(arc.from.0, arc.from.1));
        }
    }

    #[test]
    fn tractable_pair_digraph_properties(h in digraph(4)) {
        prop_assume!(find_circular_n(&h).is_none());
        let pairs = build_pair_structure(&h);
        let n = h.n();
        // Property (*): a_i a_j, b_i b_j, b_i a_j edges and a_i b_j not an
        // edge force (a_j, b_j) into a strictly later component.
        for dir in Direction::BOTH {
            for ai in 0..n { for bi in 0..n { for aj in 0..n { for bj in 0..n {
                if ai == bi || aj == bj {
                    continue;
                }
                if h.edge(ai, aj, dir) && h.edge(bi, bj, dir) && h.edge(bi, aj, dir) && !h.edge(ai, bj, dir) {
                    prop_assert!(pairs.component_of((aj, bj)) > pairs.component_of((ai, bi)));
                }
            }}}}
        }
        // Equal μ along a directed path of H⁺ means the same component.
        for p in pairs.processing_order().to_vec() {
            for q in reachable(&pairs, p) {
                if pairs.mu(p.0, p.1) == pairs.mu(q.0, q.1) {
                    prop_assert_eq!(pairs.component_of(p), pairs.component_of(q));
                }
            }
        }
    }

    #[test]
    fn solver_matches_oracle(
        h in digraph(4),
        g in digraph(6),
        lists in prop::collection::vec(1u64..16, 6),
    ) {
        prop_assume!(find_circular_n(&h).is_none());
        let full = (1u64 << h.n()) - 1;
        let lists: Vec<Vec<Vertex>> = lists[..g.n()]
            .iter()
            .map(|&m| (0..h.n()).filter(|&c| (m & full) >> c & 1 == 1).collect())
            .collect();
        let inst = Instance::new(g, lists).unwrap();
        let got = Solver::new(&h).unwrap().solve(&inst).unwrap();
        let want = oracle_solve(&h, &inst).unwrap();
        prop_assert_eq!(got.is_some(), want.is_some());
        if let Some(f) = got {
            prop_assert!(f.validate(&h, &inst).is_ok());
        }
    }
}
