//! The pair digraph `H⁺` on ordered pairs of distinct template vertices.
//!
//! There is an arc `(x, y) -> (x', y')` when, for some direction, `xx'` and
//! `yy'` are edges and `xy'` is not. Equivalently, the one-step walks
//! `x, x'` and `y, y'` are congruent and the first avoids the second.
//!
//! On top of the arcs this module computes the strong components, a
//! deterministic topological order of the condensation (the processing order
//! `p_1 … p_m` used by the solver), and the longest-path value `μ` of each
//! component.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::digraph::{Digraph, Direction, Vertex};
use crate::error::{Error, Result};

pub type Pair = (Vertex, Vertex);

/// An arc of `H⁺`. `double` is set when the reverse arc is also present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairArc {
    pub from: Pair,
    pub to: Pair,
    pub double: bool,
}

#[derive(Debug, Clone)]
pub struct PairStructure {
    n: usize,
    /// Out-neighbours by pair id `x * n + y`; empty on the diagonal.
    succ: Vec<Vec<usize>>,
    has_arc: Vec<bool>,
    /// Component of each pair id, indexed by topological position.
    component: Vec<usize>,
    components: Vec<Vec<Pair>>,
    order: Vec<Pair>,
    /// 1-based position of each pair id in `order`.
    position: Vec<usize>,
    mu: Vec<u32>,
}

/// Builds `H⁺` and everything derived from it.
pub fn build_pair_structure(h: &Digraph) -> PairStructure {
    PairStructure::new(h)
}

impl PairStructure {
    pub fn new(h: &Digraph) -> PairStructure {
        let n = h.n();
        let id = |(x, y): Pair| x * n + y;
        let mut has_arc = vec![false; n * n * n * n];
        let mut succ = vec![Vec::new(); n * n];

        for x in 0..n {
            for y in (0..n).filter(|&y| y != x) {
                let from = id((x, y));
                for dir in Direction::BOTH {
                    for &x2 in h.neighbors(x, dir) {
                        for &y2 in h.neighbors(y, dir) {
                            if x2 != y2 && !h.edge(x, y2, dir) {
                                let to = id((x2, y2));
                                if !std::mem::replace(&mut has_arc[from * n * n + to], true) {
                                    succ[from].push(to);
                                }
                            }
                        }
                    }
                }
                succ[from].sort_unstable();
            }
        }

        let pairs: Vec<Pair> = (0..n)
            .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
            .collect();

        // Skew property: (x,y) -> (x',y') implies (y',x') -> (y,x).
        for &(x, y) in &pairs {
            for &to in &succ[id((x, y))] {
                let (x2, y2) = (to / n, to % n);
                assert!(
                    has_arc[id((y2, x2)) * n * n + id((y, x))],
                    "skew property fails for ({x},{y}) -> ({x2},{y2})"
                );
            }
        }

        let mut graph = DiGraph::<Pair, ()>::with_capacity(pairs.len(), 0);
        let mut node = vec![NodeIndex::end(); n * n];
        for &p in &pairs {
            node[id(p)] = graph.add_node(p);
        }
        for &p in &pairs {
            for &to in &succ[id(p)] {
                graph.add_edge(node[id(p)], node[to], ());
            }
        }
        let sccs = tarjan_scc(&graph);

        // Condensation, then Kahn's algorithm keyed by the smallest pair of
        // each component so the order is reproducible.
        let mut raw_component = vec![usize::MAX; n * n];
        let mut members: Vec<Vec<Pair>> = sccs
            .iter()
            .map(|scc| {
                let mut ps: Vec<Pair> = scc.iter().map(|&ix| graph[ix]).collect();
                ps.sort_unstable();
                ps
            })
            .collect();
        for (c, ps) in members.iter().enumerate() {
            for &p in ps {
                raw_component[id(p)] = c;
            }
        }
        let t = members.len();
        let mut cond_succ = vec![Vec::new(); t];
        let mut indegree = vec![0usize; t];
        for &p in &pairs {
            let cp = raw_component[id(p)];
            for &to in &succ[id(p)] {
                let cq = raw_component[to];
                if cp != cq && !cond_succ[cp].contains(&cq) {
                    cond_succ[cp].push(cq);
                    indegree[cq] += 1;
                }
            }
        }
        let mut heap: BinaryHeap<Reverse<(Pair, usize)>> = (0..t)
            .filter(|&c| indegree[c] == 0)
            .map(|c| Reverse((members[c][0], c)))
            .collect();
        let mut topo = Vec::with_capacity(t);
        while let Some(Reverse((_, c))) = heap.pop() {
            topo.push(c);
            for &d in &cond_succ[c] {
                indegree[d] -= 1;
                if indegree[d] == 0 {
                    heap.push(Reverse((members[d][0], d)));
                }
            }
        }
        assert_eq!(topo.len(), t, "condensation is acyclic");

        let mut rank = vec![0; t];
        for (r, &c) in topo.iter().enumerate() {
            rank[c] = r;
        }
        let mut component = vec![usize::MAX; n * n];
        for &p in &pairs {
            component[id(p)] = rank[raw_component[id(p)]];
        }
        let components: Vec<Vec<Pair>> = topo.iter().map(|&c| std::mem::take(&mut members[c])).collect();

        let order: Vec<Pair> = components.iter().flatten().copied().collect();
        let mut position = vec![0; n * n];
        for (i, &p) in order.iter().enumerate() {
            position[id(p)] = i + 1;
        }

        // μ(C) = 1 + max μ over predecessors, in topological order.
        let mut mu = vec![1u32; t];
        for (r, comp) in components.iter().enumerate() {
            for &p in comp {
                for &to in &succ[id(p)] {
                    let s = component[to];
                    if s != r {
                        mu[s] = mu[s].max(mu[r] + 1);
                    }
                }
            }
        }

        PairStructure {
            n,
            succ,
            has_arc,
            component,
            components,
            order,
            position,
            mu,
        }
    }

    #[inline]
    fn id(&self, (x, y): Pair) -> usize {
        x * self.n + y
    }

    #[inline]
    fn pair(&self, id: usize) -> Pair {
        (id / self.n, id % self.n)
    }

    /// Number of template vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of pairs, `n (n - 1)`.
    pub fn m(&self) -> usize {
        self.order.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Components in topological order: arcs only go from lower to higher index.
    pub fn components(&self) -> &[Vec<Pair>] {
        &self.components
    }

    /// Index of the component of `p` in [`PairStructure::components`].
    pub fn component_of(&self, p: Pair) -> usize {
        assert!(p.0 != p.1, "diagonal pair has no component");
        self.component[self.id(p)]
    }

    pub fn has_arc(&self, from: Pair, to: Pair) -> bool {
        from.0 != from.1 && to.0 != to.1 && self.has_arc[self.id(from) * self.n * self.n + self.id(to)]
    }

    pub fn successors(&self, p: Pair) -> impl Iterator<Item = Pair> + '_ {
        self.succ[self.id(p)].iter().map(|&q| self.pair(q))
    }

    pub fn arcs(&self) -> impl Iterator<Item = PairArc> + '_ {
        self.order.iter().flat_map(move |&from| {
            self.successors(from).map(move |to| PairArc {
                from,
                to,
                double: self.has_arc(to, from),
            })
        })
    }

    /// The processing order `p_1 … p_m`.
    pub fn processing_order(&self) -> &[Pair] {
        &self.order
    }

    /// 1-based position of `p` in the processing order.
    pub fn position(&self, p: Pair) -> usize {
        assert!(p.0 != p.1, "diagonal pair has no position");
        self.position[self.id(p)]
    }

    /// `μ(x, y)`, with `μ(x, x) = 0`.
    pub fn mu(&self, x: Vertex, y: Vertex) -> u32 {
        if x == y {
            0
        } else {
            self.mu[self.component[self.id((x, y))]]
        }
    }

    pub fn component_mu(&self, c: usize) -> u32 {
        self.mu[c]
    }

    /// Length of the longest directed path in the condensation, counted in
    /// vertices. Zero when there are no pairs.
    pub fn max_mu(&self) -> u32 {
        self.mu.iter().copied().max().unwrap_or(0)
    }

    /// `(x, y)` and `(y, x)` lie in one strong component.
    pub fn is_invertible(&self, x: Vertex, y: Vertex) -> Result<bool> {
        if x == y {
            return Err(Error::EqualVertices(x));
        }
        for v in [x, y] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        Ok(self.component_of((x, y)) == self.component_of((y, x)))
    }

    /// Neither `(u, v)` nor `(v, u)` sits after position `k`.
    pub fn is_k_allowed(&self, u: Vertex, v: Vertex, k: usize) -> bool {
        u == v || (self.position((u, v)) <= k && self.position((v, u)) <= k)
    }

    /// Every unordered pair of distinct vertices inside every list is
    /// `k`-allowed.
    pub fn is_k_good<L: AsRef<[Vertex]>>(&self, lists: &[L], k: usize) -> bool {
        lists.iter().all(|list| {
            let list = list.as_ref();
            list.iter()
                .enumerate()
                .all(|(i, &u)| list[i + 1..].iter().all(|&v| self.is_k_allowed(u, v, k)))
        })
    }

    /// Same as [`PairStructure::is_k_good`] for lists stored as bit masks.
    pub fn is_k_good_masks(&self, lists: &[u64], k: usize) -> bool {
        lists.iter().all(|&mask| {
            let members: Vec<Vertex> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
            self.is_k_good(&[members], k)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_arc() {
        let p = build_pair_structure(&fixtures::h_arc());
        assert_eq!(p.m(), 2);
        assert_eq!(p.arcs().count(), 0);
        assert_eq!(p.component_count(), 2);
        assert_eq!(p.processing_order(), &[(0, 1), (1, 0)]);
        assert_eq!(p.mu(0, 1), 1);
        assert_eq!(p.mu(1, 0), 1);
        assert_eq!(p.mu(1, 1), 0);
        assert!(!p.is_invertible(0, 1).unwrap());
        assert_eq!(p.is_invertible(1, 1), Err(Error::EqualVertices(1)));
    }

    #[test]
    fn the_n_has_a_single_arc() {
        let h = fixtures::h_n();
        let p = build_pair_structure(&h);
        assert!(p.has_arc((0, 2), (1, 3)));
        assert!(!p.has_arc((1, 3), (0, 2)));
        let arc = p.arcs().find(|a| a.from == (0, 2) && a.to == (1, 3)).unwrap();
        assert!(!arc.double);
        assert!(p.mu(0, 2) < p.mu(1, 3));
        assert!(p.position((0, 2)) < p.position((1, 3)));
    }

    #[test]
    fn one_vertex_has_no_pairs() {
        for h in [Digraph::new(1, []).unwrap(), Digraph::new(1, [(0, 0)]).unwrap()] {
            let p = build_pair_structure(&h);
            assert_eq!(p.m(), 0);
            assert!(p.processing_order().is_empty());
            assert_eq!(p.max_mu(), 0);
        }
    }

    #[test]
    fn reflexive_four_cycle_has_invertible_diagonal() {
        let p = build_pair_structure(&fixtures::h_c4r());
        assert!(p.is_invertible(0, 2).unwrap());
        assert!(p.is_invertible(2, 0).unwrap());
    }

    #[test]
    fn k_goodness() {
        let p = build_pair_structure(&fixtures::h_n());
        let m = p.m();
        let full = vec![vec![0, 1, 2, 3]; 3];
        assert!(p.is_k_good(&full, m));
        assert!(p.is_k_good(&[vec![2], vec![], vec![0]], 0));
        let (a, b) = p.processing_order()[m - 1];
        assert!(!p.is_k_good(&[vec![a, b]], m - 1));
        assert!(!p.is_k_good(&full, 0));
        assert!(p.is_k_good_masks(&[1 << a], 0));
        assert!(!p.is_k_good_masks(&[1 << a | 1 << b], m - 1));
    }
}
