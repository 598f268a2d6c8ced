//! Hagemann–Mitschke chains of conservative ternary polymorphisms.
//!
//! For a template without a circular N the chain `f_1 … f_k` is read off the
//! values `μ` of the pair digraph and the `i`-distinguisher relation, with
//! `k` the number of vertices on a longest path of the condensation of `H⁺`.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

use crate::detect::{chain_length, find_circular_n};
use crate::digraph::{Digraph, Direction, Vertex};
use crate::error::{Error, Result};
use crate::pairs::{build_pair_structure, PairStructure};

/// A total ternary operation on `0..n`, stored as an `n³` array indexed by
/// `(a * n + b) * n + c`. Every value is one of its arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryOpTable {
    n: usize,
    values: Vec<Vertex>,
}

impl TernaryOpTable {
    pub fn new(n: usize, values: Vec<Vertex>) -> Result<TernaryOpTable> {
        if values.len() != n * n * n {
            return Err(Error::MixedDomains);
        }
        let table = TernaryOpTable { n, values };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = table.get(a, b, c);
                    if v != a && v != b && v != c {
                        return Err(Error::NotConservative(a, b, c));
                    }
                }
            }
        }
        Ok(table)
    }

    pub fn from_fn(n: usize, f: impl Fn(Vertex, Vertex, Vertex) -> Vertex) -> Result<TernaryOpTable> {
        let mut values = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    values.push(f(a, b, c));
                }
            }
        }
        TernaryOpTable::new(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: Vertex, b: Vertex, c: Vertex) -> Vertex {
        self.values[(a * self.n + b) * self.n + c]
    }

    pub fn values(&self) -> &[Vertex] {
        &self.values
    }

    /// Overwrites one cell without the conservativity check. Intended for
    /// fault-injection tests.
    pub fn set_unchecked(&mut self, a: Vertex, b: Vertex, c: Vertex, v: Vertex) {
        let n = self.n;
        self.values[(a * n + b) * n + c] = v;
    }
}

/// The operations `f_1 … f_k`, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HmChain {
    pub ops: Vec<TernaryOpTable>,
}

impl HmChain {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

/// For every triple `(a, b, c)`, the largest `μ(x, y)` over triples
/// `(x, y, y)` with `x != y` reachable from `(a, b, c)` in the digraph whose
/// arcs `(a,b,c) -> (a',b',c')` have, in one direction, `aa'`, `bb'`, `cc'`
/// as edges and `ba'`, `ca'` as non-edges. `a` is an `i`-distinguisher of
/// `a, b, c` exactly when this value is at least `i`.
#[derive(Debug, Clone)]
pub struct Distinguishers {
    n: usize,
    best: Vec<u32>,
}

impl Distinguishers {
    pub fn new(h: &Digraph, pairs: &PairStructure) -> Distinguishers {
        let n = h.n();
        let size = n * n * n;
        let id = |a: Vertex, b: Vertex, c: Vertex| (a * n + b) * n + c;
        let mut graph = DiGraph::<(), ()>::with_capacity(size, 0);
        let nodes: Vec<NodeIndex> = (0..size).map(|_| graph.add_node(())).collect();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut targets = Vec::new();
                    for dir in Direction::BOTH {
                        for &a2 in h.neighbors(a, dir) {
                            if h.edge(b, a2, dir) || h.edge(c, a2, dir) {
                                continue;
                            }
                            for &b2 in h.neighbors(b, dir) {
                                for &c2 in h.neighbors(c, dir) {
                                    targets.push(id(a2, b2, c2));
                                }
                            }
                        }
                    }
                    targets.sort_unstable();
                    targets.dedup();
                    for t in targets {
                        graph.add_edge(nodes[id(a, b, c)], nodes[t], ());
                    }
                }
            }
        }

        let own = |t: usize| {
            let (x, y, z) = (t / (n * n), t / n % n, t % n);
            if y == z {
                pairs.mu(x, y)
            } else {
                0
            }
        };
        // tarjan_scc yields components sinks-first, so successors are final
        // by the time a component is processed.
        let mut best = vec![0u32; size];
        for scc in tarjan_scc(&graph) {
            let mut value = 0;
            for &v in &scc {
                value = value.max(own(v.index()));
                for w in graph.neighbors(v) {
                    value = value.max(best[w.index()]);
                }
            }
            for &v in &scc {
                best[v.index()] = value;
            }
        }
        Distinguishers { n, best }
    }

    pub fn reach_mu(&self, a: Vertex, b: Vertex, c: Vertex) -> u32 {
        self.best[(a * self.n + b) * self.n + c]
    }

    /// `a = d_i(a, b, c)`.
    pub fn is_distinguisher(&self, i: usize, a: Vertex, b: Vertex, c: Vertex) -> Result<bool> {
        if i < 1 {
            return Err(Error::InvalidLevel(i));
        }
        Ok(self.reach_mu(a, b, c) as usize >= i)
    }
}

pub fn is_distinguisher(h: &Digraph, pairs: &PairStructure, i: usize, a: Vertex, b: Vertex, c: Vertex) -> Result<bool> {
    if i < 1 {
        return Err(Error::InvalidLevel(i));
    }
    for v in [a, b, c] {
        h.check_vertex(v)?;
    }
    Distinguishers::new(h, pairs).is_distinguisher(i, a, b, c)
}

/// Builds the chain when `h` has no circular N; `None` otherwise.
pub fn build_hm_chain(h: &Digraph) -> Option<HmChain> {
    if find_circular_n(h).is_some() {
        return None;
    }
    Some(construct_hm_chain(h, &build_pair_structure(h)))
}

/// Fills the case table regardless of whether `h` has a circular N. On a
/// template with a circular N the result is guaranteed to fail verification.
pub fn construct_hm_chain(h: &Digraph, pairs: &PairStructure) -> HmChain {
    let n = h.n();
    let k = chain_length(pairs);
    let dist = Distinguishers::new(h, pairs);
    let mu = |x, y| pairs.mu(x, y) as usize;
    let ops = (1..=k)
        .map(|i| {
            TernaryOpTable::from_fn(n, |a, b, c| {
                let d = dist.reach_mu(a, b, c) as usize >= i;
                let (m_ab, m_ac, m_bc) = (mu(a, b), mu(a, c), mu(b, c));
                if m_bc > i {
                    if m_ab < i {
                        b
                    } else {
                        a
                    }
                } else if m_bc == i {
                    if m_ac < i || (m_ac == i && !d) {
                        c
                    } else {
                        a
                    }
                } else if m_ac < i {
                    c
                } else {
                    a
                }
            })
            .expect("case table only returns arguments")
        })
        .collect();
    HmChain { ops }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `f_1(x, y, y) = x`
    First,
    /// `f_i(x, x, y) = f_{i+1}(x, y, y)`
    Link,
    /// `f_k(x, x, y) = y`
    Last,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdentityViolation {
    pub identity: Identity,
    /// 1-based operation index the identity is anchored at.
    pub i: usize,
    pub x: Vertex,
    pub y: Vertex,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub violations: Vec<IdentityViolation>,
}

impl IdentityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_hm_identities(chain: &HmChain) -> Result<IdentityReport> {
    let ops = &chain.ops;
    let first = ops.first().ok_or(Error::EmptyChain)?;
    let n = first.n();
    if ops.iter().any(|f| f.n() != n) {
        return Err(Error::MixedDomains);
    }
    let k = ops.len();
    let mut violations = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if first.get(x, y, y) != x {
                violations.push(IdentityViolation {
                    identity: Identity::First,
                    i: 1,
                    x,
                    y,
                });
            }
            for i in 1..k {
                if ops[i - 1].get(x, x, y) != ops[i].get(x, y, y) {
                    violations.push(IdentityViolation {
                        identity: Identity::Link,
                        i,
                        x,
                        y,
                    });
                }
            }
            if ops[k - 1].get(x, x, y) != y {
                violations.push(IdentityViolation {
                    identity: Identity::Last,
                    i: k,
                    x,
                    y,
                });
            }
        }
    }
    violations.sort();
    Ok(IdentityReport { violations })
}

/// Three arcs `aa'`, `bb'`, `cc'` of `H` whose image `f(a,b,c) f(a',b',c')`
/// is not an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolymorphismViolation {
    pub arcs: [(Vertex, Vertex); 3],
    pub image: (Vertex, Vertex),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolymorphismReport {
    pub violations: Vec<PolymorphismViolation>,
}

impl PolymorphismReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_polymorphism(h: &Digraph, f: &TernaryOpTable) -> Result<PolymorphismReport> {
    if f.n() != h.n() {
        return Err(Error::MixedDomains);
    }
    let arcs = h.arcs();
    let mut violations = Vec::new();
    for &(a, a2) in arcs {
        for &(b, b2) in arcs {
            for &(c, c2) in arcs {
                let image = (f.get(a, b, c), f.get(a2, b2, c2));
                if !h.has_arc(image.0, image.1) {
                    violations.push(PolymorphismViolation {
                        arcs: [(a, a2), (b, b2), (c, c2)],
                        image,
                    });
                }
            }
        }
    }
    Ok(PolymorphismReport { violations })
}

/// Identities plus the polymorphism property of every member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainVerification {
    pub identities: IdentityReport,
    pub polymorphism: Vec<PolymorphismReport>,
}

impl ChainVerification {
    pub fn is_clean(&self) -> bool {
        self.identities.is_clean() && self.polymorphism.iter().all(PolymorphismReport::is_clean)
    }
}

pub fn verify_chain(h: &Digraph, chain: &HmChain) -> Result<ChainVerification> {
    Ok(ChainVerification {
        identities: verify_hm_identities(chain)?,
        polymorphism: chain
            .ops
            .iter()
            .map(|f| verify_polymorphism(h, f))
            .collect::<Result<_>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_arc_gets_a_maltsev_style_operation() {
        let h = fixtures::h_arc();
        let chain = build_hm_chain(&h).unwrap();
        assert_eq!(chain.len(), 1);
        let f = &chain.ops[0];
        for (x, y) in [(0, 1), (1, 0)] {
            assert_eq!(f.get(x, y, y), x);
            assert_eq!(f.get(x, x, y), y);
        }
        assert!(verify_hm_identities(&chain).unwrap().is_clean());
        assert!(verify_polymorphism(&h, f).unwrap().is_clean());
    }

    #[test]
    fn circular_n_templates_get_no_chain() {
        assert!(build_hm_chain(&fixtures::h_c4r()).is_none());
        assert!(build_hm_chain(&fixtures::h_p4r()).is_none());
        for h in [fixtures::h_c4r(), fixtures::h_p4r()] {
            let forced = construct_hm_chain(&h, &build_pair_structure(&h));
            assert!(!verify_chain(&h, &forced).unwrap().is_clean());
        }
    }

    #[test]
    fn one_vertex_template() {
        let h = Digraph::new(1, [(0, 0)]).unwrap();
        let chain = build_hm_chain(&h).unwrap();
        assert!(!chain.is_empty());
        assert!(verify_chain(&h, &chain).unwrap().is_clean());
    }

    #[test]
    fn first_projection_breaks_the_last_identity() {
        let chain = HmChain {
            ops: vec![TernaryOpTable::from_fn(2, |a, _, _| a).unwrap()],
        };
        let report = verify_hm_identities(&chain).unwrap();
        assert!(report.violations.contains(&IdentityViolation {
            identity: Identity::Last,
            i: 1,
            x: 0,
            y: 1
        }));
        assert!(
            verify_polymorphism(&fixtures::h_c4r(), &TernaryOpTable::from_fn(4, |a, _, _| a).unwrap())
                .unwrap()
                .is_clean()
        );
    }

    #[test]
    fn every_conservative_operation_preserves_a_single_arc() {
        // The only arc triple of 0 -> 1 is (0,1)³, whose image is forced.
        let h = fixtures::h_arc();
        let swap = TernaryOpTable::from_fn(2, |a, b, c| if (a, b, c) == (0, 1, 1) { 1 } else { a }).unwrap();
        assert!(verify_polymorphism(&h, &swap).unwrap().is_clean());
    }

    #[test]
    fn non_polymorphism_is_reported() {
        // Symmetric edge without loops; max(0,1,1) = max(1,0,0) = 1.
        let h = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let max = TernaryOpTable::from_fn(2, |a, b, c| a.max(b).max(c)).unwrap();
        let report = verify_polymorphism(&h, &max).unwrap();
        assert!(report.violations.contains(&PolymorphismViolation {
            arcs: [(0, 1), (1, 0), (1, 0)],
            image: (1, 1),
        }));
        assert!(report.violations.iter().all(|v| !h.has_arc(v.image.0, v.image.1)));
    }

    #[test]
    fn non_conservative_tables_are_rejected() {
        assert_eq!(
            TernaryOpTable::from_fn(3, |a, _, _| (a + 1) % 3),
            Err(Error::NotConservative(0, 0, 0))
        );
    }

    #[test]
    fn distinguisher_level_zero_is_rejected() {
        let h = fixtures::h_arc();
        let p = build_pair_structure(&h);
        assert_eq!(is_distinguisher(&h, &p, 0, 0, 0, 1), Err(Error::InvalidLevel(0)));
        assert!(!is_distinguisher(&h, &p, 1, 0, 0, 1).unwrap());
        assert!(is_distinguisher(&h, &p, 1, 0, 1, 1).unwrap());
    }

    #[test]
    fn empty_chain_is_an_error() {
        assert_eq!(verify_hm_identities(&HmChain { ops: vec![] }), Err(Error::EmptyChain));
    }
}
