//! Structural detectors and the four-way complexity classification.
//!
//! * circular N's, found by coloured reachability in the triple digraph `H⁺⁺`;
//! * pairs of independent edges and bicycles (the obstructions to
//!   first-order definability);
//! * digraph asteroidal triples (DATs), found by reachability in a
//!   double-avoidance triple digraph filtered by invertibility.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::{avoids, congruent, protects, validate_walk, Digraph, Direction, Vertex, Walk};
use crate::pairs::{build_pair_structure, Pair, PairStructure};

/// Arc colours of `H⁺⁺`. For a step `(a,b,c) -> (a',b',c')`:
/// green when both `ab'` and `bc'` are missing, blue when only `ab'` is
/// missing (so `bc'` is a faithful Z→Y edge), brown when only `bc'` is
/// missing (so `ab'` is a faithful X→Z edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Green,
    Blue,
    Brown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleArc {
    pub from: usize,
    pub to: usize,
    pub dir: Direction,
    pub colour: Colour,
}

/// `H⁺⁺` on `V(H)³`. Triple coordinates are ordered (X, Z, Y).
///
/// Besides the coloured arcs it keeps the junction steps: those where `ac'`
/// is missing but both `ab'` and `bc'` are present. Protection allows one
/// such step, at the index where the brown-free prefix hands over to the
/// blue-free suffix.
#[derive(Debug, Clone)]
pub struct ColouredTripleDigraph {
    n: usize,
    out: Vec<Vec<TripleArc>>,
    inc: Vec<Vec<TripleArc>>,
    junctions: Vec<Junction>,
}

/// A step with faithful X→Z and Z→Y edges at the same index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Junction {
    pub from: usize,
    pub to: usize,
    pub dir: Direction,
}

impl ColouredTripleDigraph {
    pub fn id(&self, (a, b, c): (Vertex, Vertex, Vertex)) -> usize {
        (a * self.n + b) * self.n + c
    }

    pub fn triple(&self, id: usize) -> (Vertex, Vertex, Vertex) {
        let n = self.n;
        (id / (n * n), id / n % n, id % n)
    }

    pub fn vertex_count(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_arcs(&self, id: usize) -> &[TripleArc] {
        &self.out[id]
    }

    pub fn arcs(&self) -> impl Iterator<Item = &TripleArc> {
        self.out.iter().flatten()
    }

    pub fn junctions(&self) -> &[Junction] {
        &self.junctions
    }

    pub fn find_arc(
        &self,
        from: (Vertex, Vertex, Vertex),
        to: (Vertex, Vertex, Vertex),
        dir: Direction,
    ) -> Option<TripleArc> {
        let to = self.id(to);
        self.out[self.id(from)]
            .iter()
            .copied()
            .find(|a| a.to == to && a.dir == dir)
    }
}

pub fn build_coloured_triple(h: &Digraph) -> ColouredTripleDigraph {
    let n = h.n();
    let size = n * n * n;
    let id = |a: Vertex, b: Vertex, c: Vertex| (a * n + b) * n + c;
    let mut out = vec![Vec::new(); size];
    let mut inc = vec![Vec::new(); size];
    let mut junctions = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let from = id(a, b, c);
                for dir in Direction::BOTH {
                    for &a2 in h.neighbors(a, dir) {
                        for &b2 in h.neighbors(b, dir) {
                            for &c2 in h.neighbors(c, dir) {
                                if h.edge(a, c2, dir) {
                                    continue;
                                }
                                let colour = match (h.edge(a, b2, dir), h.edge(b, c2, dir)) {
                                    (false, false) => Colour::Green,
                                    (false, true) => Colour::Blue,
                                    (true, false) => Colour::Brown,
                                    (true, true) => {
                                        junctions.push(Junction {
                                            from,
                                            to: id(a2, b2, c2),
                                            dir,
                                        });
                                        continue;
                                    }
                                };
                                let arc = TripleArc {
                                    from,
                                    to: id(a2, b2, c2),
                                    dir,
                                    colour,
                                };
                                out[from].push(arc);
                                inc[arc.to].push(arc);
                            }
                        }
                    }
                }
            }
        }
    }
    ColouredTripleDigraph { n, out, inc, junctions }
}

/// Three congruent walks: `X` closed at `x`, `Y` closed at `y`, and `Z` from
/// `y` to `x`, with `X` avoiding `Y` and `Z` protecting `Y` from `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircularNWitness {
    pub x: Walk,
    pub y: Walk,
    pub z: Walk,
}

impl CircularNWitness {
    /// Checks every defining condition against `h`.
    pub fn validate(&self, h: &Digraph) -> Result<(), String> {
        let CircularNWitness { x, y, z } = self;
        for (name, w) in [("X", x), ("Y", y), ("Z", z)] {
            if !validate_walk(h, w) {
                return Err(format!("{name} is not a walk of the template"));
            }
        }
        if !(congruent(x, y) && congruent(x, z)) {
            return Err("walks are not congruent".into());
        }
        if !x.is_closed() || !y.is_closed() {
            return Err("X and Y must be closed".into());
        }
        if x.start == y.start {
            return Err("X and Y must be based at distinct vertices".into());
        }
        if z.start != y.start || z.end() != x.start {
            return Err("Z must run from the base of Y to the base of X".into());
        }
        if !avoids(h, x, y).map_err(|e| e.to_string())? {
            return Err("X does not avoid Y".into());
        }
        if !protects(h, z, y, x).map_err(|e| e.to_string())? {
            return Err("Z does not protect Y from X".into());
        }
        Ok(())
    }
}

/// Finds a circular N in `h`, if there is one.
pub fn find_circular_n(h: &Digraph) -> Option<CircularNWitness> {
    find_circular_n_in(h, &build_coloured_triple(h))
}

/// Searches `H⁺⁺` for a walk from `(x,y,y)` to `(x,x,y)` in which no brown
/// arc precedes a blue arc, allowing a single junction step between the
/// brown-free and the blue-free part. Pairs are tried in lexicographic order
/// and the first success is returned.
pub fn find_circular_n_in(h: &Digraph, hpp: &ColouredTripleDigraph) -> Option<CircularNWitness> {
    let n = h.n();
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            if let Some(w) = circular_n_at(hpp, x, y) {
                if let Err(e) = w.validate(h) {
                    panic!("decoded circular N fails validation: {e}\n{w:?}");
                }
                return Some(w);
            }
        }
    }
    None
}

/// Breadth-first search in one direction over arcs whose colour is not
/// `banned`; returns, for each reached triple, the arc used to reach it.
fn coloured_search(
    hpp: &ColouredTripleDigraph,
    root: usize,
    banned: Colour,
    forward: bool,
) -> Vec<Option<Option<TripleArc>>> {
    let mut via = vec![None; hpp.vertex_count()];
    via[root] = Some(None);
    let mut queue = VecDeque::from([root]);
    while let Some(t) = queue.pop_front() {
        let arcs = if forward { &hpp.out[t] } else { &hpp.inc[t] };
        for &arc in arcs {
            if arc.colour == banned {
                continue;
            }
            let next = if forward { arc.to } else { arc.from };
            if via[next].is_none() {
                via[next] = Some(Some(arc));
                queue.push_back(next);
            }
        }
    }
    via
}

fn circular_n_at(hpp: &ColouredTripleDigraph, x: Vertex, y: Vertex) -> Option<CircularNWitness> {
    let start = hpp.id((x, y, y));
    let end = hpp.id((x, x, y));
    let before = coloured_search(hpp, start, Colour::Brown, true);
    let after = coloured_search(hpp, end, Colour::Blue, false);

    // Either the two halves meet at a triple, or a junction step joins them.
    let (left, middle, right) = match (0..hpp.vertex_count()).find(|&t| before[t].is_some() && after[t].is_some()) {
        Some(t) => (t, None, t),
        None => {
            let j = hpp
                .junctions
                .iter()
                .find(|j| before[j.from].is_some() && after[j.to].is_some())?;
            (j.from, Some((j.dir, j.to)), j.to)
        }
    };

    let mut steps = Vec::new();
    let mut t = left;
    while let Some(Some(arc)) = before[t] {
        steps.push((arc.dir, arc.to));
        t = arc.from;
    }
    steps.reverse();
    steps.extend(middle);
    let mut t = right;
    while let Some(Some(arc)) = after[t] {
        steps.push((arc.dir, arc.to));
        t = arc.to;
    }

    let walk = |coord: fn((Vertex, Vertex, Vertex)) -> Vertex| {
        Walk::new(
            coord(hpp.triple(start)),
            steps.iter().map(|&(dir, t)| (dir, coord(hpp.triple(t)))).collect(),
        )
    };
    Some(CircularNWitness {
        x: walk(|t| t.0),
        z: walk(|t| t.1),
        y: walk(|t| t.2),
    })
}

/// Two same-direction edges `ab`, `cd` such that neither `ad` nor `cb` is an
/// edge in that direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[(Vertex, Vertex); 2]", from = "[(Vertex, Vertex); 2]")]
pub struct IndependentEdges {
    pub first: (Vertex, Vertex),
    pub second: (Vertex, Vertex),
    pub dir: Direction,
}

impl From<IndependentEdges> for [(Vertex, Vertex); 2] {
    fn from(e: IndependentEdges) -> Self {
        [e.first, e.second]
    }
}

impl From<[(Vertex, Vertex); 2]> for IndependentEdges {
    fn from([first, second]: [(Vertex, Vertex); 2]) -> Self {
        IndependentEdges {
            first,
            second,
            dir: Direction::Forward,
        }
    }
}

impl IndependentEdges {
    pub fn validate(&self, h: &Digraph) -> bool {
        let ((a, b), (c, d)) = (self.first, self.second);
        h.edge(a, b, self.dir) && h.edge(c, d, self.dir) && !h.edge(a, d, self.dir) && !h.edge(c, b, self.dir)
    }
}

/// Forward independent pairs suffice: `ab, cd` are independent backward
/// edges exactly when the arcs `ba, dc` are independent forward edges.
pub fn has_independent_edges(h: &Digraph) -> Option<IndependentEdges> {
    let arcs = h.arcs();
    arcs.iter().find_map(|&(a, b)| {
        arcs.iter()
            .find(|&&(c, d)| !h.has_arc(a, d) && !h.has_arc(c, b))
            .map(|&second| IndependentEdges {
                first: (a, b),
                second,
                dir: Direction::Forward,
            })
    })
}

/// Closed all-forward walks `X`, `Y` with `X` avoiding `Y` and every
/// `y_i x_{i+1}` an arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicycleWitness {
    pub x: Walk,
    pub y: Walk,
}

impl BicycleWitness {
    pub fn validate(&self, h: &Digraph) -> bool {
        let (x, y) = (&self.x, &self.y);
        let forward = |w: &Walk| w.steps.iter().all(|s| s.0 == Direction::Forward);
        validate_walk(h, x)
            && validate_walk(h, y)
            && forward(x)
            && forward(y)
            && congruent(x, y)
            && !x.is_empty()
            && x.is_closed()
            && y.is_closed()
            && avoids(h, x, y).unwrap_or(false)
            && (0..x.len()).all(|i| h.has_arc(y.vertex(i), x.vertex(i + 1)))
    }
}

pub fn find_bicycle(h: &Digraph) -> Option<BicycleWitness> {
    let n = h.n();
    let id = |(x, y): Pair| x * n + y;
    let mut succ: Vec<Vec<Pair>> = vec![Vec::new(); n * n];
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            for &x2 in h.neighbors(x, Direction::Forward) {
                if !h.has_arc(y, x2) {
                    continue;
                }
                for &y2 in h.neighbors(y, Direction::Forward) {
                    if !h.has_arc(x, y2) {
                        succ[id((x, y))].push((x2, y2));
                    }
                }
            }
        }
    }

    // Shortest cycle through the first pair (in lexicographic order) that
    // lies on one.
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let root = (x, y);
            let mut parent: Vec<Option<Pair>> = vec![None; n * n];
            let mut queue = VecDeque::new();
            for &q in &succ[id(root)] {
                if parent[id(q)].is_none() {
                    parent[id(q)] = Some(root);
                    queue.push_back(q);
                }
            }
            while let Some(p) = queue.pop_front() {
                if p == root {
                    let mut cycle = vec![root];
                    let mut cur = parent[id(root)].unwrap();
                    while cur != root {
                        cycle.push(cur);
                        cur = parent[id(cur)].unwrap();
                    }
                    cycle.push(root);
                    cycle.reverse();
                    let xs: Vec<Vertex> = cycle.iter().map(|p| p.0).collect();
                    let ys: Vec<Vertex> = cycle.iter().map(|p| p.1).collect();
                    let witness = BicycleWitness {
                        x: Walk::forward(&xs),
                        y: Walk::forward(&ys),
                    };
                    assert!(witness.validate(h), "decoded bicycle fails validation: {witness:?}");
                    return Some(witness);
                }
                for &q in &succ[id(p)] {
                    if parent[id(q)].is_none() {
                        parent[id(q)] = Some(p);
                        queue.push_back(q);
                    }
                }
            }
        }
    }
    None
}

/// A digraph asteroidal triple `u, v, w` with the vertices `s(·)`, `b(·)`.
/// Index `i` of `s` and `b` belongs to `triple[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatWitness {
    pub triple: [Vertex; 3],
    pub s: [Vertex; 3],
    pub b: [Vertex; 3],
}

/// Searches for a DAT.
///
/// For a start triple `(x, y, z)` the double-avoidance triple digraph has an
/// arc to `(x', y', z')` when, in one direction, `xx'`, `yy'`, `zz'` are
/// edges while `xy'` and `xz'` are not; walks in it are congruent walks from
/// `x`, `y`, `z` whose first avoids the other two. A DAT exists when for
/// every choice of `x` among `u, v, w` some `(p, q, q)` with `(p, q)`
/// invertible is reachable from `(x, y, z)`.
pub fn find_dat(h: &Digraph) -> Option<DatWitness> {
    find_dat_with(h, &build_pair_structure(h))
}

pub fn find_dat_with(h: &Digraph, pairs: &PairStructure) -> Option<DatWitness> {
    let n = h.n();
    if n < 3 {
        return None;
    }
    let id = |a: Vertex, b: Vertex, c: Vertex| (a * n + b) * n + c;
    let mut succ = vec![Vec::new(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let from = id(a, b, c);
                for dir in Direction::BOTH {
                    for &a2 in h.neighbors(a, dir) {
                        for &b2 in h.neighbors(b, dir) {
                            if h.edge(a, b2, dir) {
                                continue;
                            }
                            for &c2 in h.neighbors(c, dir) {
                                if !h.edge(a, c2, dir) {
                                    succ[from].push(id(a2, b2, c2));
                                }
                            }
                        }
                    }
                }
                succ[from].sort_unstable();
                succ[from].dedup();
            }
        }
    }

    let mut memo: Vec<Option<Option<(Vertex, Vertex)>>> = vec![None; n * n * n];
    let mut target = |x: Vertex, y: Vertex, z: Vertex| -> Option<(Vertex, Vertex)> {
        let (y, z) = (y.min(z), y.max(z));
        *memo[id(x, y, z)].get_or_insert_with(|| {
            let mut seen = vec![false; n * n * n];
            let mut stack = vec![id(x, y, z)];
            seen[id(x, y, z)] = true;
            let mut best: Option<(Vertex, Vertex)> = None;
            while let Some(t) = stack.pop() {
                let (p, q, r) = (t / (n * n), t / n % n, t % n);
                if q == r && p != q && pairs.is_invertible(p, q).unwrap() {
                    best = Some(best.map_or((p, q), |b| b.min((p, q))));
                }
                for &s in &succ[t] {
                    if !seen[s] {
                        seen[s] = true;
                        stack.push(s);
                    }
                }
            }
            best
        })
    };

    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                let Some(su) = target(u, v, w) else { continue };
                let Some(sv) = target(v, u, w) else { continue };
                let Some(sw) = target(w, u, v) else { continue };
                return Some(DatWitness {
                    triple: [u, v, w],
                    s: [su.0, sv.0, sw.0],
                    b: [su.1, sv.1, sw.1],
                });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "NP-complete")]
    NpComplete,
    #[serde(rename = "P∩NL-hard")]
    PolyNlHard,
    #[serde(rename = "L∩L-hard")]
    LogspaceLHard,
    #[serde(rename = "FO-definable")]
    FoDefinable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NpComplete => "NP-complete",
            Verdict::PolyNlHard => "P∩NL-hard",
            Verdict::LogspaceLHard => "L∩L-hard",
            Verdict::FoDefinable => "FO-definable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub circular_n: Option<CircularNWitness>,
    pub dat: Option<DatWitness>,
    pub bicycle: Option<BicycleWitness>,
    pub independent_edges: Option<IndependentEdges>,
    pub hm_chain_length: Option<usize>,
}

impl Classification {
    pub fn has_dat(&self) -> bool {
        self.dat.is_some()
    }

    pub fn has_circular_n(&self) -> bool {
        self.circular_n.is_some()
    }

    pub fn has_bicycle(&self) -> bool {
        self.bicycle.is_some()
    }

    pub fn has_independent_edges(&self) -> bool {
        self.independent_edges.is_some()
    }
}

/// Length of the chain built for a circular-N-free template: the number of
/// vertices on a longest path of the condensation of `H⁺` (at least one).
pub fn chain_length(pairs: &PairStructure) -> usize {
    (pairs.max_mu() as usize).max(1)
}

pub fn classify(h: &Digraph) -> Classification {
    let pairs = build_pair_structure(h);
    classify_with(h, &pairs)
}

pub fn classify_with(h: &Digraph, pairs: &PairStructure) -> Classification {
    let circular_n = find_circular_n(h);
    let dat = find_dat_with(h, pairs);
    let bicycle = find_bicycle(h);
    let independent_edges = has_independent_edges(h);
    let verdict = if dat.is_some() {
        Verdict::NpComplete
    } else if circular_n.is_some() {
        Verdict::PolyNlHard
    } else if bicycle.is_some() || independent_edges.is_some() {
        Verdict::LogspaceLHard
    } else {
        Verdict::FoDefinable
    };
    let hm_chain_length = circular_n.is_none().then(|| chain_length(pairs));
    Classification {
        verdict,
        circular_n,
        dat,
        bicycle,
        independent_edges,
        hm_chain_length,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use Direction::Forward as F;

    #[test]
    fn coloured_triple_basics() {
        assert_eq!(build_coloured_triple(&Digraph::new(1, []).unwrap()).arc_count(), 0);
        assert_eq!(build_coloured_triple(&fixtures::h_arc()).arc_count(), 0);
        let hpp = build_coloured_triple(&fixtures::h_c4r());
        // 0->1, 1->2, 1->2 are edges, 0->2 is not; ab' = 0->2 missing and
        // bc' = 1->2 present, so the arc is blue.
        let arc = hpp.find_arc((0, 1, 1), (1, 2, 2), F).unwrap();
        assert_eq!(arc.colour, Colour::Blue);
        // 1->2, 2->2, 2->3 are edges, 1->3 is not, but both 1->2 and 2->3
        // are present: a junction step, not a coloured arc.
        assert!(hpp.find_arc((1, 2, 2), (2, 2, 3), F).is_none());
        let j = Junction {
            from: hpp.id((1, 2, 2)),
            to: hpp.id((2, 2, 3)),
            dir: F,
        };
        assert!(hpp.junctions().contains(&j));
    }

    #[test]
    fn colours_follow_missing_edges() {
        let h = fixtures::h_p4r();
        let hpp = build_coloured_triple(&h);
        for arc in hpp.arcs() {
            let (a, b, c) = hpp.triple(arc.from);
            let (a2, b2, c2) = hpp.triple(arc.to);
            let d = arc.dir;
            assert!(h.edge(a, a2, d) && h.edge(b, b2, d) && h.edge(c, c2, d));
            assert!(!h.edge(a, c2, d));
            let expected = match (h.edge(a, b2, d), h.edge(b, c2, d)) {
                (false, false) => Colour::Green,
                (false, true) => Colour::Blue,
                (true, false) => Colour::Brown,
                (true, true) => unreachable!(),
            };
            assert_eq!(arc.colour, expected);
        }
    }

    #[test]
    fn circular_n_on_fixtures() {
        let c4 = fixtures::h_c4r();
        let w = find_circular_n(&c4).expect("reflexive 4-cycle has a circular N");
        w.validate(&c4).unwrap();
        let known = CircularNWitness {
            x: Walk::forward(&[0, 1, 2, 3, 0]),
            y: Walk::forward(&[1, 2, 3, 0, 1]),
            z: Walk::forward(&[1, 2, 2, 3, 0]),
        };
        known.validate(&c4).unwrap();

        assert!(find_circular_n(&fixtures::h_arc()).is_none());
        let p4 = fixtures::h_p4r();
        find_circular_n(&p4).unwrap().validate(&p4).unwrap();
    }

    #[test]
    fn witness_validation_catches_broken_walks() {
        let c4 = fixtures::h_c4r();
        let mut w = find_circular_n(&c4).unwrap();
        std::mem::swap(&mut w.x, &mut w.y);
        assert!(w.validate(&c4).is_err());
    }

    #[test]
    fn independent_edges() {
        assert!(has_independent_edges(&fixtures::h_arc()).is_none());
        let two = Digraph::new(4, [(0, 1), (2, 3)]).unwrap();
        let e = has_independent_edges(&two).unwrap();
        assert_eq!((e.first, e.second), ((0, 1), (2, 3)));
        assert!(e.validate(&two));
        assert!(has_independent_edges(&fixtures::complete_reflexive(3)).is_none());
    }

    #[test]
    fn bicycles() {
        assert!(find_bicycle(&fixtures::h_arc()).is_none());
        let c4 = fixtures::h_c4r();
        let b = find_bicycle(&c4).expect("reflexive 4-cycle has a bicycle");
        assert!(b.validate(&c4));
    }

    #[test]
    fn dats() {
        assert!(find_dat(&fixtures::h_arc()).is_none());
        assert!(find_dat(&fixtures::h_p4r()).is_none());
        for mask in 0..16u64 {
            assert!(find_dat(&Digraph::from_mask(2, mask)).is_none());
        }
    }

    #[test]
    fn classification_of_fixtures() {
        let c = classify(&fixtures::h_arc());
        assert_eq!(c.verdict, Verdict::FoDefinable);
        assert_eq!(c.hm_chain_length, Some(1));

        let c = classify(&fixtures::h_p4r());
        assert_eq!(c.verdict, Verdict::PolyNlHard);
        assert!(c.has_circular_n() && !c.has_dat());
        assert_eq!(c.hm_chain_length, None);

        let c = classify(&fixtures::h_c4r());
        assert!(c.has_circular_n());
        assert!(matches!(c.verdict, Verdict::NpComplete | Verdict::PolyNlHard));

        let empty = classify(&Digraph::new(3, []).unwrap());
        assert_eq!(empty.verdict, Verdict::FoDefinable);
    }

    #[test]
    fn classification_json_round_trips() {
        for h in [fixtures::h_arc(), fixtures::h_c4r(), fixtures::h_p4r(), fixtures::h_n()] {
            let c = classify(&h);
            let text = serde_json::to_string(&c).unwrap();
            let back: Classification = serde_json::from_str(&text).unwrap();
            assert_eq!(back, c);
        }
    }
}
