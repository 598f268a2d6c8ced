//! Deciding `LHOM(H)` instances.
//!
//! [`Solver`] implements the transducer chain: for `k = m, m-1, …, 1` the
//! transducer `T(a_k, b_k)` removes one of `a_k`, `b_k` from every list that
//! contains both, preserving satisfiability; afterwards every list has at
//! most one element and a direct check finishes the job. Each transducer
//! decides which element to drop with the ab-test, which projects a weak
//! component of the triple digraph `Tr(G, L)` to a smaller instance and
//! solves it recursively with strictly smaller lists.
//!
//! Weak connectivity in `Tr(G, L)` is computed with an ordinary union-find
//! rather than a space-bounded undirected-reachability routine; only the
//! answers matter here, not the memory footprint.
//!
//! [`oracle_solve`] is an independent exact solver (arc consistency plus
//! backtracking) used to validate the transducer chain.

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::detect::find_circular_n;
use crate::digraph::{Digraph, Vertex};
use crate::error::{Error, Result};
use crate::pairs::{build_pair_structure, PairStructure};

/// A digraph `G` together with a list `L(v) ⊆ V(H)` for each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub g: Digraph,
    pub lists: Vec<Vec<Vertex>>,
}

impl Instance {
    /// Builds an instance, sorting each list. Fails when the number of lists
    /// differs from the number of vertices of `g` or a list repeats a vertex.
    pub fn new(g: Digraph, lists: Vec<Vec<Vertex>>) -> Result<Instance> {
        let inst = Instance {
            g,
            lists: lists
                .into_iter()
                .map(|mut l| {
                    l.sort_unstable();
                    l
                })
                .collect(),
        };
        inst.check_shape()?;
        Ok(inst)
    }

    /// Every vertex of `g` gets the full list `0..n_h`.
    pub fn with_full_lists(g: Digraph, n_h: usize) -> Instance {
        let lists = vec![(0..n_h).collect(); g.n()];
        Instance { g, lists }
    }

    fn check_shape(&self) -> Result<()> {
        if self.lists.len() != self.g.n() {
            return Err(Error::InvalidInstance(format!(
                "{} lists for {} vertices",
                self.lists.len(),
                self.g.n()
            )));
        }
        for (v, list) in self.lists.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInstance(format!("list of vertex {v} repeats an element")));
            }
        }
        Ok(())
    }

    /// Checks the shape and that every list member is a vertex of `h`.
    pub fn validate(&self, h: &Digraph) -> Result<()> {
        self.check_shape()?;
        for (v, list) in self.lists.iter().enumerate() {
            if let Some(&c) = list.iter().find(|&&c| c >= h.n()) {
                return Err(Error::InvalidInstance(format!(
                    "list of vertex {v} contains {c}, but the template has {} vertices",
                    h.n()
                )));
            }
        }
        Ok(())
    }

    /// A copy in which the list of `v` is replaced by `list`.
    pub fn with_list(&self, v: Vertex, list: Vec<Vertex>) -> Instance {
        let mut inst = self.clone();
        inst.lists[v] = list;
        inst
    }

    fn masks(&self) -> Vec<u64> {
        self.lists.iter().map(|l| list_to_mask(l)).collect()
    }

    fn from_masks(g: Digraph, masks: &[u64]) -> Instance {
        let lists = masks.iter().map(|&m| mask_to_list(m)).collect();
        Instance { g, lists }
    }
}

pub fn list_to_mask(list: &[Vertex]) -> u64 {
    list.iter().fold(0, |m, &c| m | 1 << c)
}

pub fn mask_to_list(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|&c| mask >> c & 1 == 1).collect()
}

/// A map `V(G) -> V(H)`, indexed by the vertices of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Homomorphism(pub Vec<Vertex>);

impl Homomorphism {
    /// Checks that the map respects the lists and sends arcs to arcs.
    pub fn validate(&self, h: &Digraph, inst: &Instance) -> Result<(), String> {
        let f = &self.0;
        if f.len() != inst.g.n() {
            return Err(format!("map has {} entries for {} vertices", f.len(), inst.g.n()));
        }
        for (v, &image) in f.iter().enumerate() {
            if !inst.lists[v].contains(&image) {
                return Err(format!("vertex {v} is mapped to {image}, outside its list"));
            }
        }
        for &(u, v) in inst.g.arcs() {
            if !h.has_arc(f[u], f[v]) {
                return Err(format!("arc {u} -> {v} is mapped to the non-arc {} -> {}", f[u], f[v]));
            }
        }
        Ok(())
    }
}

/// Out- and in-neighbourhoods of the template as bit masks.
#[derive(Debug, Clone)]
struct Masks {
    out: Vec<u64>,
    inc: Vec<u64>,
}

impl Masks {
    fn new(h: &Digraph) -> Masks {
        let mut out = vec![0; h.n()];
        let mut inc = vec![0; h.n()];
        for &(u, v) in h.arcs() {
            out[u] |= 1 << v;
            inc[v] |= 1 << u;
        }
        Masks { out, inc }
    }
}

fn check_template_size(h: &Digraph) -> Result<()> {
    if h.n() > 64 {
        return Err(Error::TemplateTooLarge(h.n()));
    }
    Ok(())
}

/// Exact solver by arc consistency and backtracking, independent of the
/// transducer chain. Vertices of `G` are assigned in increasing order and
/// values are tried in increasing order, so the result is the
/// lexicographically first list homomorphism.
pub fn oracle_solve(h: &Digraph, inst: &Instance) -> Result<Option<Homomorphism>> {
    check_template_size(h)?;
    inst.validate(h)?;
    let masks = Masks::new(h);
    let loops = (0..h.n()).filter(|&c| h.has_arc(c, c)).fold(0u64, |m, c| m | 1 << c);
    let mut domains = inst.masks();
    for &(u, v) in inst.g.arcs() {
        if u == v {
            domains[u] &= loops;
        }
    }
    let oracle = Oracle {
        g: &inst.g,
        masks: &masks,
    };
    if !oracle.propagate(&mut domains) {
        return Ok(None);
    }
    Ok(oracle
        .search(domains, 0)
        .map(|d| Homomorphism(d.iter().map(|m| m.trailing_zeros() as Vertex).collect())))
}

struct Oracle<'a> {
    g: &'a Digraph,
    masks: &'a Masks,
}

impl Oracle<'_> {
    /// Values of `D(u)` with a neighbour in `D(v)` along the arc `u -> v`.
    fn supported(&self, du: u64, dv: u64, out: bool) -> u64 {
        let nbrs = if out { &self.masks.out } else { &self.masks.inc };
        let mut keep = 0;
        let mut rest = du;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if nbrs[c] & dv != 0 {
                keep |= 1 << c;
            }
        }
        keep
    }

    /// AC-3 over the arcs of `G`; false when some domain empties.
    fn propagate(&self, d: &mut [u64]) -> bool {
        let arcs = self.g.arcs();
        let mut changed = true;
        while changed {
            changed = false;
            for &(u, v) in arcs {
                if u == v {
                    continue;
                }
                let du = self.supported(d[u], d[v], true);
                let dv = self.supported(d[v], d[u], false);
                if du != d[u] || dv != d[v] {
                    d[u] = du;
                    d[v] = dv;
                    changed = true;
                }
                if du == 0 || dv == 0 {
                    return false;
                }
            }
        }
        d.iter().all(|&m| m != 0)
    }

    fn search(&self, d: Vec<u64>, from: usize) -> Option<Vec<u64>> {
        let Some(v) = (from..d.len()).find(|&v| d[v].count_ones() > 1) else {
            return Some(d);
        };
        let mut rest = d[v];
        while rest != 0 {
            let c = rest.trailing_zeros();
            rest &= rest - 1;
            let mut next = d.clone();
            next[v] = 1 << c;
            if self.propagate(&mut next) {
                if let Some(found) = self.search(next, v + 1) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// The triple digraph `Tr(G, L)` on triples `(y, c, d)` with `c, d ∈ L(y)`
/// distinct. There is an arc `(y,c,d) -> (y',c',d')` when `yy'` is an arc of
/// `G`, `cc'` and `dd'` are arcs of `H`, and neither `cd'` nor `dc'` is.
#[derive(Debug)]
pub struct TripleDigraph {
    n_h: usize,
    present: Vec<bool>,
    arcs: Vec<(usize, usize)>,
    components: UnionFind<usize>,
}

pub type Triple = (Vertex, Vertex, Vertex);

impl TripleDigraph {
    fn build(h: &Digraph, g: &Digraph, lists: &[u64]) -> TripleDigraph {
        let n_h = h.n();
        let id = |(y, c, d): Triple| (y * n_h + c) * n_h + d;
        let size = g.n() * n_h * n_h;
        let mut present = vec![false; size];
        for (y, &l) in lists.iter().enumerate() {
            for c in mask_to_list(l) {
                for d in mask_to_list(l & !(1 << c)) {
                    present[id((y, c, d))] = true;
                }
            }
        }
        let masks = Masks::new(h);
        let mut arcs = Vec::new();
        let mut components = UnionFind::new(size);
        for &(y, y2) in g.arcs() {
            for c in mask_to_list(lists[y]) {
                for d in mask_to_list(lists[y] & !(1 << c)) {
                    // c' must follow c but not d; d' must follow d but not c.
                    let cs = masks.out[c] & !masks.out[d] & lists[y2];
                    let ds = masks.out[d] & !masks.out[c] & lists[y2];
                    for c2 in mask_to_list(cs) {
                        for d2 in mask_to_list(ds) {
                            let (from, to) = (id((y, c, d)), id((y2, c2, d2)));
                            arcs.push((from, to));
                            components.union(from, to);
                        }
                    }
                }
            }
        }
        TripleDigraph {
            n_h,
            present,
            arcs,
            components,
        }
    }

    fn id(&self, (y, c, d): Triple) -> usize {
        (y * self.n_h + c) * self.n_h + d
    }

    pub fn triple(&self, id: usize) -> Triple {
        let n = self.n_h;
        (id / (n * n), id / n % n, id % n)
    }

    pub fn contains(&self, t: Triple) -> bool {
        let (_, c, d) = t;
        c < self.n_h && d < self.n_h && self.present.get(self.id(t)).copied().unwrap_or(false)
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Triple> + '_ {
        (0..self.present.len())
            .filter(|&i| self.present[i])
            .map(|i| self.triple(i))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Triple, Triple)> + '_ {
        self.arcs.iter().map(|&(u, v)| (self.triple(u), self.triple(v)))
    }

    /// Whether both triples are present and lie in the same weak component.
    pub fn connected(&self, s: Triple, t: Triple) -> bool {
        self.contains(s) && self.contains(t) && self.components.equiv(self.id(s), self.id(t))
    }

    /// The weak component of `t`, in increasing order.
    pub fn component(&self, t: Triple) -> Vec<Triple> {
        if !self.contains(t) {
            return Vec::new();
        }
        let root = self.components.find(self.id(t));
        (0..self.present.len())
            .filter(|&i| self.present[i] && self.components.find(i) == root)
            .map(|i| self.triple(i))
            .collect()
    }
}

pub fn build_triple_digraph(h: &Digraph, inst: &Instance) -> Result<TripleDigraph> {
    check_template_size(h)?;
    inst.validate(h)?;
    Ok(TripleDigraph::build(h, &inst.g, &inst.masks()))
}

/// One non-trivial application of a transducer `T(a, b)`.
#[derive(Debug)]
pub struct TransducerEvent<'a> {
    /// 0 for the top-level chain, `d + 1` inside an ab-test at depth `d`.
    pub depth: usize,
    pub k: usize,
    pub a: Vertex,
    pub b: Vertex,
    pub g: &'a Digraph,
    pub before: &'a [u64],
    pub after: &'a [u64],
}

impl TransducerEvent<'_> {
    pub fn input(&self) -> Instance {
        Instance::from_masks(self.g.clone(), self.before)
    }

    pub fn output(&self) -> Instance {
        Instance::from_masks(self.g.clone(), self.after)
    }
}

/// One ab-test: the projected instance `(G'', L'')` and the verdict of the
/// recursive solve.
#[derive(Debug)]
pub struct AbTestEvent<'a> {
    pub depth: usize,
    pub x: Vertex,
    pub a: Vertex,
    pub b: Vertex,
    pub instance: &'a Instance,
    /// Position of `x` in the projected instance.
    pub x_projected: Vertex,
    pub accepted: bool,
}

/// Hooks into the solver, used by the test suites to check every step.
pub trait Observer {
    fn transducer(&mut self, _event: &TransducerEvent<'_>) {}
    fn ab_test(&mut self, _event: &AbTestEvent<'_>) {}
}

impl Observer for () {}

/// The transducer-chain solver for a fixed template.
#[derive(Debug, Clone)]
pub struct Solver<'h> {
    h: &'h Digraph,
    pairs: PairStructure,
    masks: Masks,
}

impl<'h> Solver<'h> {
    /// Refuses templates with a circular N: the transducers are only sound
    /// without one.
    pub fn new(h: &'h Digraph) -> Result<Solver<'h>> {
        if find_circular_n(h).is_some() {
            return Err(Error::CircularNPresent);
        }
        Solver::new_unchecked(h)
    }

    /// Skips the circular-N check; answers then carry no guarantee.
    pub fn new_unchecked(h: &'h Digraph) -> Result<Solver<'h>> {
        check_template_size(h)?;
        Ok(Solver {
            h,
            pairs: build_pair_structure(h),
            masks: Masks::new(h),
        })
    }

    pub fn pairs(&self) -> &PairStructure {
        &self.pairs
    }

    pub fn solve(&self, inst: &Instance) -> Result<Option<Homomorphism>> {
        self.solve_observed(inst, &mut ())
    }

    pub fn solve_observed(&self, inst: &Instance, obs: &mut dyn Observer) -> Result<Option<Homomorphism>> {
        inst.validate(self.h)?;
        let Some(lists) = self.chain(&inst.g, inst.masks(), 0, obs)? else {
            return Ok(None);
        };
        let f = Homomorphism(lists.iter().map(|m| m.trailing_zeros() as Vertex).collect());
        f.validate(self.h, inst)
            .map_err(|e| Error::Internal(format!("accepted map is not a list homomorphism: {e}")))?;
        Ok(Some(f))
    }

    /// Applies `T(a_k, b_k)` to an instance whose lists are `k`-good.
    pub fn apply_transducer(&self, inst: &Instance, k: usize) -> Result<Instance> {
        inst.validate(self.h)?;
        if k == 0 || k > self.pairs.m() {
            return Err(Error::InvalidInstance(format!(
                "transducer index {k} outside 1..={}",
                self.pairs.m()
            )));
        }
        let after = self.transducer(&inst.g, inst.masks(), k, 0, &mut ())?;
        Ok(Instance::from_masks(inst.g.clone(), &after))
    }

    /// Runs the ab-test for `(x, a, b)` against `Tr(G, L)`.
    pub fn ab_test(&self, inst: &Instance, x: Vertex, a: Vertex, b: Vertex) -> Result<bool> {
        inst.validate(self.h)?;
        inst.g.check_vertex(x)?;
        if a == b || !inst.lists[x].contains(&a) || !inst.lists[x].contains(&b) {
            return Err(Error::InvalidInstance(format!(
                "the ab-test needs distinct a, b in the list of {x}"
            )));
        }
        let lists = inst.masks();
        let tr = TripleDigraph::build(self.h, &inst.g, &lists);
        self.run_ab_test(&inst.g, &lists, &tr, x, a, b, 0, &mut ())
    }

    /// The chain `T(a_m, b_m), …, T(a_1, b_1)` followed by the final check.
    /// Returns the singleton lists on acceptance.
    fn chain(
        &self,
        g: &Digraph,
        mut lists: Vec<u64>,
        depth: usize,
        obs: &mut dyn Observer,
    ) -> Result<Option<Vec<u64>>> {
        if depth > self.h.n() {
            return Err(Error::Internal(format!(
                "recursion depth {depth} exceeds the template size"
            )));
        }
        if lists.contains(&0) {
            return Ok(None);
        }
        for k in (1..=self.pairs.m()).rev() {
            lists = self.transducer(g, lists, k, depth, obs)?;
        }
        if let Some(v) = lists.iter().position(|m| m.count_ones() > 1) {
            return Err(Error::Internal(format!(
                "list of vertex {v} still has several elements after the chain"
            )));
        }
        if lists.contains(&0) {
            return Ok(None);
        }
        let ok = g.arcs().iter().all(|&(u, v)| {
            self.h
                .has_arc(lists[u].trailing_zeros() as Vertex, lists[v].trailing_zeros() as Vertex)
        });
        Ok(ok.then_some(lists))
    }

    fn transducer(
        &self,
        g: &Digraph,
        lists: Vec<u64>,
        k: usize,
        depth: usize,
        obs: &mut dyn Observer,
    ) -> Result<Vec<u64>> {
        if !self.pairs.is_k_good_masks(&lists, k) {
            return Err(Error::NotKGood { k });
        }
        let (a, b) = self.pairs.processing_order()[k - 1];
        let both = 1u64 << a | 1 << b;
        let relevant: Vec<Vertex> = (0..g.n()).filter(|&v| lists[v] & both == both).collect();
        if relevant.is_empty() {
            return Ok(lists);
        }

        let tr = TripleDigraph::build(self.h, g, &lists);
        // Some c makes (y, c, a) weakly connected to (r, a, b).
        let joins = |y: Vertex, r: Vertex| {
            mask_to_list(lists[y] & !(1 << a))
                .into_iter()
                .any(|c| tr.connected((y, c, a), (r, a, b)))
        };
        let mut out = lists.clone();
        let mut representatives: Vec<Vertex> = Vec::new();
        for (i, &x) in relevant.iter().enumerate() {
            if representatives.iter().any(|&r| joins(x, r)) {
                continue;
            }
            if self.run_ab_test(g, &lists, &tr, x, a, b, depth, obs)? {
                out[x] &= !(1 << b);
                for &y in &relevant[i + 1..] {
                    if joins(y, x) && !representatives.iter().any(|&r| joins(y, r)) {
                        out[y] &= !(1 << a);
                    }
                }
                representatives.push(x);
            } else {
                out[x] &= !(1 << a);
            }
        }

        for v in 0..g.n() {
            let removed = lists[v] & !out[v];
            let expected_one = relevant.binary_search(&v).is_ok();
            if (expected_one && (removed & !both != 0 || removed.count_ones() != 1)) || (!expected_one && removed != 0)
            {
                return Err(Error::Internal(format!(
                    "transducer ({a}, {b}) changed the list of vertex {v} from {:?} to {:?}",
                    mask_to_list(lists[v]),
                    mask_to_list(out[v])
                )));
            }
        }
        obs.transducer(&TransducerEvent {
            depth,
            k,
            a,
            b,
            g,
            before: &lists,
            after: &out,
        });
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn run_ab_test(
        &self,
        g: &Digraph,
        lists: &[u64],
        tr: &TripleDigraph,
        x: Vertex,
        a: Vertex,
        b: Vertex,
        depth: usize,
        obs: &mut dyn Observer,
    ) -> Result<bool> {
        let component = tr.component((x, a, b));
        let mut inside = vec![false; g.n()];
        // first[y]: some (y, c, _) in the component; second[y]: some (y, _, c).
        let mut first = vec![0u64; g.n()];
        let mut second = vec![0u64; g.n()];
        for &(y, c, d) in &component {
            inside[y] = true;
            first[y] |= 1 << c;
            second[y] |= 1 << d;
        }
        let kept: Vec<Vertex> = (0..g.n()).filter(|&y| inside[y]).collect();
        let index = |y: Vertex| kept.binary_search(&y).expect("vertex of G''");

        // G'' is the subgraph induced by the projected vertices: the values
        // chosen on G'' are later combined with a homomorphism of the rest
        // of G, so every arc between two vertices of G'' must be respected.
        let arcs: Vec<(Vertex, Vertex)> = g
            .arcs()
            .iter()
            .filter(|&&(u, v)| inside[u] && inside[v])
            .map(|&(u, v)| (index(u), index(v)))
            .collect();
        let g2 = Digraph::new(kept.len(), arcs).expect("projected arcs are distinct and in range");

        let mut lists2 = Vec::with_capacity(kept.len());
        for &y in &kept {
            // Every kept value needs a compatible neighbour in each list
            // outside G''. This applies to x as well: without it, a value a
            // with no such neighbour could be kept at x and wrongly survive.
            let mut allowed = if y == x {
                1 << a
            } else {
                first[y] & !second[y] & lists[y]
            };
            for &(z, w) in g.arcs() {
                if w == y && !inside[z] {
                    allowed &= self.reachable_from(lists[z], true);
                }
                if z == y && !inside[w] {
                    allowed &= self.reachable_from(lists[w], false);
                }
            }
            let list = allowed;
            if list.count_ones() >= lists[y].count_ones() {
                return Err(Error::Internal(format!("ab-test list of vertex {y} did not shrink")));
            }
            lists2.push(list);
        }

        let accepted = self.chain(&g2, lists2.clone(), depth + 1, obs)?.is_some();
        let instance = Instance::from_masks(g2, &lists2);
        obs.ab_test(&AbTestEvent {
            depth,
            x,
            a,
            b,
            instance: &instance,
            x_projected: index(x),
            accepted,
        });
        Ok(accepted)
    }

    /// Vertices with an in-neighbour (`forward`) or out-neighbour in `from`.
    fn reachable_from(&self, from: u64, forward: bool) -> u64 {
        let nbrs = if forward { &self.masks.out } else { &self.masks.inc };
        mask_to_list(from).into_iter().fold(0, |m, t| m | nbrs[t])
    }
}

/// Decides an instance with the transducer chain, refusing templates with a
/// circular N.
pub fn solve(h: &Digraph, inst: &Instance) -> Result<Option<Homomorphism>> {
    Solver::new(h)?.solve(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn path(n: usize) -> Digraph {
        Digraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn oracle_on_small_cases() {
        let h = fixtures::h_arc();
        let loopy = Digraph::new(2, [(1, 1)]).unwrap();
        let one = Instance::new(Digraph::new(1, []).unwrap(), vec![vec![1]]).unwrap();
        assert_eq!(oracle_solve(&loopy, &one).unwrap(), Some(Homomorphism(vec![1])));

        let arc = Instance::with_full_lists(path(2), 2);
        assert_eq!(oracle_solve(&h, &arc).unwrap(), Some(Homomorphism(vec![0, 1])));
        assert_eq!(oracle_solve(&h, &Instance::with_full_lists(path(3), 2)).unwrap(), None);
    }

    #[test]
    fn oracle_respects_loops_of_g() {
        let h = fixtures::h_n();
        let g = Digraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(
            oracle_solve(&h, &Instance::with_full_lists(g.clone(), 4)).unwrap(),
            None
        );
        let c4 = fixtures::h_c4r();
        assert_eq!(
            oracle_solve(&c4, &Instance::with_full_lists(g, 4)).unwrap(),
            Some(Homomorphism(vec![0]))
        );
    }

    #[test]
    fn oracle_returns_lexicographically_first() {
        let h = fixtures::complete_reflexive(3);
        let inst = Instance::new(path(3), vec![vec![1, 2], vec![0, 2], vec![2, 1]]).unwrap();
        assert_eq!(oracle_solve(&h, &inst).unwrap(), Some(Homomorphism(vec![1, 0, 1])));
    }

    #[test]
    fn triple_digraph_counts() {
        let h = fixtures::h_arc();
        let singletons = Instance::new(path(2), vec![vec![0], vec![1]]).unwrap();
        assert_eq!(build_triple_digraph(&h, &singletons).unwrap().vertex_count(), 0);

        let full = Instance::with_full_lists(path(2), 2);
        let tr = build_triple_digraph(&h, &full).unwrap();
        assert_eq!(tr.vertex_count(), 4);
        assert_eq!(tr.arc_count(), 0);

        let g = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let inst = Instance::new(g, vec![vec![0, 1, 2], vec![0, 3], vec![]]).unwrap();
        let tr = build_triple_digraph(&fixtures::h_c4r(), &inst).unwrap();
        assert_eq!(tr.vertex_count(), 3 * 2 + 2);
    }

    #[test]
    fn triple_digraph_arcs_follow_the_clause() {
        // Reflexive 4-cycle: 0 reaches {0,1,3} and 2 reaches {1,2,3}, so
        // from (y,0,2) the only choice is c' = 0, d' = 2.
        let h = fixtures::h_c4r();
        let inst = Instance::with_full_lists(path(2), 4);
        let tr = build_triple_digraph(&h, &inst).unwrap();
        let from_02: Vec<_> = tr.arcs().filter(|(s, _)| *s == (0, 0, 2)).map(|(_, t)| t).collect();
        assert_eq!(from_02, vec![(1, 0, 2)]);
        for ((y, c, d), (y2, c2, d2)) in tr.arcs() {
            assert!(inst.g.has_arc(y, y2));
            assert!(h.has_arc(c, c2) && h.has_arc(d, d2));
            assert!(!h.has_arc(c, d2) && !h.has_arc(d, c2));
        }
    }

    #[test]
    fn solve_on_the_single_arc() {
        let h = fixtures::h_arc();
        assert_eq!(
            solve(&h, &Instance::with_full_lists(path(2), 2)).unwrap(),
            Some(Homomorphism(vec![0, 1]))
        );
        assert_eq!(solve(&h, &Instance::with_full_lists(path(3), 2)).unwrap(), None);
        let empty = Instance::new(Digraph::new(0, []).unwrap(), vec![]).unwrap();
        assert_eq!(solve(&h, &empty).unwrap(), Some(Homomorphism(vec![])));
    }

    #[test]
    fn solve_refuses_circular_n() {
        let inst = Instance::with_full_lists(path(2), 4);
        assert_eq!(solve(&fixtures::h_c4r(), &inst), Err(Error::CircularNPresent));
        assert!(Solver::new_unchecked(&fixtures::h_c4r()).is_ok());
    }

    #[test]
    fn empty_list_rejects() {
        let h = fixtures::h_arc();
        let inst = Instance::new(Digraph::new(2, []).unwrap(), vec![vec![0], vec![]]).unwrap();
        assert_eq!(solve(&h, &inst).unwrap(), None);
        assert_eq!(oracle_solve(&h, &inst).unwrap(), None);
    }

    #[test]
    fn transducer_without_relevant_vertices_is_identity() {
        let h = fixtures::h_n();
        let solver = Solver::new(&h).unwrap();
        let inst = Instance::new(path(3), vec![vec![0], vec![1], vec![3]]).unwrap();
        for k in 1..=solver.pairs().m() {
            assert_eq!(solver.apply_transducer(&inst, k).unwrap(), inst);
        }
    }

    #[test]
    fn transducer_rejects_lists_that_are_not_k_good() {
        let h = fixtures::h_arc();
        let solver = Solver::new(&h).unwrap();
        let inst = Instance::with_full_lists(path(2), 2);
        assert_eq!(solver.apply_transducer(&inst, 1), Err(Error::NotKGood { k: 1 }));
        let out = solver.apply_transducer(&inst, 2).unwrap();
        assert!(out.lists.iter().all(|l| l.len() == 1));
    }

    #[test]
    fn isolated_triple_ab_test_succeeds() {
        let h = fixtures::h_arc();
        let solver = Solver::new(&h).unwrap();
        let inst = Instance::with_full_lists(Digraph::new(1, []).unwrap(), 2);
        assert!(solver.ab_test(&inst, 0, 0, 1).unwrap());
        assert!(solver.ab_test(&inst, 0, 0, 0).is_err());
    }

    #[test]
    fn mask_round_trip() {
        assert_eq!(mask_to_list(list_to_mask(&[0, 3, 63])), vec![0, 3, 63]);
    }

    #[test]
    fn instance_shape_is_checked() {
        let g = path(2);
        assert!(Instance::new(g.clone(), vec![vec![0]]).is_err());
        assert!(Instance::new(g.clone(), vec![vec![0, 0], vec![1]]).is_err());
        let inst = Instance::new(g, vec![vec![0], vec![5]]).unwrap();
        assert!(inst.validate(&fixtures::h_arc()).is_err());
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = Instance::new(path(2), vec![vec![0, 1], vec![1]]).unwrap();
        let json = serde_json::to_string(&inst).unwrap();
        assert_eq!(json, r#"{"g":{"n":2,"arcs":[[0,1]]},"lists":[[0,1],[1]]}"#);
        assert_eq!(serde_json::from_str::<Instance>(&json).unwrap(), inst);
    }
}
