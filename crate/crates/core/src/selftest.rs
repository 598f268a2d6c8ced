//! Exhaustive and randomized consistency suites.
//!
//! Every suite compares two independent computations and records each
//! disagreement as a violation:
//!
//! * `dichotomy`: no circular N ⟺ the forced HM chain verifies;
//! * `chain-length`: the chain has `max(1, max μ)` members;
//! * `pair-digraph`: skew property, double arcs inside strong components,
//!   and `μ` strictly increasing along single arcs;
//! * `monotonicity`: DAT ⇒ circular N ⇒ bicycle or independent edges, and
//!   bicycle ⇒ circular N;
//! * `solver`: the transducer chain agrees with the oracle;
//! * `transducer`: every transducer step keeps lists good, removes exactly
//!   one of `a`, `b` per relevant list, and preserves satisfiability; every
//!   ab-test agrees with the oracle on its projected instance;
//! * `triple-connectivity`: a homomorphism with `f(x) = a` never maps `x'`
//!   to `b'` when `(x', a', b')` is connected to `(x, a, b)` in `Tr(G, L)`;
//! * `gadget`: the hardness gadget is solvable ⟺ `t` is unreachable from
//!   `s`.
//!
//! All randomness comes from a `ChaCha8Rng` seeded with the configured seed,
//! so equal configurations produce identical reports.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::detect::{classify, find_circular_n, CircularNWitness};
use crate::digraph::{Digraph, Vertex};
use crate::fixtures;
use crate::gadget::build_gadget;
use crate::hm::{construct_hm_chain, verify_chain, ChainVerification, Identity};
use crate::pairs::{build_pair_structure, PairStructure};
use crate::solver::{
    list_to_mask, mask_to_list, oracle_solve, AbTestEvent, Instance, Observer, Solver, TransducerEvent,
};

/// Arc densities used for every random digraph.
pub const DENSITIES: [f64; 2] = [0.2, 0.5];

/// A deliberate defect, used to check that the suites catch it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Overwrites `f_1(0, 1, 1)` with `1` in the first chain built for a
    /// circular-N-free template on at least two vertices.
    CorruptChain,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestConfig {
    /// Templates on up to `min(max_n, 3)` vertices are enumerated.
    pub max_n: usize,
    /// Random templates on `4..=max_n` vertices for the chain suites.
    pub samples: usize,
    pub seed: u64,
    /// (template, instance) pairs for the solver suites.
    pub solver_cases: usize,
    /// How many of those also run the triple-connectivity checks.
    pub triple_cases: usize,
    /// Random st-graphs per gadget template.
    pub gadget_graphs: usize,
    pub fault: Option<Fault>,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            max_n: 3,
            samples: 0,
            seed: 42,
            solver_cases: 200,
            triple_cases: 50,
            gadget_graphs: 20,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    /// Sorted, so that the report does not depend on evaluation order.
    pub violations: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> SuiteReport {
        SuiteReport {
            name: name.to_owned(),
            cases: 0,
            violations: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(describe());
        }
    }

    fn finish(mut self) -> SuiteReport {
        self.violations.sort();
        self
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub config: SelftestConfig,
    pub suites: Vec<SuiteReport>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }
}

/// Violations printed per suite in the text report.
const SHOWN: usize = 10;

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "selftest max_n={} samples={} seed={} solver_cases={} triple_cases={} gadget_graphs={}",
            c.max_n, c.samples, c.seed, c.solver_cases, c.triple_cases, c.gadget_graphs
        )?;
        if let Some(fault) = c.fault {
            writeln!(f, "fault injected: {fault:?}")?;
        }
        for s in &self.suites {
            let status = if s.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{:<20} {status}  cases={} violations={}",
                s.name,
                s.cases,
                s.violations.len()
            )?;
            for v in s.violations.iter().take(SHOWN) {
                writeln!(f, "    {v}")?;
            }
            if s.violations.len() > SHOWN {
                writeln!(f, "    ... and {} more", s.violations.len() - SHOWN)?;
            }
        }
        write!(f, "overall {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Independent arc inclusion with probability `p`, loops included.
pub fn random_digraph(rng: &mut impl Rng, n: usize, p: f64) -> Digraph {
    let arcs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Digraph::new(n, arcs).expect("distinct in-range arcs")
}

/// Every digraph on `n` vertices (loops allowed), in mask order.
pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    assert!(n * n < 64, "enumeration is limited to 7 vertices");
    (0..1u64 << (n * n)).map(move |mask| Digraph::from_mask(n, mask))
}

fn random_density(rng: &mut impl Rng) -> f64 {
    *DENSITIES.choose(rng).expect("non-empty")
}

/// A random circular-N-free template on `1..=max_n` vertices.
pub fn random_tractable_template(rng: &mut impl Rng, max_n: usize) -> Digraph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let p = random_density(rng);
        let h = random_digraph(rng, n, p);
        if find_circular_n(&h).is_none() {
            return h;
        }
    }
}

/// A random instance for `h`: `1..=max_g` vertices and random non-empty
/// lists.
pub fn random_instance(rng: &mut impl Rng, h: &Digraph, max_g: usize) -> Instance {
    let n = rng.gen_range(1..=max_g);
    let p = random_density(rng);
    let g = random_digraph(rng, n, p);
    let lists = (0..n)
        .map(|_| {
            let mut l: Vec<Vertex> = (0..h.n()).filter(|_| rng.gen_bool(0.5)).collect();
            if l.is_empty() {
                l.push(rng.gen_range(0..h.n()));
            }
            l
        })
        .collect();
    Instance::new(g, lists).expect("one list per vertex")
}

/// Runs every suite.
pub fn run_selftest(config: &SelftestConfig) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut templates: Vec<Digraph> = (1..=config.max_n.min(3)).flat_map(all_digraphs).collect();
    if config.max_n >= 4 {
        for _ in 0..config.samples {
            let n = rng.gen_range(4..=config.max_n);
            let p = random_density(&mut rng);
            templates.push(random_digraph(&mut rng, n, p));
        }
    }
    let small: Vec<Digraph> = (1..=config.max_n.min(3)).flat_map(all_digraphs).collect();

    let mut suites = chain_suites(&templates, config.fault).to_vec();
    suites.push(monotonicity_suite(&small));
    suites.extend(solver_suites(&mut rng, config.solver_cases, config.triple_cases));
    let mut gadget_templates: Vec<Digraph> = small.into_iter().filter(|h| find_circular_n(h).is_some()).collect();
    gadget_templates.push(fixtures::h_c4r());
    suites.push(gadget_suite(&mut rng, &gadget_templates, config.gadget_graphs));

    SelftestReport {
        config: config.clone(),
        suites,
    }
}

fn describe_verification(v: &ChainVerification) -> String {
    if let Some(bad) = v.identities.violations.first() {
        let what = match bad.identity {
            Identity::First => "f_1(x,y,y) = x",
            Identity::Link => "f_i(x,x,y) = f_(i+1)(x,y,y)",
            Identity::Last => "f_k(x,x,y) = y",
        };
        return format!(
            "{:?} identity {what} violated at i={} x={} y={} ({} identity violations)",
            bad.identity,
            bad.i,
            bad.x,
            bad.y,
            v.identities.violations.len()
        );
    }
    match v.polymorphism.iter().enumerate().find(|(_, r)| !r.is_clean()) {
        Some((i, r)) => {
            let p = &r.violations[0];
            format!(
                "f_{} is not a polymorphism: arcs {:?} map to {:?}",
                i + 1,
                p.arcs,
                p.image
            )
        }
        None => "chain verifies".into(),
    }
}

/// The `dichotomy`, `chain-length` and `pair-digraph` suites.
pub fn chain_suites(templates: &[Digraph], fault: Option<Fault>) -> [SuiteReport; 3] {
    let mut dichotomy = SuiteReport::new("dichotomy");
    let mut length = SuiteReport::new("chain-length");
    let mut pair_suite = SuiteReport::new("pair-digraph");
    let mut fault = fault;
    for h in templates {
        let pairs = build_pair_structure(h);
        let witness = find_circular_n(h);
        let mut chain = construct_hm_chain(h, &pairs);
        if witness.is_none() && h.n() >= 2 && fault.take().is_some() {
            chain.ops[0].set_unchecked(0, 1, 1, 1);
        }
        let verification = verify_chain(h, &chain).expect("chain is well formed");

        dichotomy.cases += 1;
        dichotomy.check(witness.is_none() == verification.is_clean(), || match &witness {
            None => format!("{h:?}: no circular N but {}", describe_verification(&verification)),
            Some(w) => format!("{h:?}: circular N {w:?} but the forced chain verifies"),
        });
        if let Some(w) = &witness {
            dichotomy.check(w.validate(h).is_ok(), || format!("{h:?}: witness fails validation"));
        }

        length.cases += 1;
        let expected = (pairs.max_mu() as usize).max(1);
        length.check(chain.len() == expected, || {
            format!("{h:?}: chain has {} members, max μ is {}", chain.len(), pairs.max_mu())
        });

        pair_suite.cases += 1;
        check_pair_invariants(h, &pairs, witness.is_none(), &mut pair_suite);
    }
    [dichotomy.finish(), length.finish(), pair_suite.finish()]
}

fn check_pair_invariants(h: &Digraph, pairs: &PairStructure, tractable: bool, report: &mut SuiteReport) {
    for arc in pairs.arcs() {
        let ((x, y), (x2, y2)) = (arc.from, arc.to);
        report.check(pairs.has_arc((y2, x2), (y, x)), || {
            format!("{h:?}: arc {:?} -> {:?} has no skew partner", arc.from, arc.to)
        });
        if !tractable {
            continue;
        }
        let same = pairs.component_of(arc.from) == pairs.component_of(arc.to);
        report.check(!same || arc.double, || {
            format!(
                "{h:?}: single arc {:?} -> {:?} inside a strong component",
                arc.from, arc.to
            )
        });
        report.check(arc.double || pairs.mu(x2, y2) > pairs.mu(x, y), || {
            format!("{h:?}: single arc {:?} -> {:?} does not increase μ", arc.from, arc.to)
        });
    }
}

/// The `monotonicity` suite.
pub fn monotonicity_suite(templates: &[Digraph]) -> SuiteReport {
    let mut report = SuiteReport::new("monotonicity");
    for h in templates {
        report.cases += 1;
        let c = classify(h);
        report.check(!c.has_dat() || c.has_circular_n(), || {
            format!("{h:?}: DAT without circular N")
        });
        report.check(
            !c.has_circular_n() || c.has_bicycle() || c.has_independent_edges(),
            || format!("{h:?}: circular N without bicycle or independent edges"),
        );
        report.check(!c.has_bicycle() || c.has_circular_n(), || {
            format!("{h:?}: bicycle without circular N")
        });
    }
    report.finish()
}

/// Checks every transducer step and ab-test against the oracle.
struct StepChecker<'a> {
    h: &'a Digraph,
    pairs: &'a PairStructure,
    triples: Option<(&'a mut ChaCha8Rng, &'a mut SuiteReport)>,
    transducer: Vec<String>,
    steps: usize,
}

impl Observer for StepChecker<'_> {
    fn transducer(&mut self, e: &TransducerEvent<'_>) {
        self.steps += 1;
        let h = self.h;
        let tag = || {
            format!(
                "{h:?} T({},{}) k={} depth={} on {:?}",
                e.a,
                e.b,
                e.k,
                e.depth,
                e.input()
            )
        };
        if !self.pairs.is_k_good_masks(e.after, e.k - 1) {
            self.transducer
                .push(format!("{}: output is not {}-good", tag(), e.k - 1));
        }
        let both = 1u64 << e.a | 1 << e.b;
        for (v, (&before, &after)) in e.before.iter().zip(e.after).enumerate() {
            let removed = before & !after;
            let relevant = before & both == both;
            let ok = if relevant {
                removed.count_ones() == 1 && removed & both == removed
            } else {
                removed == 0
            };
            if !ok {
                self.transducer.push(format!(
                    "{}: vertex {v} went from {:?} to {:?}",
                    tag(),
                    mask_to_list(before),
                    mask_to_list(after)
                ));
            }
        }
        let sat_before = oracle_solve(h, &e.input()).expect("valid instance").is_some();
        let sat_after = oracle_solve(h, &e.output()).expect("valid instance").is_some();
        if sat_before != sat_after {
            self.transducer
                .push(format!("{}: satisfiable {sat_before} before, {sat_after} after", tag()));
        }

        if let Some((rng, report)) = self.triples.as_mut() {
            check_triple_connectivity(h, e, rng, report);
        }
    }

    fn ab_test(&mut self, e: &AbTestEvent<'_>) {
        let h = self.h;
        let oracle = oracle_solve(h, e.instance).expect("valid instance").is_some();
        if oracle != e.accepted {
            self.transducer.push(format!(
                "{h:?} ab-test x={} a={} b={}: accepted {} but oracle says {oracle} on {:?}",
                e.x, e.a, e.b, e.accepted, e.instance
            ));
        }
    }
}

/// Targets sampled per relevant vertex in the triple-connectivity suite.
const TRIPLE_TARGETS: usize = 4;

/// For the `(x, a, b)` of each relevant vertex, samples triples of its weak
/// component and checks that no homomorphism sends `x` to `a` and `x'` to
/// `b'`.
fn check_triple_connectivity(h: &Digraph, e: &TransducerEvent<'_>, rng: &mut ChaCha8Rng, report: &mut SuiteReport) {
    let inst = e.input();
    let tr = crate::solver::build_triple_digraph(h, &inst).expect("valid instance");
    let both = 1u64 << e.a | 1 << e.b;
    for x in (0..inst.g.n()).filter(|&x| e.before[x] & both == both) {
        let component = tr.component((x, e.a, e.b));
        for &(x2, _, b2) in component.choose_multiple(rng, TRIPLE_TARGETS) {
            report.cases += 1;
            let mut restricted = inst.with_list(x, vec![e.a]);
            let keep = list_to_mask(&restricted.lists[x2]) & 1 << b2;
            restricted.lists[x2] = mask_to_list(keep);
            let found = oracle_solve(h, &restricted).expect("valid instance");
            report.check(found.is_none(), || {
                format!(
                    "{h:?} on {inst:?}: ({x},{},{}) ~ ({x2},_,{b2}) but {found:?} maps {x}->{} and {x2}->{b2}",
                    e.a, e.b, e.a
                )
            });
        }
    }
}

/// The `solver`, `transducer` and `triple-connectivity` suites.
pub fn solver_suites(rng: &mut ChaCha8Rng, cases: usize, triple_cases: usize) -> [SuiteReport; 3] {
    let mut solver = SuiteReport::new("solver");
    let mut transducer = SuiteReport::new("transducer");
    let mut triples = SuiteReport::new("triple-connectivity");
    let mut triple_rng = ChaCha8Rng::seed_from_u64(rng.gen());
    for case in 0..cases {
        let h = random_tractable_template(rng, 5);
        let inst = random_instance(rng, &h, 8);
        let engine = Solver::new(&h).expect("template is circular-N free");
        let mut checker = StepChecker {
            h: &h,
            pairs: engine.pairs(),
            triples: (case < triple_cases).then_some((&mut triple_rng, &mut triples)),
            transducer: Vec::new(),
            steps: 0,
        };
        let got = engine.solve_observed(&inst, &mut checker);
        transducer.cases += checker.steps;
        transducer.violations.append(&mut checker.transducer);

        solver.cases += 1;
        let want = oracle_solve(&h, &inst).expect("valid instance");
        match got {
            Err(e) => solver.violations.push(format!("{h:?} on {inst:?}: solver error: {e}")),
            Ok(got) => {
                solver.check(got.is_some() == want.is_some(), || {
                    format!("{h:?} on {inst:?}: solver {:?}, oracle {:?}", got, want)
                });
                if let Some(f) = &got {
                    solver.check(f.validate(&h, &inst).is_ok(), || {
                        format!("{h:?} on {inst:?}: invalid map {f:?}")
                    });
                }
            }
        }
    }
    [solver.finish(), transducer.finish(), triples.finish()]
}

/// Endpoint pairs that a single path copy realises.
fn path_endpoint_pairs(h: &Digraph, w: &CircularNWitness) -> Vec<(Vertex, Vertex)> {
    let st = Digraph::new(2, [(0, 1)]).expect("single arc");
    let base = build_gadget(h, w, &st, 0, 1).expect("validated witness").instance;
    let (x, y) = (w.x.start, w.y.start);
    [(x, x), (y, y), (y, x), (x, y)]
        .into_iter()
        .filter(|&(p, q)| {
            let inst = base.with_list(0, vec![p]).with_list(1, vec![q]);
            oracle_solve(h, &inst).expect("valid instance").is_some()
        })
        .collect()
}

/// A random st-graph on `2..=8` vertices with at most 14 arcs, plus
/// distinct `s` and `t`.
pub fn random_st_graph(rng: &mut impl Rng) -> (Digraph, Vertex, Vertex) {
    let n = rng.gen_range(2..=8);
    let m = rng.gen_range(0..=14);
    let arcs: Vec<(Vertex, Vertex)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    let g = Digraph::from_arc_set(n, arcs).expect("in-range arcs");
    let s = rng.gen_range(0..n);
    let t = (s + rng.gen_range(1..n)) % n;
    (g, s, t)
}

/// The `gadget` suite: every template is checked against the same st-graphs.
pub fn gadget_suite(rng: &mut ChaCha8Rng, templates: &[Digraph], graphs: usize) -> SuiteReport {
    let mut report = SuiteReport::new("gadget");
    let st_graphs: Vec<_> = (0..graphs).map(|_| random_st_graph(rng)).collect();
    for h in templates {
        let Some(w) = find_circular_n(h) else {
            report
                .violations
                .push(format!("{h:?}: no circular N to build a gadget from"));
            continue;
        };
        report.cases += 1;
        let (x, y) = (w.x.start, w.y.start);
        let realised = path_endpoint_pairs(h, &w);
        report.check(realised == [(x, x), (y, y), (y, x)], || {
            format!("{h:?}: a single path copy realises endpoint pairs {realised:?}")
        });
        for (st, s, t) in &st_graphs {
            report.cases += 1;
            let out = build_gadget(h, &w, st, *s, *t).expect("validated witness");
            let solvable = oracle_solve(h, &out.instance).expect("valid instance").is_some();
            report.check(solvable != st.reaches(*s, *t), || {
                format!("{h:?} with st-graph {st:?}, s={s}, t={t}: gadget solvable={solvable}")
            });
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SelftestConfig {
        SelftestConfig {
            max_n: 2,
            samples: 0,
            seed: 1,
            solver_cases: 20,
            triple_cases: 5,
            gadget_graphs: 5,
            fault: None,
        }
    }

    #[test]
    fn small_run_passes() {
        let report = run_selftest(&small_config());
        assert!(report.passed(), "{report}");
        assert_eq!(report.suite("dichotomy").unwrap().cases, 2 + 16);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_selftest(&small_config()).to_string();
        let b = run_selftest(&small_config()).to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn corrupted_chain_is_reported() {
        let report = run_selftest(&SelftestConfig {
            fault: Some(Fault::CorruptChain),
            ..small_config()
        });
        let dichotomy = report.suite("dichotomy").unwrap();
        assert_eq!(dichotomy.violations.len(), 1, "{report}");
        assert!(dichotomy.violations[0].contains("First identity f_1(x,y,y) = x violated at i=1 x=0 y=1"));
        assert!(!report.passed());
    }

    #[test]
    fn random_st_graphs_have_distinct_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (g, s, t) = random_st_graph(&mut rng);
            assert!(s != t && s < g.n() && t < g.n() && g.arc_count() <= 14);
        }
    }
}
