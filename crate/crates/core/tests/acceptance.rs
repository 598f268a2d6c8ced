//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs as a plain binary so the lines are always printed.

use std::process::ExitCode;
use std::time::Instant;

use lhom_core::detect::{find_bicycle, find_dat};
use lhom_core::fixtures;
use lhom_core::hm::verify_chain;
use lhom_core::selftest::{
    all_digraphs, chain_suites, gadget_suite, monotonicity_suite, random_digraph, solver_suites, SuiteReport, DENSITIES,
};
use lhom_core::{avoids, build_hm_chain, classify, find_circular_n, protects, CircularNWitness, Verdict, Walk};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;
const RANDOM_TEMPLATES: usize = 2000;
const SOLVER_CASES: usize = 1000;
const TRIPLE_CASES: usize = 200;
const ST_GRAPHS: usize = 200;

struct Outcome {
    passed: bool,
    detail: String,
}

impl From<&SuiteReport> for Outcome {
    fn from(s: &SuiteReport) -> Outcome {
        let mut detail = format!("{} cases, {} violations", s.cases, s.violations.len());
        if let Some(first) = s.violations.first() {
            detail.push_str(&format!("; first: {first}"));
        }
        Outcome {
            passed: s.passed() && s.cases > 0,
            detail,
        }
    }
}

fn fixture_checks() -> Outcome {
    let mut failures = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_owned());
        }
    };

    let c4 = fixtures::h_c4r();
    expect(classify(&c4).has_circular_n(), "C4r has a circular N");
    let printed = CircularNWitness {
        x: Walk::forward(&[0, 1, 2, 3, 0]),
        y: Walk::forward(&[1, 2, 3, 0, 1]),
        z: Walk::forward(&[1, 2, 2, 3, 0]),
    };
    expect(
        avoids(&c4, &printed.x, &printed.y) == Ok(true),
        "printed C4r X avoids Y",
    );
    expect(
        protects(&c4, &printed.z, &printed.y, &printed.x) == Ok(true),
        "printed C4r Z protects Y from X",
    );
    expect(printed.validate(&c4).is_ok(), "printed C4r witness validates");
    expect(
        find_circular_n(&c4).is_some_and(|w| w.validate(&c4).is_ok()),
        "detected C4r witness validates",
    );
    expect(find_bicycle(&c4).is_some(), "C4r has a bicycle");

    let arc = fixtures::h_arc();
    let c = classify(&arc);
    expect(c.verdict == Verdict::FoDefinable, "H_arc is FO-definable");
    match build_hm_chain(&arc) {
        Some(chain) => {
            expect(chain.len() == 1, "H_arc chain has length 1");
            expect(
                verify_chain(&arc, &chain).is_ok_and(|v| v.is_clean()),
                "H_arc chain verifies",
            );
        }
        None => expect(false, "H_arc has a chain"),
    }

    let p4 = fixtures::h_p4r();
    expect(find_circular_n(&p4).is_some(), "reflexive 4-path has a circular N");
    expect(find_dat(&p4).is_none(), "reflexive 4-path has no DAT");

    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            "C4r, H_arc and the reflexive 4-path behave as stated".into()
        } else {
            format!("failed: {}", failures.join(", "))
        },
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    let three: Vec<_> = all_digraphs(3).collect();
    let mut templates = three.clone();
    for _ in 0..RANDOM_TEMPLATES {
        let n = rng.gen_range(4..=5);
        let p = DENSITIES[rng.gen_range(0..DENSITIES.len())];
        templates.push(random_digraph(&mut rng, n, p));
    }
    let [dichotomy, length, pairs] = chain_suites(&templates, None);
    let [solver, transducer, triples] = solver_suites(&mut rng, SOLVER_CASES, TRIPLE_CASES);
    let mut gadget_templates: Vec<_> = three.iter().filter(|h| find_circular_n(h).is_some()).cloned().collect();
    gadget_templates.push(fixtures::h_c4r());
    let gadget = gadget_suite(&mut rng, &gadget_templates, ST_GRAPHS);
    let monotonicity = monotonicity_suite(&three);

    let criteria: [(&str, Outcome); 9] = [
        ("dichotomy: no circular N <=> verified HM chain", (&dichotomy).into()),
        ("chain length equals max mu", (&length).into()),
        ("transducer-chain solver agrees with the oracle", (&solver).into()),
        ("transducer steps are sound", (&transducer).into()),
        ("hardness gadget tracks st-reachability", (&gadget).into()),
        ("structural monotonicity", (&monotonicity).into()),
        ("fixture checks", fixture_checks()),
        ("triple-digraph connectivity forbids f(x')=b'", (&triples).into()),
        ("pair digraph invariants", (&pairs).into()),
    ];

    let mut all = true;
    for (i, (name, outcome)) in criteria.iter().enumerate() {
        all &= outcome.passed;
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {}: {name} ({})", i + 1, outcome.detail);
    }
    println!("acceptance finished in {:.1}s", started.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
