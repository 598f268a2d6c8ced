//! `lhom`: classify digraph templates and solve list-homomorphism instances.
//!
//! Exit codes: 0 success or a positive answer, 1 a negative answer, 2 a
//! usage, input or parse error, 3 an internal invariant violation.

use std::fs;
use std::io::{self, Write as _};
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use lhom_core::detect::classify_with;
use lhom_core::gadget::build_gadget;
use lhom_core::hm::verify_chain;
use lhom_core::selftest::{run_selftest, Fault, SelftestConfig};
use lhom_core::solver::{oracle_solve, Homomorphism, Instance, Solver};
use lhom_core::{build_hm_chain, build_pair_structure, find_circular_n, parse_digraph, Digraph};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "lhom",
    version,
    about = "List-homomorphism complexity classification and solving"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a template and report the witnessing structures.
    Analyze {
        /// Template in `.dg` format.
        template: PathBuf,
    },
    /// Decide an instance with the transducer chain.
    Solve {
        template: PathBuf,
        /// Instance JSON: {"g": {"n": N, "arcs": [[u,v], ...]}, "lists": [[...], ...]}.
        instance: PathBuf,
        /// Print the homomorphism when one exists.
        #[arg(long)]
        witness: bool,
        /// Use the exact backtracking solver instead.
        #[arg(long, conflicts_with = "force")]
        oracle: bool,
        /// Run the transducer chain even if the template has a circular N.
        #[arg(long)]
        force: bool,
    },
    /// Build and verify the HM chain of a circular-N-free template.
    HmChain { template: PathBuf },
    /// Build the hardness gadget for an st-connectivity instance.
    Gadget {
        template: PathBuf,
        /// The st-graph in `.dg` format.
        st_graph: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide an instance with the exact backtracking solver.
    Oracle { template: PathBuf, instance: PathBuf },
    /// Run the consistency suites.
    Selftest {
        /// Enumerate all templates up to min(max-n, 3) vertices; sample
        /// larger ones up to max-n.
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Random templates on 4..=max-n vertices.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        solver_cases: usize,
        #[arg(long, default_value_t = 50)]
        triple_cases: usize,
        #[arg(long, default_value_t = 20)]
        gadget_graphs: usize,
        /// Inject a known defect to check that it is reported.
        #[arg(long, value_enum)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    CorruptChain,
}

/// A failed command, carrying its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn input_error(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 2,
        error: error.into(),
    }
}

fn core_error(error: lhom_core::Error) -> Failure {
    let code = match error {
        lhom_core::Error::Internal(_) => 3,
        _ => 2,
    };
    Failure {
        code,
        error: error.into(),
    }
}

/// The outcome of a successful command: something to print and a code.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(input_error)
}

fn read_digraph(path: &Path) -> Result<Digraph, Failure> {
    parse_digraph(&read(path)?)
        .with_context(|| format!("cannot parse {}", path.display()))
        .map_err(input_error)
}

fn read_instance(path: &Path, h: &Digraph) -> Result<Instance, Failure> {
    let raw: Instance = serde_json::from_str(&read(path)?)
        .with_context(|| format!("cannot parse {}", path.display()))
        .map_err(input_error)?;
    let inst = Instance::new(raw.g, raw.lists).map_err(core_error)?;
    inst.validate(h).map_err(core_error)?;
    Ok(inst)
}

fn to_json(value: &impl serde::Serialize) -> Value {
    serde_json::to_value(value).expect("serialisable")
}

fn none_or<T>(v: &Option<T>, f: impl Fn(&T) -> String) -> String {
    v.as_ref().map_or_else(|| "none".to_owned(), f)
}

fn analyze(template: &Path) -> Result<Output, Failure> {
    let h = read_digraph(template)?;
    let pairs = build_pair_structure(&h);
    let c = classify_with(&h, &pairs);
    let mut json = to_json(&c);
    json["pair_digraph"] = json!({
        "m": pairs.m(),
        "components": pairs.component_count(),
        "max_mu": pairs.max_mu(),
        "processing_order": pairs.processing_order(),
    });

    let order: Vec<String> = pairs
        .processing_order()
        .iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect();
    let text = [
        format!("verdict: {}", c.verdict),
        format!(
            "circular N: {}",
            none_or(&c.circular_n, |w| format!("X = {}; Y = {}; Z = {}", w.x, w.y, w.z))
        ),
        format!(
            "DAT: {}",
            none_or(&c.dat, |d| format!(
                "triple {:?}, s = {:?}, b = {:?}",
                d.triple, d.s, d.b
            ))
        ),
        format!(
            "bicycle: {}",
            none_or(&c.bicycle, |b| format!("X = {}; Y = {}", b.x, b.y))
        ),
        format!(
            "independent edges: {}",
            none_or(&c.independent_edges, |e| format!(
                "{:?}, {:?} ({})",
                e.first, e.second, e.dir
            ))
        ),
        format!("HM chain length: {}", none_or(&c.hm_chain_length, |k| k.to_string())),
        format!(
            "pair digraph: m = {}, components = {}, max mu = {}",
            pairs.m(),
            pairs.component_count(),
            pairs.max_mu()
        ),
        format!("processing order: {}", order.join(" ")),
    ]
    .join("\n");
    Ok(Output { text, json, code: 0 })
}

fn report_solution(method: &str, witness: bool, result: Option<Homomorphism>) -> Output {
    let found = result.is_some();
    let mut text = if found {
        "homomorphism exists"
    } else {
        "no homomorphism"
    }
    .to_owned();
    if let (true, Some(f)) = (witness, &result) {
        let map: Vec<String> = f.0.iter().enumerate().map(|(v, c)| format!("{v}->{c}")).collect();
        text.push_str(&format!("\n{}", map.join(" ")));
    }
    let json = json!({
        "satisfiable": found,
        "method": method,
        "homomorphism": if witness { to_json(&result) } else { Value::Null },
    });
    Output {
        text,
        json,
        code: if found { 0 } else { 1 },
    }
}

fn solve(template: &Path, instance: &Path, witness: bool, oracle: bool, force: bool) -> Result<Output, Failure> {
    let h = read_digraph(template)?;
    let inst = read_instance(instance, &h)?;
    if oracle {
        let result = oracle_solve(&h, &inst).map_err(core_error)?;
        return Ok(report_solution("oracle", witness, result));
    }
    let solver = if force {
        Solver::new_unchecked(&h).map_err(core_error)
    } else {
        Solver::new(&h).map_err(|e| match e {
            lhom_core::Error::CircularNPresent => input_error(anyhow!(
                "the template has a circular N, so the transducer chain is not guaranteed to be correct; \
                 rerun with --oracle for an exact answer or --force to run it anyway"
            )),
            e => core_error(e),
        })
    }?;
    let result = solver.solve(&inst).map_err(core_error)?;
    Ok(report_solution(
        if force { "transducer (forced)" } else { "transducer" },
        witness,
        result,
    ))
}

fn oracle(template: &Path, instance: &Path) -> Result<Output, Failure> {
    let h = read_digraph(template)?;
    let inst = read_instance(instance, &h)?;
    let result = oracle_solve(&h, &inst).map_err(core_error)?;
    Ok(report_solution("oracle", true, result))
}

fn hm_chain(template: &Path) -> Result<Output, Failure> {
    let h = read_digraph(template)?;
    let Some(chain) = build_hm_chain(&h) else {
        let w = find_circular_n(&h).expect("no chain means a circular N");
        return Ok(Output {
            text: format!("no HM chain: circular N with X = {}; Y = {}; Z = {}", w.x, w.y, w.z),
            json: json!({ "k": null, "circular_n": to_json(&w) }),
            code: 1,
        });
    };
    let verification = verify_chain(&h, &chain).map_err(core_error)?;
    let clean = verification.is_clean();
    let tables: Vec<&[usize]> = chain.ops.iter().map(|f| f.values()).collect();
    let json = json!({
        "k": chain.len(),
        "tables": tables,
        "identities": to_json(&verification.identities),
        "polymorphism": to_json(&verification.polymorphism),
    });
    let bad_polymorphisms: usize = verification.polymorphism.iter().map(|r| r.violations.len()).sum();
    let text = format!(
        "HM chain of length {}\nidentity violations: {}\npolymorphism violations: {}\n{}",
        chain.len(),
        verification.identities.violations.len(),
        bad_polymorphisms,
        if clean { "verified" } else { "VERIFICATION FAILED" }
    );
    Ok(Output {
        text,
        json,
        code: if clean { 0 } else { 3 },
    })
}

fn gadget(template: &Path, st_graph: &Path, s: usize, t: usize, output: Option<&Path>) -> Result<Output, Failure> {
    let h = read_digraph(template)?;
    let st = read_digraph(st_graph)?;
    let Some(w) = find_circular_n(&h) else {
        return Ok(Output {
            text: "the template has no circular N; no gadget can be built".into(),
            json: json!({ "error": "no circular N" }),
            code: 1,
        });
    };
    let out = build_gadget(&h, &w, &st, s, t).map_err(core_error)?;
    let body = serde_json::to_string_pretty(&out).expect("serialisable");
    match output {
        Some(path) => {
            fs::write(path, format!("{body}\n"))
                .with_context(|| format!("cannot write {}", path.display()))
                .map_err(input_error)?;
            Ok(Output {
                text: format!(
                    "wrote gadget with {} vertices and {} arcs to {}",
                    out.instance.g.n(),
                    out.instance.g.arc_count(),
                    path.display()
                ),
                json: json!({
                    "output": path.display().to_string(),
                    "vertices": out.instance.g.n(),
                    "arcs": out.instance.g.arc_count(),
                }),
                code: 0,
            })
        }
        None => Ok(Output {
            text: body,
            json: to_json(&out),
            code: 0,
        }),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Analyze { template } => analyze(template),
        Command::Solve {
            template,
            instance,
            witness,
            oracle,
            force,
        } => solve(template, instance, *witness, *oracle, *force),
        Command::HmChain { template } => hm_chain(template),
        Command::Gadget {
            template,
            st_graph,
            s,
            t,
            output,
        } => gadget(template, st_graph, *s, *t, output.as_deref()),
        Command::Oracle { template, instance } => oracle(template, instance),
        Command::Selftest {
            max_n,
            samples,
            seed,
            solver_cases,
            triple_cases,
            gadget_graphs,
            inject_fault,
        } => {
            let config = SelftestConfig {
                max_n: *max_n,
                samples: *samples,
                seed: *seed,
                solver_cases: *solver_cases,
                triple_cases: *triple_cases,
                gadget_graphs: *gadget_graphs,
                fault: inject_fault.map(|FaultArg::CorruptChain| Fault::CorruptChain),
            };
            let report = run_selftest(&config);
            Ok(Output {
                text: report.to_string(),
                json: to_json(&report),
                code: if report.passed() { 0 } else { 1 },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let outcome = panic::catch_unwind(|| run(&cli)).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "unknown panic".into());
        Err(Failure {
            code: 3,
            error: anyhow!("internal error: {msg}"),
        })
    });
    match outcome {
        Ok(out) => {
            let text = if json {
                serde_json::to_string_pretty(&out.json).expect("serialisable")
            } else {
                out.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(io::stdout(), "{text}");
            ExitCode::from(out.code)
        }
        Err(Failure { code, error }) => {
            if json {
                let _ = writeln!(
                    io::stdout(),
                    "{}",
                    json!({ "error": format!("{error:#}"), "exit_code": code })
                );
            }
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
