//! Command-line front end: check properties, solve completion problems,
//! compute maximin shares, generate gadget instances, run the exhaustive
//! oracle, and cross-check solvers against it.
//!
//! Exit codes: 0 = property holds / witness found, 1 = exact non-existence /
//! property fails, 2 = input error, 3 = not applicable (preconditions unmet
//! or budget exceeded).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use faircomp::format::{
    outcome_to_json, parse_allocation, parse_instance, report_to_json, serialize_allocation,
    serialize_instance,
};
use faircomp::sweeps;
use faircomp_core::checkers::{
    build_envy_graph, check_alpha_mms, check_ef1, check_po_binary, check_prop1,
    check_sequencible, CheckError, FairnessReport, Property, SeqVerdict, Violation,
};
use faircomp_core::mms::{mms_value_binary, mms_value_bruteforce, mms_value_lex, mms_values};
use faircomp_core::model::{
    merge_allocation, Alpha, Completion, Instance, SolveOutcome, SolveStatus,
    ValuationClass,
};
use faircomp_core::oracle::{oracle_po_check, oracle_solve, OracleBudgets};
use faircomp_core::reductions::{
    mnw_not_ef1, no_alpha_mms_additive, no_alpha_mms_binary, no_mms_lex,
    EquitableColoringReduction, Graph, Hypergraph, PartitionReduction, PartitionVariant,
    RainbowColoringReduction,
};
use faircomp_core::solvers::{
    solve_ef1_acyclic, solve_mms_lex, solve_po_lex, solve_prop1_po_lex, solve_threshold_binary,
    solve_two_identical, ThresholdMode, TwoIdenticalMode,
};

const EXIT_HOLDS: u8 = 0;
const EXIT_FAILS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_APPLICABLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "faircomp",
    about = "Fair and efficient completion of partially frozen allocations of indivisible goods",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a fairness or efficiency property of an allocation.
    Check(CheckArgs),
    /// Decide whether a completion with the requested properties exists and
    /// construct one if so.
    Solve(SolveArgs),
    /// Compute each agent's maximin share value and a witness partition.
    MmsValue(MmsValueArgs),
    /// Emit a gadget or counterexample instance.
    Generate(GenerateArgs),
    /// Exhaustive oracle search for a completion with the given properties.
    Oracle(OracleArgs),
    /// Cross-check solvers against the oracle on a named sweep.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckProperty {
    Ef,
    Ef1,
    Prop,
    Prop1,
    Po,
    Mms,
    AlphaMms,
    Sequencible,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    allocation: PathBuf,
    #[arg(long)]
    property: CheckProperty,
    /// Exact threshold for alpha-mms, written as p/q.
    #[arg(long)]
    alpha: Option<String>,
    /// State budget for brute-force maximin shares and dominance checks.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveProperty {
    Ef1,
    Prop1,
    Mms,
    Po,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    property: SolveProperty,
    /// Additionally require Pareto optimality.
    #[arg(long)]
    po: bool,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Bypass the class-specific solvers and use exhaustive search.
    #[arg(long)]
    force_oracle: bool,
    /// Print the flow network the binary threshold solver runs on.
    #[arg(long)]
    dump_network: bool,
    #[arg(long)]
    json: bool,
    /// Write the witness allocation to this file when one exists.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MmsValueArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Partition,
    EquitableColoring,
    RainbowColoring,
    NoMmsLex,
    NoAlphaMmsAdditive,
    NoAlphaMmsBinary,
    MnwNotEf1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PartitionVariantArg {
    TwoAgentEf1,
    TwoAgentProp1,
    ThreeIdentical,
    ThreeIdenticalProp1,
    MmsTwoAgent,
}

impl From<PartitionVariantArg> for PartitionVariant {
    fn from(arg: PartitionVariantArg) -> Self {
        match arg {
            PartitionVariantArg::TwoAgentEf1 => PartitionVariant::TwoAgentEf1,
            PartitionVariantArg::TwoAgentProp1 => PartitionVariant::TwoAgentProp1,
            PartitionVariantArg::ThreeIdentical => PartitionVariant::ThreeIdentical,
            PartitionVariantArg::ThreeIdenticalProp1 => PartitionVariant::ThreeIdenticalProp1,
            PartitionVariantArg::MmsTwoAgent => PartitionVariant::MmsTwoAgent,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    family: Family,
    /// Partition weights, comma separated (e.g. 1,1,2).
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    variant: Option<PartitionVariantArg>,
    /// Vertex names, comma separated.
    #[arg(long)]
    vertices: Option<String>,
    /// Edges as pairs of vertex names (e.g. a-b,b-c).
    #[arg(long)]
    edges: Option<String>,
    /// Hyperedges as +-joined vertex names (e.g. a+b,c).
    #[arg(long)]
    hyperedges: Option<String>,
    #[arg(long)]
    colors: Option<usize>,
    #[arg(long)]
    alpha: Option<String>,
    /// Number of unallocated goods for the additive alpha-MMS family.
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long)]
    agents: Option<u64>,
    /// Write the instance here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Comma-separated properties: ef, ef1, prop, prop1, mms, alpha-mms,
    /// po, mnw.
    #[arg(long)]
    properties: String,
    #[arg(long)]
    alpha: Option<String>,
    /// Cap on completion states (n^|U|).
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Cap on allocations enumerated for Pareto dominance (n^m).
    #[arg(long, default_value_t = 10_000_000)]
    po_budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Sweep name, or "all".
    #[arg(long, default_value = "all")]
    target: String,
    /// Case count for seeded random sweeps.
    #[arg(long, default_value_t = 1000)]
    cases: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// List available sweep names and exit.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check(args) => run_check(args),
        Command::Solve(args) => run_solve(args),
        Command::MmsValue(args) => run_mms_value(args),
        Command::Generate(args) => run_generate(args),
        Command::Oracle(args) => run_oracle(args),
        Command::Verify(args) => run_verify(args),
    };
    ExitCode::from(code)
}

fn fail_input(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    EXIT_INPUT
}

fn load_instance(path: &Path) -> Result<Instance, u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail_input(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(fail_input)
}

fn parse_alpha(text: Option<&str>) -> Result<Alpha, u8> {
    let Some(text) = text else {
        return Ok(Alpha::one());
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: u64 = num.parse().map_err(|_| fail_input("alpha must be p/q"))?;
    let den: u64 = den.parse().map_err(|_| fail_input("alpha must be p/q"))?;
    Alpha::new(num, den).map_err(fail_input)
}

fn check_error_exit(err: CheckError) -> u8 {
    match err {
        CheckError::TiedItemValues { .. } => {
            eprintln!("not applicable: {err}");
            EXIT_NOT_APPLICABLE
        }
        other => fail_input(other),
    }
}

fn report_exit(report: &FairnessReport, json: bool) -> u8 {
    if json {
        println!("{}", report_to_json(report));
    } else if report.holds {
        println!("{} holds", report.property);
    } else {
        println!("{} fails", report.property);
        for violation in &report.violations {
            println!("  {}", violation.explanation);
        }
    }
    if report.holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn mu_for(inst: &Instance, budget: u64) -> Result<Vec<faircomp_core::BigUint>, u8> {
    mms_values(inst, budget).map_err(|err| {
        eprintln!("not applicable: {err}");
        EXIT_NOT_APPLICABLE
    })
}

fn run_check(args: CheckArgs) -> u8 {
    let inst = match load_instance(&args.instance) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let text = match std::fs::read_to_string(&args.allocation) {
        Ok(text) => text,
        Err(e) => return fail_input(format!("{}: {e}", args.allocation.display())),
    };
    let alloc = match parse_allocation(&text, &inst) {
        Ok(alloc) => alloc,
        Err(e) => return fail_input(e),
    };

    let report = match args.property {
        CheckProperty::Ef => {
            let graph = build_envy_graph(&inst, &alloc);
            let violations = graph
                .edges()
                .iter()
                .map(|&(i, j)| Violation {
                    agent: i,
                    counterpart: Some(j),
                    explanation: format!("agent {i} envies agent {j}"),
                })
                .collect::<Vec<_>>();
            Ok(FairnessReport {
                property: Property::Ef,
                holds: violations.is_empty(),
                violations,
            })
        }
        CheckProperty::Ef1 => check_ef1(&inst, &alloc),
        CheckProperty::Prop => {
            let n = inst.n_agents() as u64;
            let violations = (0..inst.n_agents())
                .filter(|&i| inst.bundle_value(i, alloc.bundle(i)) * n < inst.total_value(i))
                .map(|i| Violation {
                    agent: i,
                    counterpart: None,
                    explanation: format!("agent {i} is below a 1/{n} share"),
                })
                .collect::<Vec<_>>();
            Ok(FairnessReport {
                property: Property::Prop,
                holds: violations.is_empty(),
                violations,
            })
        }
        CheckProperty::Prop1 => check_prop1(&inst, &alloc),
        CheckProperty::Po => match inst.class() {
            ValuationClass::Binary => check_po_binary(&inst, &alloc),
            ValuationClass::Lexicographic => {
                check_sequencible(&inst, &alloc).map(|verdict| FairnessReport {
                    property: Property::Po,
                    holds: verdict.is_sequencible(),
                    violations: if verdict.is_sequencible() {
                        Vec::new()
                    } else {
                        vec![Violation {
                            agent: 0,
                            counterpart: None,
                            explanation: "allocation is not sequencible".to_string(),
                        }]
                    },
                })
            }
            ValuationClass::Additive => match oracle_po_check(&inst, &alloc, args.budget) {
                Ok(po) => Ok(FairnessReport {
                    property: Property::Po,
                    holds: po,
                    violations: if po {
                        Vec::new()
                    } else {
                        vec![Violation {
                            agent: 0,
                            counterpart: None,
                            explanation: "another allocation Pareto dominates this one"
                                .to_string(),
                        }]
                    },
                }),
                Err(err) => {
                    eprintln!("not applicable: {err}");
                    return EXIT_NOT_APPLICABLE;
                }
            },
        },
        CheckProperty::Mms => {
            let mu = match mu_for(&inst, args.budget) {
                Ok(mu) => mu,
                Err(code) => return code,
            };
            check_alpha_mms(&inst, &alloc, Alpha::one(), &mu)
        }
        CheckProperty::AlphaMms => {
            let alpha = match parse_alpha(args.alpha.as_deref()) {
                Ok(alpha) => alpha,
                Err(code) => return code,
            };
            let mu = match mu_for(&inst, args.budget) {
                Ok(mu) => mu,
                Err(code) => return code,
            };
            check_alpha_mms(&inst, &alloc, alpha, &mu)
        }
        CheckProperty::Sequencible => {
            return match check_sequencible(&inst, &alloc) {
                Ok(SeqVerdict::Sequencible(seq)) => {
                    if args.json {
                        println!("{}", json!({"sequencible": true, "sequence": seq}));
                    } else {
                        println!("sequencible via {seq:?}");
                    }
                    EXIT_HOLDS
                }
                Ok(SeqVerdict::NotSequencible) => {
                    if args.json {
                        println!("{}", json!({"sequencible": false}));
                    } else {
                        println!("not sequencible");
                    }
                    EXIT_FAILS
                }
                Err(err) => check_error_exit(err),
            };
        }
    };
    match report {
        Ok(report) => report_exit(&report, args.json),
        Err(err) => check_error_exit(err),
    }
}

fn outcome_exit(inst: &Instance, outcome: &SolveOutcome, args_json: bool, output: Option<&Path>) -> u8 {
    if let (Some(path), Some(witness)) = (output, &outcome.witness) {
        if let Err(e) = std::fs::write(path, serialize_allocation(inst, witness)) {
            return fail_input(format!("{}: {e}", path.display()));
        }
    }
    if args_json {
        println!("{}", outcome_to_json(inst, outcome));
    } else {
        println!("{}: {}", outcome.status, outcome.note);
        if let Some(witness) = &outcome.witness {
            println!("{}", serialize_allocation(inst, witness));
        }
    }
    match outcome.status {
        SolveStatus::Witness => EXIT_HOLDS,
        SolveStatus::NoneExists => EXIT_FAILS,
        SolveStatus::NotApplicable => EXIT_NOT_APPLICABLE,
    }
}

/// Completion handing every unallocated good to an approver (agent 0 when
/// nobody approves); paired with a PO pre-check this solves the pure PO
/// completion problem for binary valuations.
fn binary_po_completion(inst: &Instance) -> SolveOutcome {
    let frozen_report = check_po_binary(inst, &inst.frozen_allocation()).expect("binary");
    if !frozen_report.holds {
        return SolveOutcome::none_exists(
            "binary approver routing (po): frozen allocation is not Pareto optimal",
        );
    }
    let one = faircomp_core::BigUint::from(1u8);
    let mut bundles = vec![BTreeSet::new(); inst.n_agents()];
    for g in inst.unallocated() {
        let approver = (0..inst.n_agents()).find(|&i| inst.item_value(i, g) == &one);
        bundles[approver.unwrap_or(0)].insert(g);
    }
    let completion = Completion::new(inst, bundles).expect("covers U");
    SolveOutcome::witness(
        merge_allocation(inst, &completion),
        "binary approver routing (po)",
    )
}

/// Any completion is PROP1 under lexicographic valuations; hand everything
/// to agent 0.
fn lex_prop1_completion(inst: &Instance) -> SolveOutcome {
    let mut bundles = vec![BTreeSet::new(); inst.n_agents()];
    for g in inst.unallocated() {
        bundles[0].insert(g);
    }
    let completion = Completion::new(inst, bundles).expect("covers U");
    SolveOutcome::witness(
        merge_allocation(inst, &completion),
        "every lexicographic allocation is prop1",
    )
}

fn dump_threshold_network(inst: &Instance, mode: ThresholdMode) {
    let threshold = match faircomp_core::solvers::build_threshold_network(inst, mode) {
        Ok(t) => t,
        Err(_) => return,
    };
    let net = &threshold.network;
    let arcs: Vec<serde_json::Value> = net
        .arcs()
        .iter()
        .map(|arc| {
            json!({
                "from": arc.from,
                "to": arc.to,
                "capacity": arc.capacity,
                "lower": arc.lower,
            })
        })
        .collect();
    eprintln!(
        "{}",
        json!({
            "nodes": net.node_count(),
            "source": net.source(),
            "sink": net.sink(),
            "agent_quotas": threshold.quotas,
            "arcs": arcs,
        })
    );
}

fn run_solve(args: SolveArgs) -> u8 {
    let inst = match load_instance(&args.instance) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    if args.dump_network && inst.class() == ValuationClass::Binary {
        match args.property {
            SolveProperty::Mms => dump_threshold_network(&inst, ThresholdMode::Mms),
            SolveProperty::Prop1 => dump_threshold_network(&inst, ThresholdMode::Prop1),
            _ => {}
        }
    }
    let budgets = OracleBudgets {
        enumeration: args.budget,
        po: args.budget,
    };
    let oracle_props = |base: Property, po: bool| {
        let mut props = vec![base];
        if po {
            props.push(Property::Po);
        }
        props
    };
    let outcome = if args.force_oracle {
        let base = match args.property {
            SolveProperty::Ef1 => Property::Ef1,
            SolveProperty::Prop1 => Property::Prop1,
            SolveProperty::Mms => Property::Mms,
            SolveProperty::Po => Property::Po,
        };
        let props = if args.property == SolveProperty::Po {
            vec![Property::Po]
        } else {
            oracle_props(base, args.po)
        };
        oracle_solve(&inst, &props, budgets)
    } else {
        match (inst.class(), args.property) {
            (ValuationClass::Binary, SolveProperty::Mms) => {
                solve_threshold_binary(&inst, ThresholdMode::Mms, args.po).expect("binary")
            }
            (ValuationClass::Binary, SolveProperty::Prop1) => {
                solve_threshold_binary(&inst, ThresholdMode::Prop1, args.po).expect("binary")
            }
            (ValuationClass::Binary, SolveProperty::Po) => binary_po_completion(&inst),
            (ValuationClass::Binary, SolveProperty::Ef1) => {
                oracle_solve(&inst, &oracle_props(Property::Ef1, args.po), budgets)
            }
            (ValuationClass::Lexicographic, SolveProperty::Po) => {
                solve_po_lex(&inst).expect("lexicographic")
            }
            (ValuationClass::Lexicographic, SolveProperty::Prop1) => {
                if args.po {
                    solve_prop1_po_lex(&inst).expect("lexicographic")
                } else {
                    lex_prop1_completion(&inst)
                }
            }
            (ValuationClass::Lexicographic, SolveProperty::Mms) => {
                if args.po {
                    oracle_solve(&inst, &[Property::Mms, Property::Po], budgets)
                } else {
                    solve_mms_lex(&inst).expect("lexicographic")
                }
            }
            (ValuationClass::Lexicographic, SolveProperty::Ef1) => {
                oracle_solve(&inst, &oracle_props(Property::Ef1, args.po), budgets)
            }
            (ValuationClass::Additive, SolveProperty::Ef1) => {
                if args.po {
                    oracle_solve(&inst, &[Property::Ef1, Property::Po], budgets)
                } else {
                    let acyclic = solve_ef1_acyclic(&inst);
                    if acyclic.status != SolveStatus::NotApplicable {
                        acyclic
                    } else {
                        let identical = solve_two_identical(&inst, TwoIdenticalMode::Ef1);
                        if identical.status != SolveStatus::NotApplicable {
                            identical
                        } else {
                            oracle_solve(&inst, &[Property::Ef1], budgets)
                        }
                    }
                }
            }
            (ValuationClass::Additive, SolveProperty::Prop1) => {
                if args.po {
                    oracle_solve(&inst, &[Property::Prop1, Property::Po], budgets)
                } else {
                    let identical = solve_two_identical(&inst, TwoIdenticalMode::Prop1);
                    if identical.status != SolveStatus::NotApplicable {
                        identical
                    } else {
                        oracle_solve(&inst, &[Property::Prop1], budgets)
                    }
                }
            }
            (ValuationClass::Additive, SolveProperty::Mms) => {
                oracle_solve(&inst, &oracle_props(Property::Mms, args.po), budgets)
            }
            (ValuationClass::Additive, SolveProperty::Po) => {
                oracle_solve(&inst, &[Property::Po], budgets)
            }
        }
    };
    outcome_exit(&inst, &outcome, args.json, args.output.as_deref())
}

fn run_mms_value(args: MmsValueArgs) -> u8 {
    let inst = match load_instance(&args.instance) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let mut mu_numbers = Vec::new();
    let mut witnesses = Vec::new();
    for agent in 0..inst.n_agents() {
        let result = match inst.class() {
            ValuationClass::Binary => mms_value_binary(&inst, agent).expect("binary"),
            ValuationClass::Lexicographic => mms_value_lex(&inst, agent).expect("lexicographic"),
            ValuationClass::Additive => {
                match mms_value_bruteforce(&inst, agent, args.budget) {
                    Ok(result) => result,
                    Err(err) => {
                        eprintln!("not applicable: {err}");
                        return EXIT_NOT_APPLICABLE;
                    }
                }
            }
        };
        mu_numbers.push(serde_json::Number::from_string_unchecked(
            result.mu.to_string(),
        ));
        witnesses.push(
            serde_json::from_str::<serde_json::Value>(&serialize_allocation(
                &inst,
                &result.witness,
            ))
            .expect("allocation serializes"),
        );
    }
    if args.json {
        println!("{}", json!({"mu": mu_numbers, "witness_partitions": witnesses}));
    } else {
        for (agent, mu) in mu_numbers.iter().enumerate() {
            println!("agent {agent}: mu = {mu}");
        }
    }
    EXIT_HOLDS
}

fn split_csv(text: &str) -> Vec<String> {
    text.split(',')
        .map(|part| part.trim().to_string())
        .filter(|part| !part.is_empty())
        .collect()
}

fn run_generate(args: GenerateArgs) -> u8 {
    let instance = match args.family {
        Family::Partition => {
            let Some(weights) = &args.weights else {
                return fail_input("--weights is required for the partition family");
            };
            let weights: Result<Vec<u64>, _> =
                split_csv(weights).iter().map(|w| w.parse()).collect();
            let Ok(weights) = weights else {
                return fail_input("weights must be positive integers");
            };
            let Some(variant) = args.variant else {
                return fail_input("--variant is required for the partition family");
            };
            match PartitionReduction::new(&weights, variant.into()) {
                Ok(reduction) => reduction.instance,
                Err(e) => return fail_input(e),
            }
        }
        Family::EquitableColoring => {
            let vertices = split_csv(args.vertices.as_deref().unwrap_or(""));
            let Some(k) = args.colors else {
                return fail_input("--colors is required for equitable coloring");
            };
            let mut edges = Vec::new();
            for edge in split_csv(args.edges.as_deref().unwrap_or("")) {
                let Some((u, v)) = edge.split_once('-') else {
                    return fail_input(format!("edge {edge:?} must be of the form a-b"));
                };
                let find = |name: &str| vertices.iter().position(|x| x == name);
                match (find(u), find(v)) {
                    (Some(u), Some(v)) => edges.push((u, v)),
                    _ => return fail_input(format!("edge {edge:?} names an unknown vertex")),
                }
            }
            let graph = match Graph::new(vertices, edges) {
                Ok(graph) => graph,
                Err(e) => return fail_input(e),
            };
            match EquitableColoringReduction::new(&graph, k) {
                Ok(reduction) => reduction.instance,
                Err(e) => return fail_input(e),
            }
        }
        Family::RainbowColoring => {
            let vertices = split_csv(args.vertices.as_deref().unwrap_or(""));
            let Some(k) = args.colors else {
                return fail_input("--colors is required for rainbow coloring");
            };
            let mut edges = Vec::new();
            for edge in split_csv(args.hyperedges.as_deref().unwrap_or("")) {
                let mut members = Vec::new();
                for name in edge.split('+') {
                    match vertices.iter().position(|x| x == name.trim()) {
                        Some(v) => members.push(v),
                        None => {
                            return fail_input(format!(
                                "hyperedge {edge:?} names an unknown vertex"
                            ))
                        }
                    }
                }
                edges.push(members);
            }
            let hypergraph = match Hypergraph::new(vertices, edges) {
                Ok(h) => h,
                Err(e) => return fail_input(e),
            };
            match RainbowColoringReduction::new(&hypergraph, k) {
                Ok(reduction) => reduction.instance,
                Err(e) => return fail_input(e),
            }
        }
        Family::NoMmsLex => no_mms_lex(),
        Family::NoAlphaMmsAdditive => {
            let alpha = match parse_alpha(args.alpha.as_deref()) {
                Ok(alpha) => alpha,
                Err(code) => return code,
            };
            match no_alpha_mms_additive(alpha, args.ell) {
                Ok(inst) => inst,
                Err(e) => return fail_input(e),
            }
        }
        Family::NoAlphaMmsBinary => {
            let alpha = match parse_alpha(args.alpha.as_deref()) {
                Ok(alpha) => alpha,
                Err(code) => return code,
            };
            match no_alpha_mms_binary(alpha, args.agents) {
                Ok(inst) => inst,
                Err(e) => return fail_input(e),
            }
        }
        Family::MnwNotEf1 => mnw_not_ef1(),
    };
    let text = serialize_instance(&instance);
    match &args.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                return fail_input(format!("{}: {e}", path.display()));
            }
        }
        None => println!("{text}"),
    }
    EXIT_HOLDS
}

fn run_oracle(args: OracleArgs) -> u8 {
    let inst = match load_instance(&args.instance) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let mut properties = Vec::new();
    for name in split_csv(&args.properties) {
        let property = match name.as_str() {
            "ef" => Property::Ef,
            "ef1" => Property::Ef1,
            "prop" => Property::Prop,
            "prop1" => Property::Prop1,
            "mms" => Property::Mms,
            "alpha-mms" | "alpha_mms" => {
                let alpha = match parse_alpha(args.alpha.as_deref()) {
                    Ok(alpha) => alpha,
                    Err(code) => return code,
                };
                Property::AlphaMms(alpha)
            }
            "po" => Property::Po,
            "mnw" => Property::Mnw,
            other => return fail_input(format!("unknown property {other:?}")),
        };
        properties.push(property);
    }
    if properties.is_empty() {
        return fail_input("at least one property is required");
    }
    let outcome = oracle_solve(
        &inst,
        &properties,
        OracleBudgets {
            enumeration: args.budget,
            po: args.po_budget,
        },
    );
    outcome_exit(&inst, &outcome, args.json, None)
}

fn run_verify(args: VerifyArgs) -> u8 {
    if args.list {
        for (name, _) in sweeps::TARGETS {
            println!("{name}");
        }
        return EXIT_HOLDS;
    }
    let selected: Vec<&str> = if args.target == "all" {
        sweeps::TARGETS.iter().map(|(name, _)| *name).collect()
    } else {
        vec![args.target.as_str()]
    };
    let mut all_passed = true;
    for name in selected {
        let Some(outcome) = sweeps::run_target(name, args.cases, args.seed) else {
            return fail_input(format!(
                "unknown sweep {name:?}; --list shows the available names"
            ));
        };
        if outcome.passed() {
            println!("{}: PASS ({} cases)", outcome.name, outcome.cases);
        } else {
            all_passed = false;
            println!(
                "{}: FAIL ({} cases, {} mismatches)",
                outcome.name,
                outcome.cases,
                outcome.failures.len()
            );
            for failure in outcome.failures.iter().take(3) {
                println!("  {failure}");
            }
        }
    }
    if all_passed {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}
