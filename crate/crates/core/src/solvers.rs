//! Polynomial-time completion solvers, dispatched by valuation class and
//! target property.
//!
//! Binary instances route threshold properties (MMS, PROP1, and their PO
//! combinations) through a flow network with lower quotas; lexicographic
//! instances use picking-sequence extension for PO and a matching
//! construction for MMS; general additive instances get structural solvers
//! whose preconditions (acyclic envy graph, two identical agents) make the
//! problem tractable.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::checkers::{self, check_po_binary, check_sequencible, SeqVerdict};
use crate::graphs::{feasible_flow_with_quotas, matching_covering_left, BipartiteGraph, QuotaNetwork};
use crate::mms::{mms_value_binary, mms_value_lex};
use crate::model::{Instance, PartialAllocation, SolveOutcome, ValuationClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    WrongClass {
        expected: ValuationClass,
        found: ValuationClass,
    },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::WrongClass { expected, found } => {
                write!(f, "expected {expected} valuations, found {found}")
            }
        }
    }
}

impl core::error::Error for SolveError {}

fn require_class(inst: &Instance, expected: ValuationClass) -> Result<(), SolveError> {
    if inst.class() != expected {
        return Err(SolveError::WrongClass {
            expected,
            found: inst.class(),
        });
    }
    Ok(())
}

fn small(value: &BigUint) -> u64 {
    u64::try_from(value).expect("value fits in a machine word")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMode {
    Mms,
    Prop1,
}

/// The flow network a binary threshold solve runs on, kept around so
/// callers can inspect or dump it.
pub struct ThresholdNetwork {
    pub network: QuotaNetwork,
    /// per-agent lower quota on the arc into the sink
    pub quotas: Vec<u64>,
    /// (arc index, good, agent) for every approval arc
    pub approval_arcs: Vec<(usize, usize, usize)>,
}

/// Builds the quota network for the binary MMS / PROP1 completion decision.
///
/// Each unallocated good feeds a unit arc from the source; approval arcs
/// connect goods to agents; each agent's arc to the sink carries a lower
/// quota equal to the value it still needs. For PROP1 the quota is
/// ceil(v_i(M)/n) - 1 - v_i(F_i), capped at the agent's approved unallocated
/// count when no good it approves is frozen elsewhere (in that case handing
/// it everything it approves satisfies PROP1 outright).
pub fn build_threshold_network(
    inst: &Instance,
    mode: ThresholdMode,
) -> Result<ThresholdNetwork, SolveError> {
    require_class(inst, ValuationClass::Binary)?;
    let n = inst.n_agents();
    let frozen = inst.frozen_allocation();
    let unalloc = inst.unallocated();
    let one = BigUint::from(1u8);

    let mut quotas = Vec::with_capacity(n);
    for i in 0..n {
        let have = small(&inst.bundle_value(i, frozen.bundle(i)));
        let quota = match mode {
            ThresholdMode::Mms => {
                let mu = small(&mms_value_binary(inst, i).expect("binary class verified").mu);
                mu.saturating_sub(have)
            }
            ThresholdMode::Prop1 => {
                let total = small(&inst.total_value(i));
                let threshold = total.div_ceil(n as u64).saturating_sub(1);
                let mut quota = threshold.saturating_sub(have);
                let frozen_elsewhere = (0..inst.m()).any(|g| {
                    inst.item_value(i, g) == &one
                        && inst.frozen_owner(g).is_some_and(|owner| owner != i)
                });
                if !frozen_elsewhere {
                    let approved_unalloc = unalloc
                        .iter()
                        .filter(|&&g| inst.item_value(i, g) == &one)
                        .count() as u64;
                    quota = quota.min(approved_unalloc);
                }
                quota
            }
        };
        quotas.push(quota);
    }

    // nodes: 0 source, 1 sink, then goods, then agents
    let good_node = |slot: usize| 2 + slot;
    let agent_node = |agent: usize| 2 + unalloc.len() + agent;
    let mut network = QuotaNetwork::new(2 + unalloc.len() + n, 0, 1);
    let mut approval_arcs = Vec::new();
    for (slot, &g) in unalloc.iter().enumerate() {
        network.add_arc(0, good_node(slot), Some(1), 0);
        for i in 0..n {
            if inst.item_value(i, g) == &one {
                let arc = network.add_arc(good_node(slot), agent_node(i), Some(1), 0);
                approval_arcs.push((arc, g, i));
            }
        }
    }
    for (i, &quota) in quotas.iter().enumerate() {
        network.add_arc(agent_node(i), 1, None, quota);
    }
    Ok(ThresholdNetwork {
        network,
        quotas,
        approval_arcs,
    })
}

/// Exact MMS / PROP1 completion for binary valuations via feasible flow with
/// lower quotas (see [`build_threshold_network`] for the construction).
/// With `require_po`, the frozen allocation must itself be Pareto optimal;
/// completions already route goods to approvers only.
pub fn solve_threshold_binary(
    inst: &Instance,
    mode: ThresholdMode,
    require_po: bool,
) -> Result<SolveOutcome, SolveError> {
    require_class(inst, ValuationClass::Binary)?;
    let n = inst.n_agents();
    let label = match (mode, require_po) {
        (ThresholdMode::Mms, false) => "binary flow (mms)",
        (ThresholdMode::Mms, true) => "binary flow (mms+po)",
        (ThresholdMode::Prop1, false) => "binary flow (prop1)",
        (ThresholdMode::Prop1, true) => "binary flow (prop1+po)",
    };

    if require_po && !check_po_binary(inst, &inst.frozen_allocation()).expect("binary").holds {
        return Ok(SolveOutcome::none_exists(format!(
            "{label}: frozen allocation is not Pareto optimal, no completion can be"
        )));
    }

    let threshold = build_threshold_network(inst, mode)?;
    let Some(flow) = feasible_flow_with_quotas(&threshold.network) else {
        return Ok(SolveOutcome::none_exists(format!(
            "{label}: no flow meets every agent's quota"
        )));
    };

    let one = BigUint::from(1u8);
    let mut witness = inst.frozen_allocation();
    let mut routed = BTreeSet::new();
    for &(arc, g, agent) in &threshold.approval_arcs {
        if flow.arc_flows[arc] == 1 {
            witness.insert(agent, g);
            routed.insert(g);
        }
    }
    for g in inst.unallocated() {
        if routed.contains(&g) {
            continue;
        }
        let approver = (0..n).find(|&i| inst.item_value(i, g) == &one);
        witness.insert(approver.unwrap_or(0), g);
    }
    Ok(SolveOutcome::witness(witness, label))
}

/// Guaranteed MMS+PO completion for binary valuations when the frozen
/// allocation is Pareto optimal over the frozen goods: agents take their
/// missing value greedily in ascending order of maximin share, and leftovers
/// go to approvers.
pub fn solve_mms_po_guaranteed_binary(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    require_class(inst, ValuationClass::Binary)?;
    let frozen = inst.frozen_allocation();
    if !check_po_binary(inst, &frozen).expect("binary").holds {
        return Ok(SolveOutcome::not_applicable(
            "binary greedy (mms+po): frozen allocation is not Pareto optimal over the frozen goods",
        ));
    }
    let n = inst.n_agents();
    let one = BigUint::from(1u8);

    let mut order: Vec<(BigUint, usize)> = (0..n)
        .map(|i| (mms_value_binary(inst, i).expect("binary class verified").mu, i))
        .collect();
    order.sort();

    let mut witness = frozen;
    let mut pool: BTreeSet<usize> = inst.unallocated().into_iter().collect();
    for (mu, agent) in order {
        let have = small(&inst.bundle_value(agent, witness.bundle(agent)));
        let mut need = small(&mu).saturating_sub(have);
        let approved: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|&g| inst.item_value(agent, g) == &one)
            .collect();
        for g in approved {
            if need == 0 {
                break;
            }
            pool.remove(&g);
            witness.insert(agent, g);
            need -= 1;
        }
        // a PO frozen allocation always leaves enough approved goods for the
        // next agent in ascending maximin order
        debug_assert_eq!(need, 0, "agent {agent} ran out of approved goods");
    }
    for g in pool {
        let approver = (0..n).find(|&i| inst.item_value(i, g) == &one);
        witness.insert(approver.unwrap_or(0), g);
    }
    Ok(SolveOutcome::witness(witness, "binary greedy (mms+po)"))
}

/// Simulates a picking sequence on `goods` and reports the turn at which
/// `target` gets picked, if any.
fn run_sequence_until_pick(
    inst: &Instance,
    sequence: &[usize],
    goods: &BTreeSet<usize>,
    target: usize,
) -> Option<usize> {
    let mut available = goods.clone();
    for (turn, &agent) in sequence.iter().enumerate() {
        let ranking = inst.ranking(agent).expect("lexicographic instance");
        let top = ranking
            .iter()
            .copied()
            .find(|g| available.contains(g))
            .expect("sequence never outruns the goods");
        if top == target {
            return Some(turn);
        }
        available.remove(&top);
    }
    None
}

/// PO completion for lexicographic valuations: a PO allocation is exactly a
/// sequencible one, so the solver derives a picking sequence for the frozen
/// allocation (failing exactly when none exists) and then extends it good by
/// good, duplicating the turn of whichever agent grabs the new good.
pub fn solve_po_lex(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    require_class(inst, ValuationClass::Lexicographic)?;
    let frozen = inst.frozen_allocation();
    let verdict = check_sequencible(inst, &frozen).expect("rankings are strict");
    let mut sequence = match verdict {
        SeqVerdict::NotSequencible => {
            return Ok(SolveOutcome::none_exists(
                "lex sequence extension (po): frozen allocation is not sequencible",
            ))
        }
        SeqVerdict::Sequencible(seq) => seq,
    };

    let mut witness = frozen;
    let mut allocated = witness.allocated_goods();
    for g_star in inst.unallocated() {
        allocated.insert(g_star);
        match run_sequence_until_pick(inst, &sequence, &allocated, g_star) {
            Some(turn) => {
                let agent = sequence[turn];
                witness.insert(agent, g_star);
                sequence.insert(turn + 1, agent);
            }
            None => {
                let agent = sequence.first().copied().unwrap_or(0);
                witness.insert(agent, g_star);
                sequence.push(agent);
            }
        }
    }
    debug_assert!(matches!(
        check_sequencible(inst, &witness),
        Ok(SeqVerdict::Sequencible(_))
    ));
    Ok(SolveOutcome::witness(witness, "lex sequence extension (po)"))
}

/// PROP1+PO completion for lexicographic valuations. Every lexicographic
/// allocation is PROP1 (an agent either holds its favorite good, which
/// outweighs everything else combined, or can hypothetically add it), so the
/// verdict coincides with the PO solver's.
pub fn solve_prop1_po_lex(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    let mut outcome = solve_po_lex(inst)?;
    outcome.note = format!("prop1 holds for every lexicographic allocation; {}", outcome.note);
    Ok(outcome)
}

/// MMS completion for lexicographic valuations.
///
/// Agents already at or above their maximin share drop out of the demand
/// side. Each remaining agent can be satisfied by a single good (any `g`
/// with v_i(F_i + g) >= mu_i) or, for at most one agent, by the exact
/// bottom segment of its unallocated ranking whose value lands on mu_i.
/// A matching covering the demanding agents decides the single-good case;
/// otherwise each candidate for the segment role is tried in turn. Leftover
/// goods ride along on agent 0's bundle, which values are monotone under.
pub fn solve_mms_lex(inst: &Instance) -> Result<SolveOutcome, SolveError> {
    require_class(inst, ValuationClass::Lexicographic)?;
    let n = inst.n_agents();
    let frozen = inst.frozen_allocation();
    let unalloc = inst.unallocated();
    let label = "lex matching (mms)";

    let mu: Vec<BigUint> = (0..n)
        .map(|i| mms_value_lex(inst, i).expect("lexicographic class verified").mu)
        .collect();
    let frozen_values: Vec<BigUint> = (0..n)
        .map(|i| inst.bundle_value(i, frozen.bundle(i)))
        .collect();
    let demanding: Vec<usize> = (0..n).filter(|&i| mu[i] > frozen_values[i]).collect();

    let finish = |mut witness: PartialAllocation, taken: &BTreeSet<usize>| {
        for &g in &unalloc {
            if !taken.contains(&g) {
                witness.insert(0, g);
            }
        }
        witness
    };

    if demanding.is_empty() {
        let witness = finish(frozen.clone(), &BTreeSet::new());
        return Ok(SolveOutcome::witness(witness, label));
    }

    // single goods that lift agent i to its maximin share
    let singles: Vec<BTreeSet<usize>> = demanding
        .iter()
        .map(|&i| {
            unalloc
                .iter()
                .copied()
                .filter(|&g| &frozen_values[i] + inst.item_value(i, g) >= mu[i])
                .collect()
        })
        .collect();
    // the bottom segment of i's unallocated ranking hitting mu_i exactly
    let segments: Vec<Option<BTreeSet<usize>>> = demanding
        .iter()
        .map(|&i| {
            let order: Vec<usize> = inst
                .ranking(i)
                .expect("lexicographic instance")
                .iter()
                .copied()
                .filter(|g| unalloc.contains(g))
                .collect();
            let mut suffix = BTreeSet::new();
            let mut value = frozen_values[i].clone();
            for &g in order.iter().rev() {
                suffix.insert(g);
                value += inst.item_value(i, g);
                if value == mu[i] {
                    return Some(suffix);
                }
                if value > mu[i] {
                    return None;
                }
            }
            None
        })
        .collect();

    let try_matching = |skip: Option<usize>, blocked: &BTreeSet<usize>| -> Option<PartialAllocation> {
        let left: Vec<usize> = (0..demanding.len()).filter(|&d| Some(d) != skip).collect();
        let rights: Vec<usize> = unalloc
            .iter()
            .copied()
            .filter(|g| !blocked.contains(g))
            .collect();
        let mut graph = BipartiteGraph::new(left.len(), rights.len());
        for (li, &d) in left.iter().enumerate() {
            for (ri, g) in rights.iter().enumerate() {
                if singles[d].contains(g) {
                    graph.add_edge(li, ri);
                }
            }
        }
        let matching = matching_covering_left(&graph)?;
        let mut witness = frozen.clone();
        let mut taken = blocked.clone();
        for (li, &d) in left.iter().enumerate() {
            let g = rights[matching[li]];
            witness.insert(demanding[d], g);
            taken.insert(g);
        }
        if let Some(d) = skip {
            for &g in segments[d].as_ref().expect("segment candidate") {
                witness.insert(demanding[d], g);
            }
        }
        Some(finish(witness, &taken))
    };

    if let Some(witness) = try_matching(None, &BTreeSet::new()) {
        return Ok(SolveOutcome::witness(witness, label));
    }
    for d in 0..demanding.len() {
        if let Some(segment) = &segments[d] {
            if let Some(witness) = try_matching(Some(d), segment) {
                return Ok(SolveOutcome::witness(witness, label));
            }
        }
    }
    Ok(SolveOutcome::none_exists(format!(
        "{label}: no assignment covers every agent still below its maximin share"
    )))
}

/// Round robin over the goods missing from `base`, following `order`
/// cyclically; each agent picks its most valuable remaining good (lowest
/// index on ties).
fn round_robin_complete(
    inst: &Instance,
    base: &PartialAllocation,
    order: &[usize],
) -> PartialAllocation {
    let mut witness = base.clone();
    let allocated = base.allocated_goods();
    let mut remaining: BTreeSet<usize> =
        (0..inst.m()).filter(|g| !allocated.contains(g)).collect();
    let mut turn = 0;
    while !remaining.is_empty() {
        let agent = order[turn % order.len()];
        let pick = remaining
            .iter()
            .copied()
            .max_by(|&a, &b| {
                inst.item_value(agent, a)
                    .cmp(inst.item_value(agent, b))
                    .then(b.cmp(&a))
            })
            .expect("remaining is nonempty");
        witness.insert(agent, pick);
        remaining.remove(&pick);
        turn += 1;
    }
    witness
}

/// EF1 completion via topological round robin, applicable whenever the
/// frozen allocation is EF1 (as a partial allocation) and its envy graph is
/// acyclic. Enviers pick before the agents they envy.
pub fn solve_ef1_acyclic(inst: &Instance) -> SolveOutcome {
    let frozen = inst.frozen_allocation();
    if !checkers::ef1_envy_pairs(inst, &frozen).is_empty() {
        return SolveOutcome::not_applicable(
            "round robin (ef1): frozen allocation is not EF1",
        );
    }
    let graph = checkers::build_envy_graph(inst, &frozen);
    let Some(order) = graph.topological_order() else {
        return SolveOutcome::not_applicable(
            "round robin (ef1): envy graph of the frozen allocation has a cycle",
        );
    };
    let witness = round_robin_complete(inst, &frozen, &order);
    SolveOutcome::witness(witness, "round robin (ef1)")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoIdenticalMode {
    Ef1,
    Prop1,
}

/// Exact EF1 / PROP1 completion for two agents with identical additive
/// valuations: if the frozen allocation already satisfies the target, a
/// topological round robin finishes the job; otherwise goods pour into the
/// disadvantaged agent until the threshold is met (running out of goods
/// certifies non-existence).
pub fn solve_two_identical(inst: &Instance, mode: TwoIdenticalMode) -> SolveOutcome {
    let label = match mode {
        TwoIdenticalMode::Ef1 => "two identical agents (ef1)",
        TwoIdenticalMode::Prop1 => "two identical agents (prop1)",
    };
    if inst.n_agents() != 2 {
        return SolveOutcome::not_applicable(format!("{label}: needs exactly two agents"));
    }
    if inst.item_values(0) != inst.item_values(1) {
        return SolveOutcome::not_applicable(format!("{label}: valuations differ"));
    }

    let complete_from = |partial: &PartialAllocation| {
        let order = checkers::build_envy_graph(inst, partial)
            .topological_order()
            .expect("identical valuations cannot produce an envy cycle");
        round_robin_complete(inst, partial, &order)
    };

    match mode {
        TwoIdenticalMode::Ef1 => {
            let mut partial = inst.frozen_allocation();
            let envy = checkers::ef1_envy_pairs(inst, &partial);
            if let Some(&(envier, envied)) = envy.first() {
                let mut pool = inst.unallocated().into_iter();
                while !checkers::ef1_envy_pairs(inst, &partial).is_empty() {
                    match pool.next() {
                        Some(g) => partial.insert(envier, g),
                        None => {
                            return SolveOutcome::none_exists(format!(
                                "{label}: agent {envier} EF1-envies agent {envied} even after \
                                 receiving every unallocated good"
                            ))
                        }
                    }
                }
            }
            SolveOutcome::witness(complete_from(&partial), label)
        }
        TwoIdenticalMode::Prop1 => {
            // PROP1 restricted to the goods allocated so far; with two
            // agents at most one side can violate it.
            let violator = |partial: &PartialAllocation| -> Option<usize> {
                let allocated = partial.allocated_goods();
                let total: BigUint = allocated
                    .iter()
                    .map(|&g| inst.item_value(0, g))
                    .sum();
                (0..2).find(|&i| {
                    let own = inst.bundle_value(i, partial.bundle(i));
                    let boost = partial
                        .bundle(1 - i)
                        .iter()
                        .map(|&g| inst.item_value(i, g))
                        .max()
                        .cloned()
                        .unwrap_or(BigUint::ZERO);
                    (own + boost) * 2u8 < total
                })
            };
            let mut partial = inst.frozen_allocation();
            if let Some(agent) = violator(&partial) {
                let mut pool = inst.unallocated().into_iter();
                while violator(&partial) == Some(agent) {
                    match pool.next() {
                        Some(g) => partial.insert(agent, g),
                        None => {
                            return SolveOutcome::none_exists(format!(
                                "{label}: agent {agent} stays below its proportional share \
                                 even after receiving every unallocated good"
                            ))
                        }
                    }
                }
            }
            SolveOutcome::witness(complete_from(&partial), label)
        }
    }
}
