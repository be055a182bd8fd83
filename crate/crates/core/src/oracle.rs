//! Exhaustive ground-truth engine: enumerate completions, decide any
//! property combination exactly at desk scale, and compute MNW/PO/MMS
//! references.
//!
//! Verdicts are exact within the configured budgets; the first witness in
//! lexicographic completion order is always the one returned, so results are
//! reproducible bit for bit.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::checkers::Property;
use crate::mms::{self, enumeration_states, MmsError};
use crate::model::{Alpha, Completion, Instance, PartialAllocation, SolveOutcome};

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;
pub const DEFAULT_PO_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudgets {
    /// Cap on completion states (n^|U|), also used for brute-force mu.
    pub enumeration: u64,
    /// Cap on the number of complete allocations enumerated for Pareto
    /// dominance checks (n^m).
    pub po: u64,
}

impl Default for OracleBudgets {
    fn default() -> Self {
        OracleBudgets {
            enumeration: DEFAULT_ENUMERATION_BUDGET,
            po: DEFAULT_PO_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    BudgetExceeded { states: u128, budget: u64 },
    IncompleteAllocation,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded { states, budget } => {
                write!(f, "enumeration needs {states} states, budget is {budget}")
            }
            OracleError::IncompleteAllocation => write!(f, "allocation is not complete"),
        }
    }
}

impl core::error::Error for OracleError {}

impl From<MmsError> for OracleError {
    fn from(err: MmsError) -> Self {
        match err {
            MmsError::BudgetExceeded { states, budget } => {
                OracleError::BudgetExceeded { states, budget }
            }
            MmsError::WrongClass { .. } => unreachable!("brute force accepts every class"),
        }
    }
}

/// Streams every assignment of the unallocated goods to agents exactly once,
/// in lexicographic index order (the first unallocated good varies slowest).
pub fn enumerate_completions(
    inst: &Instance,
    budget: u64,
) -> Result<CompletionIter<'_>, OracleError> {
    let unalloc = inst.unallocated();
    enumeration_states(inst.n_agents(), unalloc.len(), budget)?;
    let digits = alloc::vec![0usize; unalloc.len()];
    Ok(CompletionIter {
        inst,
        unalloc,
        digits,
        started: false,
        done: false,
    })
}

pub struct CompletionIter<'a> {
    inst: &'a Instance,
    unalloc: Vec<usize>,
    digits: Vec<usize>,
    started: bool,
    done: bool,
}

impl Iterator for CompletionIter<'_> {
    type Item = Completion;

    fn next(&mut self) -> Option<Completion> {
        if self.done {
            return None;
        }
        if self.started {
            // odometer increment, least significant digit last
            let n = self.inst.n_agents();
            let mut pos = self.digits.len();
            loop {
                if pos == 0 {
                    self.done = true;
                    return None;
                }
                pos -= 1;
                self.digits[pos] += 1;
                if self.digits[pos] < n {
                    break;
                }
                self.digits[pos] = 0;
            }
        } else {
            self.started = true;
        }
        let mut bundles = alloc::vec![BTreeSet::new(); self.inst.n_agents()];
        for (slot, &agent) in self.digits.iter().enumerate() {
            bundles[agent].insert(self.unalloc[slot]);
        }
        Some(Completion::new(self.inst, bundles).expect("enumerated completion is valid"))
    }
}

/// Requested properties in a canonical form.
struct PropSet {
    ef: bool,
    ef1: bool,
    prop: bool,
    prop1: bool,
    alphas: Vec<Alpha>,
    po: bool,
    mnw: bool,
}

impl PropSet {
    fn from_slice(properties: &[Property]) -> Result<Self, String> {
        let mut set = PropSet {
            ef: false,
            ef1: false,
            prop: false,
            prop1: false,
            alphas: Vec::new(),
            po: false,
            mnw: false,
        };
        for p in properties {
            match p {
                Property::Ef => set.ef = true,
                Property::Ef1 => set.ef1 = true,
                Property::Prop => set.prop = true,
                Property::Prop1 => set.prop1 = true,
                Property::Mms => set.alphas.push(Alpha::one()),
                Property::AlphaMms(a) => set.alphas.push(*a),
                Property::Po => set.po = true,
                Property::Mnw => set.mnw = true,
                Property::Sequencible => {
                    return Err(String::from("sequencibility is not an oracle property"))
                }
            }
        }
        set.alphas.sort();
        set.alphas.dedup();
        Ok(set)
    }

    fn needs_mu(&self) -> bool {
        !self.alphas.is_empty()
    }

    fn ef1_only(&self) -> bool {
        self.ef1 && !self.ef && !self.prop && !self.prop1 && self.alphas.is_empty() && !self.po && !self.mnw
    }
}

/// Incremental per-completion state shared by the enumeration passes:
/// `values[i][j]` is v_i of j's current bundle, `maxitem[i][j]` the largest
/// single-item value inside it from i's view, with undo on backtrack.
struct SearchState<'a> {
    inst: &'a Instance,
    n: usize,
    unalloc: Vec<usize>,
    values: Vec<Vec<BigUint>>,
    maxitem: Vec<Vec<BigUint>>,
    sizes: Vec<usize>,
    assignment: Vec<usize>,
}

impl<'a> SearchState<'a> {
    fn new(inst: &'a Instance) -> Self {
        let n = inst.n_agents();
        let frozen = inst.frozen_allocation();
        let values = (0..n)
            .map(|i| (0..n).map(|j| inst.bundle_value(i, frozen.bundle(j))).collect())
            .collect();
        let maxitem = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        frozen
                            .bundle(j)
                            .iter()
                            .map(|&g| inst.item_value(i, g).clone())
                            .max()
                            .unwrap_or(BigUint::ZERO)
                    })
                    .collect()
            })
            .collect();
        let sizes = (0..n).map(|j| frozen.bundle(j).len()).collect();
        let unalloc = inst.unallocated();
        let assignment = alloc::vec![0usize; unalloc.len()];
        SearchState {
            inst,
            n,
            unalloc,
            values,
            maxitem,
            sizes,
            assignment,
        }
    }

    /// Assigns slot `depth` to `agent`; returns the maxitem column backup.
    fn push(&mut self, depth: usize, agent: usize) -> Vec<BigUint> {
        let good = self.unalloc[depth];
        self.assignment[depth] = agent;
        self.sizes[agent] += 1;
        let mut backup = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let item = self.inst.item_value(i, good);
            self.values[i][agent] += item;
            backup.push(self.maxitem[i][agent].clone());
            if *item > self.maxitem[i][agent] {
                self.maxitem[i][agent] = item.clone();
            }
        }
        backup
    }

    fn pop(&mut self, depth: usize, agent: usize, backup: Vec<BigUint>) {
        let good = self.unalloc[depth];
        self.sizes[agent] -= 1;
        for (i, old) in backup.into_iter().enumerate() {
            self.values[i][agent] -= self.inst.item_value(i, good);
            self.maxitem[i][agent] = old;
        }
    }

    fn completion(&self) -> Completion {
        let mut bundles = alloc::vec![BTreeSet::new(); self.n];
        for (slot, &agent) in self.assignment.iter().enumerate() {
            bundles[agent].insert(self.unalloc[slot]);
        }
        Completion::new(self.inst, bundles).expect("assignment covers exactly U")
    }

    fn merged(&self) -> PartialAllocation {
        crate::model::merge_allocation(self.inst, &self.completion())
    }
}

/// Depth-first pass over all completions in lexicographic order; `visit`
/// runs at each leaf and returns true to stop the search.
fn for_each_completion<F: FnMut(&SearchState) -> bool>(
    state: &mut SearchState,
    depth: usize,
    visit: &mut F,
) -> bool {
    if depth == state.unalloc.len() {
        return visit(state);
    }
    for agent in 0..state.n {
        let backup = state.push(depth, agent);
        let stop = for_each_completion(state, depth + 1, visit);
        state.pop(depth, agent, backup);
        if stop {
            return true;
        }
    }
    false
}

fn leaf_satisfies(
    state: &SearchState,
    props: &PropSet,
    totals: &[BigUint],
    mu: &[BigUint],
    po_table: &Option<BTreeSet<Vec<BigUint>>>,
    mnw_best: &Option<(usize, BigUint)>,
) -> bool {
    let n = state.n;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if props.ef && state.values[i][i] < state.values[i][j] {
                return false;
            }
            if props.ef1
                && state.sizes[j] > 0
                && &state.values[i][i] + &state.maxitem[i][j] < state.values[i][j]
            {
                return false;
            }
        }
    }
    if props.prop {
        for i in 0..n {
            if &state.values[i][i] * (n as u64) < totals[i] {
                return false;
            }
        }
    }
    if props.prop1 {
        for i in 0..n {
            let best_outside = (0..n)
                .filter(|&j| j != i)
                .map(|j| &state.maxitem[i][j])
                .max()
                .cloned()
                .unwrap_or(BigUint::ZERO);
            let own = &state.values[i][i];
            let holds = if state.sizes[i] == state.inst.m() {
                own * (n as u64) >= totals[i]
            } else {
                (own + best_outside) * (n as u64) >= totals[i]
            };
            if !holds {
                return false;
            }
        }
    }
    for alpha in &props.alphas {
        for i in 0..n {
            if &state.values[i][i] * alpha.den() < &mu[i] * alpha.num() {
                return false;
            }
        }
    }
    if let Some(table) = po_table {
        let candidate: Vec<BigUint> = (0..n).map(|i| state.values[i][i].clone()).collect();
        if is_dominated(&candidate, table) {
            return false;
        }
    }
    if let Some((best_count, best_product)) = mnw_best {
        let (count, product) = nash_objective(&(0..n).map(|i| state.values[i][i].clone()).collect::<Vec<_>>());
        if count != *best_count || product != *best_product {
            return false;
        }
    }
    true
}

fn nash_objective(utilities: &[BigUint]) -> (usize, BigUint) {
    let mut count = 0;
    let mut product = BigUint::from(1u8);
    for u in utilities {
        if *u > BigUint::ZERO {
            count += 1;
            product *= u;
        }
    }
    (count, product)
}

fn is_dominated(candidate: &[BigUint], table: &BTreeSet<Vec<BigUint>>) -> bool {
    table.iter().any(|row| {
        let mut strict = false;
        for (y, x) in row.iter().zip(candidate) {
            if y < x {
                return false;
            }
            if y > x {
                strict = true;
            }
        }
        strict
    })
}

/// All achievable utility vectors over complete allocations of M (frozen
/// goods included in the redistribution), deduplicated.
fn dominance_table(inst: &Instance, budget: u64) -> Result<BTreeSet<Vec<BigUint>>, OracleError> {
    let n = inst.n_agents();
    let m = inst.m();
    enumeration_states(n, m, budget)?;
    let mut table = BTreeSet::new();
    let mut utilities = alloc::vec![BigUint::ZERO; n];
    fn rec(
        inst: &Instance,
        good: usize,
        utilities: &mut Vec<BigUint>,
        table: &mut BTreeSet<Vec<BigUint>>,
    ) {
        if good == inst.m() {
            table.insert(utilities.clone());
            return;
        }
        for agent in 0..inst.n_agents() {
            utilities[agent] += inst.item_value(agent, good);
            rec(inst, good + 1, utilities, table);
            utilities[agent] -= inst.item_value(agent, good);
        }
    }
    rec(inst, 0, &mut utilities, &mut table);
    Ok(table)
}

/// Exact Pareto optimality of a complete allocation under the global
/// redistribution notion, by exhaustive dominance over all n^m allocations.
pub fn oracle_po_check(
    inst: &Instance,
    alloc: &PartialAllocation,
    budget: u64,
) -> Result<bool, OracleError> {
    if !alloc.is_complete(inst) {
        return Err(OracleError::IncompleteAllocation);
    }
    let table = dominance_table(inst, budget)?;
    let candidate: Vec<BigUint> = (0..inst.n_agents())
        .map(|i| inst.bundle_value(i, alloc.bundle(i)))
        .collect();
    Ok(!is_dominated(&candidate, &table))
}

/// Exhaustively searches for a completion whose merged allocation satisfies
/// every requested property. Exact `none_exists` within budgets; budget
/// overruns surface as `not_applicable`.
pub fn oracle_solve(
    inst: &Instance,
    properties: &[Property],
    budgets: OracleBudgets,
) -> SolveOutcome {
    let props = match PropSet::from_slice(properties) {
        Ok(p) => p,
        Err(msg) => return SolveOutcome::not_applicable(msg),
    };
    let n = inst.n_agents();
    let unalloc = inst.unallocated();
    if let Err(err) = enumeration_states(n, unalloc.len(), budgets.enumeration) {
        return SolveOutcome::not_applicable(format!("oracle: {err}"));
    }

    let mut mu = Vec::new();
    if props.needs_mu() {
        for agent in 0..n {
            match mms::mms_value_bruteforce(inst, agent, budgets.enumeration) {
                Ok(result) => mu.push(result.mu),
                Err(err) => return SolveOutcome::not_applicable(format!("oracle: {err}")),
            }
        }
    }

    let po_table = if props.po {
        match dominance_table(inst, budgets.po) {
            Ok(table) => Some(table),
            Err(err) => return SolveOutcome::not_applicable(format!("oracle: {err}")),
        }
    } else {
        None
    };

    if props.ef1_only() {
        return match ef1_pruned_search(inst) {
            Some(witness) => SolveOutcome::witness(witness, "oracle: exhaustive search (ef1)"),
            None => SolveOutcome::none_exists("oracle: exhaustive search (ef1)"),
        };
    }

    let totals: Vec<BigUint> = (0..n).map(|i| inst.total_value(i)).collect();

    let mnw_best = if props.mnw {
        let mut state = SearchState::new(inst);
        let mut best: Option<(usize, BigUint)> = None;
        for_each_completion(&mut state, 0, &mut |s| {
            let utilities: Vec<BigUint> = (0..n).map(|i| s.values[i][i].clone()).collect();
            let objective = nash_objective(&utilities);
            if best.as_ref().is_none_or(|b| objective > *b) {
                best = Some(objective);
            }
            false
        });
        best
    } else {
        None
    };

    let mut state = SearchState::new(inst);
    let mut witness = None;
    for_each_completion(&mut state, 0, &mut |s| {
        if leaf_satisfies(s, &props, &totals, &mu, &po_table, &mnw_best) {
            witness = Some(s.merged());
            true
        } else {
            false
        }
    });

    let label = properties
        .iter()
        .map(|p| format!("{p}"))
        .collect::<Vec<_>>()
        .join("+");
    match witness {
        Some(alloc) => SolveOutcome::witness(alloc, format!("oracle: exhaustive search ({label})")),
        None => SolveOutcome::none_exists(format!("oracle: exhaustive search ({label})")),
    }
}

/// Exhaustive EF1 search with sound pruning.
///
/// For each agent the current EF1 deficit (how much more value it must end
/// up with, given that envied bundles only grow and their best removable
/// good only improves) is a lower bound on what the remaining goods must
/// deliver; a branch dies when one agent's deficit exceeds what it could
/// still receive, or when the summed deficits exceed the total value the
/// remaining goods can deliver anywhere. Explores completions in the same
/// lexicographic order as plain enumeration, so the returned witness is
/// identical.
fn ef1_pruned_search(inst: &Instance) -> Option<PartialAllocation> {
    let n = inst.n_agents();
    let mut state = SearchState::new(inst);
    let k = state.unalloc.len();

    // supply_self[i][d]: total value agent i assigns to slots d..k
    // supply_any[d]: sum over slots d..k of the largest value any agent assigns
    let mut supply_self = alloc::vec![alloc::vec![BigUint::ZERO; k + 1]; n];
    let mut supply_any = alloc::vec![BigUint::ZERO; k + 1];
    for d in (0..k).rev() {
        let good = state.unalloc[d];
        let best = (0..n).map(|i| inst.item_value(i, good)).max().unwrap().clone();
        supply_any[d] = supply_any[d + 1].clone() + best;
        for (i, row) in supply_self.iter_mut().enumerate() {
            row[d] = row[d + 1].clone() + inst.item_value(i, good);
        }
    }

    fn deficits(state: &SearchState) -> Vec<BigUint> {
        let n = state.n;
        let mut needs = Vec::with_capacity(n);
        for i in 0..n {
            let mut need = BigUint::ZERO;
            for j in 0..n {
                if i == j || state.sizes[j] == 0 {
                    continue;
                }
                // a bundle's best removable good never exceeds its total
                let floor = &state.values[i][j] - &state.maxitem[i][j];
                if floor > state.values[i][i] {
                    let gap = floor - &state.values[i][i];
                    if gap > need {
                        need = gap;
                    }
                }
            }
            needs.push(need);
        }
        needs
    }

    fn viable(
        state: &SearchState,
        depth: usize,
        supply_self: &[Vec<BigUint>],
        supply_any: &[BigUint],
    ) -> bool {
        let needs = deficits(state);
        let mut total_need = BigUint::ZERO;
        for (i, need) in needs.iter().enumerate() {
            if *need > supply_self[i][depth] {
                return false;
            }
            total_need += need;
        }
        total_need <= supply_any[depth]
    }

    fn rec(
        state: &mut SearchState,
        depth: usize,
        supply_self: &[Vec<BigUint>],
        supply_any: &[BigUint],
    ) -> bool {
        if depth == state.unalloc.len() {
            return true;
        }
        for agent in 0..state.n {
            let backup = state.push(depth, agent);
            let ok = viable(state, depth + 1, supply_self, supply_any)
                && rec(state, depth + 1, supply_self, supply_any);
            if ok {
                return true;
            }
            state.pop(depth, agent, backup);
        }
        false
    }

    if !viable(&state, 0, &supply_self, &supply_any) {
        return None;
    }
    rec(&mut state, 0, &supply_self, &supply_any).then(|| state.merged())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::{check_ef1, check_po_binary};
    use alloc::collections::BTreeMap;
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn enumeration_counts() {
        let inst = Instance::binary(
            names(&["a", "b", "c"]),
            vec![vec![1, 1, 1], vec![0, 1, 0]],
            BTreeMap::new(),
        )
        .unwrap();
        let all: Vec<Completion> = enumerate_completions(&inst, 1000).unwrap().collect();
        assert_eq!(all.len(), 8);
        // uniqueness
        let distinct: BTreeSet<Vec<BTreeSet<usize>>> =
            all.iter().map(|c| c.bundles().to_vec()).collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn enumeration_with_empty_unallocated() {
        let inst = Instance::binary(
            names(&["a"]),
            vec![vec![1]],
            BTreeMap::from([(0, 0)]),
        )
        .unwrap();
        let all: Vec<Completion> = enumerate_completions(&inst, 10).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].bundle(0).is_empty());
    }

    #[test]
    fn enumeration_three_agents_two_goods() {
        let inst = Instance::binary(
            names(&["a", "b"]),
            vec![vec![1, 1], vec![1, 1], vec![1, 1]],
            BTreeMap::new(),
        )
        .unwrap();
        let all: Vec<Completion> = enumerate_completions(&inst, 100).unwrap().collect();
        assert_eq!(all.len(), 9);
    }

    #[test]
    fn budget_rejected() {
        let inst = Instance::binary(
            names(&["a", "b", "c", "d"]),
            vec![vec![1; 4], vec![1; 4]],
            BTreeMap::new(),
        )
        .unwrap();
        assert!(matches!(
            enumerate_completions(&inst, 8),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn po_check_identical_valuations_always_po() {
        let inst = Instance::additive_u64(
            names(&["a", "b", "c"]),
            vec![vec![3, 1, 2], vec![3, 1, 2]],
            BTreeMap::new(),
        )
        .unwrap();
        for completion in enumerate_completions(&inst, 1000).unwrap() {
            let alloc = crate::model::merge_allocation(&inst, &completion);
            assert!(oracle_po_check(&inst, &alloc, 1000).unwrap());
        }
    }

    #[test]
    fn ef1_with_empty_frozen_always_exists() {
        let inst = Instance::additive_u64(
            names(&["a", "b", "c", "d"]),
            vec![vec![5, 1, 3, 2], vec![2, 6, 1, 1], vec![4, 4, 4, 4]],
            BTreeMap::new(),
        )
        .unwrap();
        let outcome = oracle_solve(&inst, &[Property::Ef1], OracleBudgets::default());
        let witness = outcome.witness.expect("EF1 allocation exists without frozen goods");
        assert!(check_ef1(&inst, &witness).unwrap().holds);
    }

    #[test]
    fn pruned_and_plain_ef1_agree() {
        // hand-rolled deterministic "random" instances
        let mut seed: u64 = 0x9e377;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as usize
        };
        for _ in 0..200 {
            let n = 2 + next() % 2;
            let m = next() % 5;
            let goods: Vec<String> = (0..m).map(|g| format!("g{g}")).collect();
            let values: Vec<Vec<u64>> = (0..n)
                .map(|_| (0..m).map(|_| (next() % 4) as u64).collect())
                .collect();
            let mut frozen = BTreeMap::new();
            for g in 0..m {
                if next() % 2 == 0 {
                    frozen.insert(g, next() % n);
                }
            }
            let inst = Instance::additive_u64(goods, values, frozen).unwrap();

            let pruned = ef1_pruned_search(&inst);

            let mut plain = None;
            for completion in enumerate_completions(&inst, 100_000).unwrap() {
                let alloc = crate::model::merge_allocation(&inst, &completion);
                if check_ef1(&inst, &alloc).unwrap().holds {
                    plain = Some(alloc);
                    break;
                }
            }
            assert_eq!(pruned, plain);
        }
    }

    /// Three-agent binary instance where the Nash-welfare completion is not
    /// EF1 although an EF1+PO completion exists.
    fn mnw_instance() -> Instance {
        Instance::binary(
            names(&["g1", "g2", "g3", "g4", "f1", "f2", "f3", "f4"]),
            vec![
                vec![1, 1, 0, 0, 0, 0, 0, 0],
                vec![1, 1, 1, 1, 1, 1, 1, 1],
                vec![0, 0, 0, 0, 1, 1, 1, 1],
            ],
            BTreeMap::from([(4, 2), (5, 2), (6, 2), (7, 2)]),
        )
        .unwrap()
    }

    #[test]
    fn mnw_witness_is_unique_and_fails_ef1() {
        let inst = mnw_instance();
        let outcome = oracle_solve(&inst, &[Property::Mnw], OracleBudgets::default());
        let witness = outcome.witness.expect("MNW completion always exists");
        assert_eq!(witness.bundle(0), &BTreeSet::from([0, 1]));
        assert_eq!(witness.bundle(1), &BTreeSet::from([2, 3]));
        assert!(!check_ef1(&inst, &witness).unwrap().holds);
    }

    #[test]
    fn ef1_po_witness_exists_on_mnw_instance() {
        let inst = mnw_instance();
        let outcome = oracle_solve(&inst, &[Property::Ef1, Property::Po], OracleBudgets::default());
        let witness = outcome.witness.expect("EF1+PO completion exists");
        assert!(check_ef1(&inst, &witness).unwrap().holds);
        assert!(check_po_binary(&inst, &witness).unwrap().holds);
        assert!(oracle_po_check(&inst, &witness, 10_000_000).unwrap());
    }

    #[test]
    fn single_candidate_failing_property() {
        // U empty, frozen allocation not EF1: the lone completion fails
        let inst = Instance::additive_u64(
            names(&["a", "b"]),
            vec![vec![5, 5], vec![5, 5]],
            BTreeMap::from([(0, 0), (1, 0)]),
        )
        .unwrap();
        let outcome = oracle_solve(&inst, &[Property::Ef1], OracleBudgets::default());
        assert_eq!(outcome.status, crate::model::SolveStatus::NoneExists);
    }
}
