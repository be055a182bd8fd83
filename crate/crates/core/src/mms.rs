//! Maximin share values under frozen allocations.
//!
//! mu_i is the best worst-bundle value agent i can guarantee by distributing
//! the unallocated goods over the frozen bundles. Binary instances get the
//! greedy computation, lexicographic instances the recursive peel, and
//! general additive instances are served by exhaustive enumeration within a
//! state budget.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::model::{Instance, PartialAllocation, ValuationClass};

/// Default cap on the number of enumeration states for brute-force searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MmsError {
    WrongClass {
        expected: ValuationClass,
        found: ValuationClass,
    },
    BudgetExceeded {
        states: u128,
        budget: u64,
    },
}

impl fmt::Display for MmsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MmsError::WrongClass { expected, found } => {
                write!(f, "expected {expected} valuations, found {found}")
            }
            MmsError::BudgetExceeded { states, budget } => {
                write!(f, "enumeration needs {states} states, budget is {budget}")
            }
        }
    }
}

impl core::error::Error for MmsError {}

/// mu for one agent together with a complete allocation witnessing it: the
/// witness completes the frozen allocation and its minimum bundle value,
/// from the agent's viewpoint, equals mu.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmsResult {
    pub mu: BigUint,
    pub witness: PartialAllocation,
}

fn min_bundle_value(inst: &Instance, agent: usize, alloc: &PartialAllocation) -> BigUint {
    (0..inst.n_agents())
        .map(|j| inst.bundle_value(agent, alloc.bundle(j)))
        .min()
        .expect("instance has at least one agent")
}

/// Greedy maximin share for binary valuations: each approved unallocated
/// good goes to a currently minimum-value bundle (lowest index on ties);
/// unapproved goods are value-neutral and parked on bundle 0.
pub fn mms_value_binary(inst: &Instance, agent: usize) -> Result<MmsResult, MmsError> {
    if inst.class() != ValuationClass::Binary {
        return Err(MmsError::WrongClass {
            expected: ValuationClass::Binary,
            found: inst.class(),
        });
    }
    let n = inst.n_agents();
    let mut witness = inst.frozen_allocation();
    let mut values: Vec<BigUint> = (0..n)
        .map(|j| inst.bundle_value(agent, witness.bundle(j)))
        .collect();
    let one = BigUint::from(1u8);
    for g in inst.unallocated() {
        if inst.item_value(agent, g) == &one {
            let target = (0..n).min_by_key(|&j| (values[j].clone(), j)).unwrap();
            witness.insert(target, g);
            values[target] += 1u8;
        } else {
            witness.insert(0, g);
        }
    }
    let mu = values.into_iter().min().unwrap();
    Ok(MmsResult { mu, witness })
}

/// Recursive maximin share for lexicographic valuations under the
/// `2^(m - rank)` realization.
///
/// Bundles are re-sorted ascending by value at every level (ties by agent
/// index), unallocated goods descending. If every bundle above the minimum
/// already beats the top remaining good, the minimum bundle absorbs all of
/// U; otherwise it takes the single top good and leaves the recursion.
pub fn mms_value_lex(inst: &Instance, agent: usize) -> Result<MmsResult, MmsError> {
    if inst.class() != ValuationClass::Lexicographic {
        return Err(MmsError::WrongClass {
            expected: ValuationClass::Lexicographic,
            found: inst.class(),
        });
    }
    let frozen = inst.frozen_allocation();
    let mut active: Vec<(usize, BTreeSet<usize>, BigUint)> = (0..inst.n_agents())
        .map(|j| {
            let bundle = frozen.bundle(j).clone();
            let value = inst.bundle_value(agent, &bundle);
            (j, bundle, value)
        })
        .collect();

    let mut goods = inst.unallocated();
    // descending by the agent's value; values are distinct powers of two
    goods.sort_by(|&a, &b| inst.item_value(agent, b).cmp(inst.item_value(agent, a)));

    let mut done: Vec<(usize, BTreeSet<usize>)> = Vec::new();
    let mut cursor = 0;
    loop {
        active.sort_by(|a, b| a.2.cmp(&b.2).then(a.0.cmp(&b.0)));
        if cursor == goods.len() {
            done.extend(active.into_iter().map(|(owner, bundle, _)| (owner, bundle)));
            break;
        }
        let top_value = inst.item_value(agent, goods[cursor]);
        // the minimum bundle carries the whole tail once every other bundle
        // already beats the best remaining good (vacuous for a lone bundle)
        if active[1..].iter().all(|(_, _, value)| value >= top_value) {
            let (owner, mut bundle, _) = active.remove(0);
            bundle.extend(goods[cursor..].iter().copied());
            done.push((owner, bundle));
            done.extend(active.into_iter().map(|(owner, bundle, _)| (owner, bundle)));
            break;
        }
        // peel: the minimum bundle takes the top good and leaves the recursion
        let (owner, mut bundle, _) = active.remove(0);
        bundle.insert(goods[cursor]);
        done.push((owner, bundle));
        cursor += 1;
    }

    let mut bundles = alloc::vec![BTreeSet::new(); inst.n_agents()];
    for (owner, bundle) in done {
        bundles[owner] = bundle;
    }
    let witness = PartialAllocation::new(inst, bundles).expect("partition stays disjoint");
    let mu = min_bundle_value(inst, agent, &witness);
    Ok(MmsResult { mu, witness })
}

pub(crate) fn enumeration_states(n: usize, slots: usize, budget: u64) -> Result<u128, MmsError> {
    let mut states: u128 = 1;
    for _ in 0..slots {
        states = states.saturating_mul(n as u128);
        if states > budget as u128 {
            return Err(MmsError::BudgetExceeded { states, budget });
        }
    }
    Ok(states)
}

/// Exact mu by exhaustive enumeration of all assignments of U, the oracle
/// for the two polynomial computations. Keeps the first maximizer in
/// lexicographic assignment order.
pub fn mms_value_bruteforce(
    inst: &Instance,
    agent: usize,
    budget: u64,
) -> Result<MmsResult, MmsError> {
    let unalloc = inst.unallocated();
    let n = inst.n_agents();
    enumeration_states(n, unalloc.len(), budget)?;

    let frozen = inst.frozen_allocation();
    let mut values: Vec<BigUint> = (0..n)
        .map(|j| inst.bundle_value(agent, frozen.bundle(j)))
        .collect();
    let item_values: Vec<BigUint> = unalloc
        .iter()
        .map(|&g| inst.item_value(agent, g).clone())
        .collect();

    let mut assignment = alloc::vec![0usize; unalloc.len()];
    let mut best_mu: Option<BigUint> = None;
    let mut best_assignment = assignment.clone();
    search(
        0,
        n,
        &item_values,
        &mut values,
        &mut assignment,
        &mut best_mu,
        &mut best_assignment,
    );

    let mut witness = frozen;
    for (slot, &g) in unalloc.iter().enumerate() {
        witness.insert(best_assignment[slot], g);
    }
    Ok(MmsResult {
        mu: best_mu.expect("at least one completion exists"),
        witness,
    })
}

fn search(
    depth: usize,
    n: usize,
    item_values: &[BigUint],
    values: &mut [BigUint],
    assignment: &mut [usize],
    best_mu: &mut Option<BigUint>,
    best_assignment: &mut [usize],
) {
    if depth == item_values.len() {
        let min = values.iter().min().unwrap();
        if best_mu.as_ref().is_none_or(|b| min > b) {
            *best_mu = Some(min.clone());
            best_assignment.copy_from_slice(assignment);
        }
        return;
    }
    for bundle in 0..n {
        values[bundle] += &item_values[depth];
        assignment[depth] = bundle;
        search(
            depth + 1,
            n,
            item_values,
            values,
            assignment,
            best_mu,
            best_assignment,
        );
        values[bundle] -= &item_values[depth];
    }
}

/// Per-agent mu values, dispatched by valuation class. General additive
/// instances fall back to brute force within `budget`.
pub fn mms_values(inst: &Instance, budget: u64) -> Result<Vec<BigUint>, MmsError> {
    (0..inst.n_agents())
        .map(|i| {
            let result = match inst.class() {
                ValuationClass::Binary => mms_value_binary(inst, i)?,
                ValuationClass::Lexicographic => mms_value_lex(inst, i)?,
                ValuationClass::Additive => mms_value_bruteforce(inst, i, budget)?,
            };
            Ok(result.mu)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn binary_greedy_three_goods_two_agents() {
        let inst = Instance::binary(
            names(&["a", "b", "c"]),
            vec![vec![1, 1, 1], vec![0, 0, 0]],
            BTreeMap::new(),
        )
        .unwrap();
        let result = mms_value_binary(&inst, 0).unwrap();
        assert_eq!(result.mu, BigUint::from(1u8));
        let brute = mms_value_bruteforce(&inst, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(brute.mu, result.mu);
    }

    #[test]
    fn binary_mu_with_everything_frozen() {
        let inst = Instance::binary(
            names(&["a", "b"]),
            vec![vec![1, 1], vec![1, 0]],
            BTreeMap::from([(0, 0), (1, 1)]),
        )
        .unwrap();
        // U is empty: mu is the minimum frozen bundle value
        let result = mms_value_binary(&inst, 0).unwrap();
        assert_eq!(result.mu, BigUint::from(1u8));
        assert_eq!(result.witness, inst.frozen_allocation());
        let brute = mms_value_bruteforce(&inst, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(brute.mu, result.mu);
    }

    /// The two-agent binary instance with one shared good and one worthless
    /// frozen good per agent; both maximin shares are 1.
    #[test]
    fn binary_table_with_shared_good() {
        let inst = Instance::binary(
            names(&["g1", "g11", "g21"]),
            vec![vec![1, 0, 1], vec![1, 1, 0]],
            BTreeMap::from([(1, 0), (2, 1)]),
        )
        .unwrap();
        for agent in 0..2 {
            let result = mms_value_binary(&inst, agent).unwrap();
            assert_eq!(result.mu, BigUint::from(1u8), "agent {agent}");
            let brute = mms_value_bruteforce(&inst, agent, DEFAULT_BUDGET).unwrap();
            assert_eq!(brute.mu, result.mu);
        }
    }

    fn lex_counterexample() -> Instance {
        Instance::lexicographic(
            names(&["g1", "g2", "f1", "f2"]),
            vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]],
            BTreeMap::from([(2, 0), (3, 1)]),
        )
        .unwrap()
    }

    #[test]
    fn lex_mu_of_counterexample_agents() {
        let inst = lex_counterexample();

        // agent 0: MMS partition (F1 ∪ {g2}, F2 ∪ {g1}), mu = v({f1, g2}) = 2 + 4
        let r0 = mms_value_lex(&inst, 0).unwrap();
        assert_eq!(r0.mu, BigUint::from(6u8));
        assert_eq!(r0.witness.bundle(0), &BTreeSet::from([1, 2]));
        assert_eq!(r0.witness.bundle(1), &BTreeSet::from([0, 3]));

        // agent 1: MMS partition (F1, F2 ∪ {g1, g2}), mu = 4 + 2 + 1
        let r1 = mms_value_lex(&inst, 1).unwrap();
        assert_eq!(r1.mu, BigUint::from(7u8));
        assert_eq!(r1.witness.bundle(0), &BTreeSet::from([2]));
        assert_eq!(r1.witness.bundle(1), &BTreeSet::from([0, 1, 3]));

        for agent in 0..2 {
            let brute = mms_value_bruteforce(&inst, agent, DEFAULT_BUDGET).unwrap();
            let poly = mms_value_lex(&inst, agent).unwrap();
            assert_eq!(brute.mu, poly.mu);
        }
    }

    #[test]
    fn lex_mu_empty_unallocated() {
        let inst = Instance::lexicographic(
            names(&["a", "b"]),
            vec![vec![0, 1], vec![1, 0]],
            BTreeMap::from([(0, 0), (1, 1)]),
        )
        .unwrap();
        let r = mms_value_lex(&inst, 0).unwrap();
        // min over frozen bundles from agent 0's view: min(2, 1) = 1
        assert_eq!(r.mu, BigUint::from(1u8));
        assert_eq!(r.witness, inst.frozen_allocation());
    }

    #[test]
    fn bruteforce_budget_exceeded() {
        let inst = Instance::binary(
            names(&["a", "b", "c", "d"]),
            vec![vec![1; 4], vec![1; 4], vec![1; 4]],
            BTreeMap::new(),
        )
        .unwrap();
        let err = mms_value_bruteforce(&inst, 0, 10).unwrap_err();
        assert!(matches!(err, MmsError::BudgetExceeded { .. }));
    }

    #[test]
    fn witness_minimum_equals_mu() {
        let inst = Instance::binary(
            names(&["a", "b", "c", "d", "e"]),
            vec![vec![1, 0, 1, 1, 0], vec![1, 1, 0, 0, 1], vec![0, 1, 1, 1, 1]],
            BTreeMap::from([(0, 1), (4, 2)]),
        )
        .unwrap();
        for agent in 0..3 {
            let r = mms_value_binary(&inst, agent).unwrap();
            assert!(r.witness.is_complete(&inst));
            assert_eq!(min_bundle_value(&inst, agent, &r.witness), r.mu);
            let brute = mms_value_bruteforce(&inst, agent, DEFAULT_BUDGET).unwrap();
            assert_eq!(brute.mu, r.mu, "agent {agent}");
            assert_eq!(min_bundle_value(&inst, agent, &brute.witness), brute.mu);
        }
    }

    #[test]
    fn mu_monotone_under_new_unallocated_good() {
        let base = Instance::lexicographic(
            names(&["a", "b", "c"]),
            vec![vec![0, 1, 2], vec![2, 0, 1]],
            BTreeMap::from([(0, 0), (1, 1)]),
        )
        .unwrap();
        let grown = Instance::lexicographic(
            names(&["a", "b", "c", "d"]),
            vec![vec![0, 1, 2, 3], vec![2, 0, 1, 3]],
            BTreeMap::from([(0, 0), (1, 1)]),
        )
        .unwrap();
        for agent in 0..2 {
            let before = mms_value_bruteforce(&base, agent, DEFAULT_BUDGET).unwrap();
            let after = mms_value_bruteforce(&grown, agent, DEFAULT_BUDGET).unwrap();
            // the new good d ranks last for both agents, so each old value
            // doubles under the m=4 realization; scale before comparing
            assert!(after.mu >= before.mu * 2u8);
        }
    }
}
