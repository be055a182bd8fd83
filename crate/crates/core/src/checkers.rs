//! Exact predicate evaluation of fairness and efficiency properties.
//!
//! Every check is a pure function over an instance and a (partial or
//! complete) allocation, with exact integer arithmetic throughout.
//! Threshold comparisons that would divide by the number of agents are done
//! by cross-multiplication instead.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::model::{Alpha, Instance, PartialAllocation, ValuationClass};

/// A fairness or efficiency property, used to label reports and to request
/// oracle searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Property {
    Ef,
    Ef1,
    Prop,
    Prop1,
    Mms,
    AlphaMms(Alpha),
    Po,
    Mnw,
    Sequencible,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Ef => write!(f, "ef"),
            Property::Ef1 => write!(f, "ef1"),
            Property::Prop => write!(f, "prop"),
            Property::Prop1 => write!(f, "prop1"),
            Property::Mms => write!(f, "mms"),
            Property::AlphaMms(a) => write!(f, "alpha_mms({a})"),
            Property::Po => write!(f, "po"),
            Property::Mnw => write!(f, "mnw"),
            Property::Sequencible => write!(f, "sequencible"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub agent: usize,
    pub counterpart: Option<usize>,
    pub explanation: String,
}

/// Outcome of a property check. `holds` is true exactly when `violations`
/// is empty; violations are ordered by (agent, counterpart).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessReport {
    pub property: Property,
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl FairnessReport {
    fn new(property: Property, mut violations: Vec<Violation>) -> Self {
        violations.sort_by_key(|a| (a.agent, a.counterpart));
        FairnessReport {
            property,
            holds: violations.is_empty(),
            violations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckError {
    IncompleteAllocation,
    WrongClass {
        expected: ValuationClass,
        found: ValuationClass,
    },
    TiedItemValues {
        agent: usize,
    },
    MuLengthMismatch {
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::IncompleteAllocation => write!(f, "allocation is not complete"),
            CheckError::WrongClass { expected, found } => {
                write!(f, "expected {expected} valuations, found {found}")
            }
            CheckError::TiedItemValues { agent } => {
                write!(f, "agent {agent} has tied item values; no strict order")
            }
            CheckError::MuLengthMismatch { expected, got } => {
                write!(f, "expected {expected} MMS values, got {got}")
            }
        }
    }
}

impl core::error::Error for CheckError {}

/// Directed envy graph: an edge (i, j) means agent i strictly prefers j's
/// bundle to its own under the supplied allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvyGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl EnvyGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Topological order of the envy edges (enviers precede the envied),
    /// or `None` if the graph has a cycle. Ties go to the lowest agent index.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree = alloc::vec![0usize; self.n];
        for &(_, j) in &self.edges {
            indegree[j] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..self.n).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(&i) = ready.iter().next() {
            ready.remove(&i);
            order.push(i);
            for &(from, to) in &self.edges {
                if from == i {
                    indegree[to] -= 1;
                    if indegree[to] == 0 {
                        ready.insert(to);
                    }
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }
}

/// Builds the exact strict-envy graph of `alloc` (partial allocations are
/// fine; unallocated goods simply count for nobody).
pub fn build_envy_graph(inst: &Instance, alloc: &PartialAllocation) -> EnvyGraph {
    let n = inst.n_agents();
    let mut edges = BTreeSet::new();
    let own: Vec<BigUint> = (0..n).map(|i| inst.bundle_value(i, alloc.bundle(i))).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && own[i] < inst.bundle_value(i, alloc.bundle(j)) {
                edges.insert((i, j));
            }
        }
    }
    EnvyGraph { n, edges }
}

/// Pairs (i, j) such that agent i has EF1-envy towards agent j: removing any
/// single good from j's bundle leaves i strictly behind. Defined for partial
/// allocations as well.
pub fn ef1_envy_pairs(inst: &Instance, alloc: &PartialAllocation) -> Vec<(usize, usize)> {
    let n = inst.n_agents();
    let own: Vec<BigUint> = (0..n).map(|i| inst.bundle_value(i, alloc.bundle(i))).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || alloc.bundle(j).is_empty() {
                continue;
            }
            let other = inst.bundle_value(i, alloc.bundle(j));
            let best = alloc
                .bundle(j)
                .iter()
                .map(|&g| inst.item_value(i, g))
                .max()
                .expect("bundle nonempty");
            // EF1-envy iff v_i(A_i) < v_i(A_j \ {g}) for every g, i.e. even
            // after dropping j's most valuable good from i's perspective.
            if &own[i] + best < other {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Envy-freeness up to one good on a complete allocation.
pub fn check_ef1(inst: &Instance, alloc: &PartialAllocation) -> Result<FairnessReport, CheckError> {
    if !alloc.is_complete(inst) {
        return Err(CheckError::IncompleteAllocation);
    }
    let violations = ef1_envy_pairs(inst, alloc)
        .into_iter()
        .map(|(i, j)| Violation {
            agent: i,
            counterpart: Some(j),
            explanation: format!("agent {i} EF1-envies agent {j}"),
        })
        .collect();
    Ok(FairnessReport::new(Property::Ef1, violations))
}

/// Whether agent `i` meets the PROP1 threshold given the set of goods it
/// holds and the set held by others. When no good sits outside `i`'s bundle
/// the condition degenerates to plain proportionality n*v_i(A_i) >= v_i(M).
fn prop1_holds_for(
    inst: &Instance,
    agent: usize,
    own_value: &BigUint,
    outside: &BTreeSet<usize>,
    n: u64,
    total: &BigUint,
) -> bool {
    let boost = outside
        .iter()
        .map(|&g| inst.item_value(agent, g))
        .max()
        .cloned()
        .unwrap_or(BigUint::ZERO);
    (own_value + boost) * n >= *total
}

/// Proportionality up to one good on a complete allocation, compared exactly
/// via cross-multiplication.
pub fn check_prop1(
    inst: &Instance,
    alloc: &PartialAllocation,
) -> Result<FairnessReport, CheckError> {
    if !alloc.is_complete(inst) {
        return Err(CheckError::IncompleteAllocation);
    }
    let n = inst.n_agents() as u64;
    let mut violations = Vec::new();
    for i in 0..inst.n_agents() {
        let own = inst.bundle_value(i, alloc.bundle(i));
        let outside: BTreeSet<usize> = (0..inst.m())
            .filter(|g| !alloc.bundle(i).contains(g))
            .collect();
        let total = inst.total_value(i);
        if !prop1_holds_for(inst, i, &own, &outside, n, &total) {
            violations.push(Violation {
                agent: i,
                counterpart: None,
                explanation: format!(
                    "agent {i} stays below a 1/{n} share even after adding one outside good"
                ),
            });
        }
    }
    Ok(FairnessReport::new(Property::Prop1, violations))
}

/// Pareto optimality for binary valuations: every allocated good that is
/// approved by at least one agent must sit with an approver. Works on
/// partial allocations, so it doubles as the "frozen allocation is PO"
/// precondition check.
pub fn check_po_binary(
    inst: &Instance,
    alloc: &PartialAllocation,
) -> Result<FairnessReport, CheckError> {
    if inst.class() != ValuationClass::Binary {
        return Err(CheckError::WrongClass {
            expected: ValuationClass::Binary,
            found: inst.class(),
        });
    }
    let one = BigUint::from(1u8);
    let mut violations = Vec::new();
    for (owner, bundle) in alloc.bundles().iter().enumerate() {
        for &g in bundle {
            if inst.item_value(owner, g) == &one {
                continue;
            }
            let approver = (0..inst.n_agents()).find(|&a| inst.item_value(a, g) == &one);
            if let Some(a) = approver {
                violations.push(Violation {
                    agent: owner,
                    counterpart: Some(a),
                    explanation: format!(
                        "good {g} sits with non-approver {owner} while agent {a} approves it"
                    ),
                });
            }
        }
    }
    Ok(FairnessReport::new(Property::Po, violations))
}

/// Verdict of the sequencibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqVerdict {
    /// Realizable by this picking sequence (one agent index per allocated
    /// good, in picking order).
    Sequencible(Vec<usize>),
    NotSequencible,
}

impl SeqVerdict {
    pub fn is_sequencible(&self) -> bool {
        matches!(self, SeqVerdict::Sequencible(_))
    }
}

/// Strict preference order over all goods for `agent` (most preferred
/// first). Lexicographic instances use their ranking directly; other classes
/// derive the order from item values and reject ties.
pub(crate) fn strict_preference_order(
    inst: &Instance,
    agent: usize,
) -> Result<Vec<usize>, CheckError> {
    if let Some(ranking) = inst.ranking(agent) {
        return Ok(ranking.to_vec());
    }
    let mut goods: Vec<usize> = (0..inst.m()).collect();
    goods.sort_by(|&a, &b| {
        inst.item_value(agent, b)
            .cmp(inst.item_value(agent, a))
            .then(a.cmp(&b))
    });
    for w in goods.windows(2) {
        if inst.item_value(agent, w[0]) == inst.item_value(agent, w[1]) {
            return Err(CheckError::TiedItemValues { agent });
        }
    }
    Ok(goods)
}

/// Decides whether `alloc` is realizable by a picking sequence over its
/// allocated goods: repeatedly peel off an agent that holds its top
/// remaining good (lowest agent index first), or report failure.
///
/// On lexicographic instances this coincides with Pareto optimality of the
/// allocation restricted to the allocated goods.
pub fn check_sequencible(
    inst: &Instance,
    alloc: &PartialAllocation,
) -> Result<SeqVerdict, CheckError> {
    let n = inst.n_agents();
    let prefs: Vec<Vec<usize>> = (0..n)
        .map(|i| strict_preference_order(inst, i))
        .collect::<Result<_, _>>()?;
    let mut owner = alloc::vec![None; inst.m()];
    for (agent, bundle) in alloc.bundles().iter().enumerate() {
        for &g in bundle {
            owner[g] = Some(agent);
        }
    }
    let mut remaining: BTreeSet<usize> = alloc.allocated_goods();
    let mut sequence = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let mut picked = None;
        for agent in 0..n {
            let top = prefs[agent]
                .iter()
                .copied()
                .find(|g| remaining.contains(g))
                .expect("remaining is nonempty");
            if owner[top] == Some(agent) {
                picked = Some((agent, top));
                break;
            }
        }
        match picked {
            Some((agent, good)) => {
                sequence.push(agent);
                remaining.remove(&good);
            }
            None => return Ok(SeqVerdict::NotSequencible),
        }
    }
    Ok(SeqVerdict::Sequencible(sequence))
}

/// alpha-MMS check: every agent's bundle must be worth at least
/// alpha * mu_i, compared exactly as v_i(A_i) * den >= num * mu_i.
pub fn check_alpha_mms(
    inst: &Instance,
    alloc: &PartialAllocation,
    alpha: Alpha,
    mu: &[BigUint],
) -> Result<FairnessReport, CheckError> {
    if !alloc.is_complete(inst) {
        return Err(CheckError::IncompleteAllocation);
    }
    if mu.len() != inst.n_agents() {
        return Err(CheckError::MuLengthMismatch {
            expected: inst.n_agents(),
            got: mu.len(),
        });
    }
    let mut violations = Vec::new();
    for i in 0..inst.n_agents() {
        let own = inst.bundle_value(i, alloc.bundle(i));
        if own * alpha.den() < &mu[i] * alpha.num() {
            violations.push(Violation {
                agent: i,
                counterpart: None,
                explanation: format!("agent {i} falls below {alpha} of its maximin share"),
            });
        }
    }
    Ok(FairnessReport::new(Property::AlphaMms(alpha), violations))
}

/// Plain envy-freeness (used by the oracle's property set).
pub fn ef_holds(inst: &Instance, alloc: &PartialAllocation) -> bool {
    build_envy_graph(inst, alloc).edges().is_empty()
}

/// Plain proportionality via cross-multiplication.
pub fn prop_holds(inst: &Instance, alloc: &PartialAllocation) -> bool {
    let n = inst.n_agents() as u64;
    (0..inst.n_agents()).all(|i| {
        inst.bundle_value(i, alloc.bundle(i)) * n >= inst.total_value(i)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Instance;
    use alloc::collections::BTreeMap;
    use alloc::string::{String, ToString};
    use alloc::vec;
    use alloc::vec::Vec;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn alloc_of(inst: &Instance, bundles: Vec<Vec<usize>>) -> PartialAllocation {
        PartialAllocation::new(
            inst,
            bundles.into_iter().map(|b| b.into_iter().collect()).collect(),
        )
        .unwrap()
    }

    /// The three-agent binary instance where maximizing Nash welfare clashes
    /// with EF1. Goods in order: g1..g4 unallocated, f1..f4 frozen to agent 2.
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
    fn ef1_holds_on_balanced_completion() {
        let inst = mnw_instance();
        let alloc = alloc_of(&inst, vec![vec![0], vec![1, 2, 3], vec![4, 5, 6, 7]]);
        let report = check_ef1(&inst, &alloc).unwrap();
        assert!(report.holds, "violations: {:?}", report.violations);
    }

    #[test]
    fn ef1_fails_when_one_agent_takes_all() {
        let inst = Instance::binary(
            names(&["a", "b", "c"]),
            vec![vec![1, 1, 1], vec![1, 1, 1]],
            BTreeMap::new(),
        )
        .unwrap();
        let alloc = alloc_of(&inst, vec![vec![0, 1, 2], vec![]]);
        let report = check_ef1(&inst, &alloc).unwrap();
        assert!(!report.holds);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].agent, 1);
        assert_eq!(report.violations[0].counterpart, Some(0));
    }

    #[test]
    fn singleton_bundles_are_always_ef1() {
        let inst = Instance::additive_u64(
            names(&["a", "b", "c"]),
            vec![vec![9, 1, 5], vec![2, 8, 4], vec![7, 7, 7]],
            BTreeMap::new(),
        )
        .unwrap();
        let alloc = alloc_of(&inst, vec![vec![1], vec![2], vec![0]]);
        assert!(check_ef1(&inst, &alloc).unwrap().holds);
    }

    #[test]
    fn ef1_requires_complete_allocation() {
        let inst = mnw_instance();
        let alloc = alloc_of(&inst, vec![vec![], vec![], vec![4, 5, 6, 7]]);
        assert_eq!(
            check_ef1(&inst, &alloc),
            Err(CheckError::IncompleteAllocation)
        );
    }

    #[test]
    fn prop1_single_agent_holding_everything() {
        let inst = Instance::additive_u64(
            names(&["a", "b"]),
            vec![vec![3, 4]],
            BTreeMap::new(),
        )
        .unwrap();
        let alloc = alloc_of(&inst, vec![vec![0, 1]]);
        assert!(check_prop1(&inst, &alloc).unwrap().holds);
    }

    #[test]
    fn po_binary_detects_misplaced_good() {
        let inst = Instance::binary(
            names(&["a"]),
            vec![vec![1], vec![0]],
            BTreeMap::new(),
        )
        .unwrap();
        let good_with_approver = alloc_of(&inst, vec![vec![0], vec![]]);
        assert!(check_po_binary(&inst, &good_with_approver).unwrap().holds);
        let misplaced = alloc_of(&inst, vec![vec![], vec![0]]);
        let report = check_po_binary(&inst, &misplaced).unwrap();
        assert!(!report.holds);
    }

    #[test]
    fn po_binary_empty_allocation_holds() {
        let inst = Instance::binary(
            names(&["a", "b"]),
            vec![vec![1, 1], vec![0, 1]],
            BTreeMap::new(),
        )
        .unwrap();
        let alloc = alloc_of(&inst, vec![vec![], vec![]]);
        assert!(check_po_binary(&inst, &alloc).unwrap().holds);
    }

    #[test]
    fn po_binary_wrong_class() {
        let inst = Instance::additive_u64(
            names(&["a"]),
            vec![vec![2]],
            BTreeMap::new(),
        )
        .unwrap();
        assert!(matches!(
            check_po_binary(&inst, &PartialAllocation::empty(1)),
            Err(CheckError::WrongClass { .. })
        ));
    }

    #[test]
    fn envy_graph_cycle_between_two_agents() {
        let inst = Instance::additive_u64(
            names(&["g1", "g2"]),
            vec![vec![0, 1], vec![1, 0]],
            BTreeMap::new(),
        )
        .unwrap();
        let alloc = alloc_of(&inst, vec![vec![0], vec![1]]);
        let graph = build_envy_graph(&inst, &alloc);
        assert!(graph.has_edge(0, 1));
        assert!(graph.has_edge(1, 0));
        assert!(!graph.is_acyclic());
    }

    #[test]
    fn envy_graph_empty_allocation_has_no_edges() {
        let inst = Instance::additive_u64(
            names(&["g1", "g2"]),
            vec![vec![5, 2], vec![3, 3]],
            BTreeMap::new(),
        )
        .unwrap();
        let graph = build_envy_graph(&inst, &PartialAllocation::empty(2));
        assert!(graph.edges().is_empty());
        assert_eq!(graph.topological_order(), Some(vec![0, 1]));
    }

    #[test]
    fn sequencible_single_agent() {
        let inst = Instance::lexicographic(
            names(&["a", "b"]),
            vec![vec![1, 0]],
            BTreeMap::new(),
        )
        .unwrap();
        let alloc = alloc_of(&inst, vec![vec![0, 1]]);
        let verdict = check_sequencible(&inst, &alloc).unwrap();
        assert_eq!(verdict, SeqVerdict::Sequencible(vec![0, 0]));
    }

    #[test]
    fn sequencible_frozen_part_of_lex_counterexample() {
        // agent 0: g1 > g2 > f1 > f2 holds f1; agent 1: f1 > f2 > g1 > g2
        // holds f2. Restricted to {f1, f2}, agent 0's top is its own f1.
        let inst = Instance::lexicographic(
            names(&["g1", "g2", "f1", "f2"]),
            vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]],
            BTreeMap::from([(2, 0), (3, 1)]),
        )
        .unwrap();
        let verdict = check_sequencible(&inst, &inst.frozen_allocation()).unwrap();
        assert_eq!(verdict, SeqVerdict::Sequencible(vec![0, 1]));
    }

    #[test]
    fn not_sequencible_when_tops_are_swapped() {
        let inst = Instance::lexicographic(
            names(&["a", "b"]),
            vec![vec![0, 1], vec![1, 0]],
            BTreeMap::new(),
        )
        .unwrap();
        // each agent holds the other's unique top good
        let alloc = alloc_of(&inst, vec![vec![1], vec![0]]);
        assert_eq!(
            check_sequencible(&inst, &alloc).unwrap(),
            SeqVerdict::NotSequencible
        );
    }

    #[test]
    fn sequencible_rejects_tied_values() {
        let inst = Instance::binary(
            names(&["a", "b"]),
            vec![vec![1, 1]],
            BTreeMap::new(),
        )
        .unwrap();
        let alloc = alloc_of(&inst, vec![vec![0, 1]]);
        assert_eq!(
            check_sequencible(&inst, &alloc),
            Err(CheckError::TiedItemValues { agent: 0 })
        );
    }

    #[test]
    fn alpha_mms_equality_boundary() {
        let inst = Instance::additive_u64(
            names(&["a", "b"]),
            vec![vec![2, 2], vec![2, 2]],
            BTreeMap::new(),
        )
        .unwrap();
        let alloc = alloc_of(&inst, vec![vec![0], vec![1]]);
        let mu = vec![BigUint::from(2u8), BigUint::from(2u8)];
        let report = check_alpha_mms(&inst, &alloc, Alpha::one(), &mu).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn alpha_mms_length_mismatch() {
        let inst = Instance::additive_u64(
            names(&["a"]),
            vec![vec![1], vec![1]],
            BTreeMap::new(),
        )
        .unwrap();
        let alloc = alloc_of(&inst, vec![vec![0], vec![]]);
        assert!(matches!(
            check_alpha_mms(&inst, &alloc, Alpha::one(), &[BigUint::ZERO]),
            Err(CheckError::MuLengthMismatch { .. })
        ));
    }
}
