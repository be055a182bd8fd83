//! Constructors for hardness gadgets and counterexample families, used as
//! test-case factories and to cross-validate solver verdicts against
//! source-problem answers.
//!
//! Each reduction keeps enough source data to pull a solution of the reduced
//! instance back to a witness for the source problem; the pull-backs
//! validate their output before returning it. Values the constructions state
//! as fractions or arbitrarily small epsilons are realized by uniform
//! integer scalings chosen so that every comparison the gadget relies on
//! keeps its strictness.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::checkers::{check_alpha_mms, check_ef1, check_prop1, Property};
use crate::mms::{mms_value_bruteforce, DEFAULT_BUDGET};
use crate::model::{Alpha, Instance, PartialAllocation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    OddWeightSum { sum: u64 },
    WeightExceedsTarget { index: usize, weight: u64, target: u64 },
    MalformedGraph(String),
    HyperedgeTooLarge { edge: usize, size: usize, colors: usize },
    InvalidParams(String),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::OddWeightSum { sum } => {
                write!(f, "weight sum {sum} is odd, no even split exists")
            }
            ReductionError::WeightExceedsTarget {
                index,
                weight,
                target,
            } => write!(f, "weight {weight} at index {index} exceeds the target {target}"),
            ReductionError::MalformedGraph(msg) => write!(f, "malformed graph: {msg}"),
            ReductionError::HyperedgeTooLarge { edge, size, colors } => {
                write!(f, "hyperedge {edge} has {size} vertices but only {colors} colors")
            }
            ReductionError::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
        }
    }
}

impl core::error::Error for ReductionError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractError {
    DoesNotCompleteFrozen,
    FailsChecker(Property),
    GoodOutsideExpectedAgents { good: usize },
    InvalidSourceWitness(String),
}

impl fmt::Display for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractError::DoesNotCompleteFrozen => {
                write!(f, "allocation does not complete the frozen allocation")
            }
            ExtractError::FailsChecker(p) => write!(f, "allocation fails the {p} checker"),
            ExtractError::GoodOutsideExpectedAgents { good } => {
                write!(f, "good {good} is not held by an agent the pull-back expects")
            }
            ExtractError::InvalidSourceWitness(msg) => {
                write!(f, "pulled-back witness is invalid: {msg}")
            }
        }
    }
}

impl core::error::Error for ExtractError {}

fn completes_frozen(inst: &Instance, alloc: &PartialAllocation) -> bool {
    alloc.is_complete(inst)
        && (0..inst.m()).all(|g| match inst.frozen_owner(g) {
            Some(owner) => alloc.bundle(owner).contains(&g),
            None => true,
        })
}

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionVariant {
    /// Two agents, cross-valued frozen goods worth the half-sum; EF1
    /// completions correspond to even splits.
    TwoAgentEf1,
    /// Two agents, two cross-valued frozen goods each; PROP1 completions
    /// correspond to even splits.
    TwoAgentProp1,
    /// Three identical agents, two frozen goods worth the half-sum held by
    /// agent 0; EF1 completions correspond to even splits.
    ThreeIdentical,
    /// Three identical agents; agent 0 holds many small frozen goods worth
    /// T + 4*alpha in total, the others one good worth alpha = max weight;
    /// PROP1 completions correspond to even splits.
    ThreeIdenticalProp1,
    /// Two agents, epsilon cross-values realized by doubling all weights and
    /// setting epsilon to 1; MMS completions correspond to even splits.
    MmsTwoAgent,
}

impl PartitionVariant {
    pub fn target_property(self) -> Property {
        match self {
            PartitionVariant::TwoAgentEf1 | PartitionVariant::ThreeIdentical => Property::Ef1,
            PartitionVariant::TwoAgentProp1 | PartitionVariant::ThreeIdenticalProp1 => {
                Property::Prop1
            }
            PartitionVariant::MmsTwoAgent => Property::Mms,
        }
    }
}

/// Instance built from a Partition input, remembering how to pull witnesses
/// back to weight subsets.
#[derive(Debug, Clone)]
pub struct PartitionReduction {
    pub instance: Instance,
    pub variant: PartitionVariant,
    weights: Vec<u64>,
    target: u64,
    /// good index of item k = item_offset + k
    item_offset: usize,
    /// agent whose completion bundle carries the extracted subset
    subset_agent: usize,
}

impl PartitionReduction {
    pub fn new(weights: &[u64], variant: PartitionVariant) -> Result<Self, ReductionError> {
        if weights.contains(&0) {
            return Err(ReductionError::InvalidParams(
                "weights must be positive".to_string(),
            ));
        }
        let sum: u64 = weights.iter().sum();
        if !sum.is_multiple_of(2) {
            return Err(ReductionError::OddWeightSum { sum });
        }
        let target = sum / 2;
        if matches!(
            variant,
            PartitionVariant::TwoAgentEf1 | PartitionVariant::TwoAgentProp1
        ) {
            if let Some((index, &weight)) =
                weights.iter().enumerate().find(|&(_, &w)| w > target)
            {
                return Err(ReductionError::WeightExceedsTarget {
                    index,
                    weight,
                    target,
                });
            }
        }

        let item_names = |offset: usize| -> Vec<String> {
            (0..weights.len()).map(|k| format!("w{}", k + 1)).collect::<Vec<_>>()
                .into_iter()
                .skip(offset)
                .collect()
        };

        let (instance, item_offset, subset_agent) = match variant {
            PartitionVariant::TwoAgentEf1 => {
                let mut goods = alloc::vec!["f1".to_string(), "f2".to_string()];
                goods.extend(item_names(0));
                let mut row0 = alloc::vec![0u64, target];
                let mut row1 = alloc::vec![target, 0u64];
                row0.extend_from_slice(weights);
                row1.extend_from_slice(weights);
                let inst = Instance::additive_u64(
                    goods,
                    alloc::vec![row0, row1],
                    BTreeMap::from([(0, 0), (1, 1)]),
                )
                .expect("valid construction");
                (inst, 2, 0)
            }
            PartitionVariant::TwoAgentProp1 => {
                let mut goods: Vec<String> =
                    (1..=4).map(|j| format!("f{j}")).collect();
                goods.extend(item_names(0));
                let mut row0 = alloc::vec![0, 0, target, target];
                let mut row1 = alloc::vec![target, target, 0, 0];
                row0.extend_from_slice(weights);
                row1.extend_from_slice(weights);
                let inst = Instance::additive_u64(
                    goods,
                    alloc::vec![row0, row1],
                    BTreeMap::from([(0, 0), (1, 0), (2, 1), (3, 1)]),
                )
                .expect("valid construction");
                (inst, 4, 0)
            }
            PartitionVariant::ThreeIdentical => {
                let mut goods = alloc::vec!["f1".to_string(), "f2".to_string()];
                goods.extend(item_names(0));
                let mut row = alloc::vec![target, target];
                row.extend_from_slice(weights);
                let inst = Instance::additive_u64(
                    goods,
                    alloc::vec![row.clone(), row.clone(), row],
                    BTreeMap::from([(0, 0), (1, 0)]),
                )
                .expect("valid construction");
                (inst, 2, 1)
            }
            PartitionVariant::ThreeIdenticalProp1 => {
                // alpha = max weight, epsilon = 1, so agent 0 holds
                // target + 4*alpha unit-value frozen goods
                let alpha = weights.iter().copied().max().unwrap_or(0);
                let filler = target + 4 * alpha;
                let mut goods = alloc::vec!["fa".to_string(), "fb".to_string()];
                goods.extend((0..filler).map(|j| format!("e{}", j + 1)));
                goods.extend(item_names(0));
                let mut row = alloc::vec![alpha, alpha];
                row.extend(core::iter::repeat_n(1u64, filler as usize));
                row.extend_from_slice(weights);
                let mut frozen = BTreeMap::from([(0, 1), (1, 2)]);
                for j in 0..filler as usize {
                    frozen.insert(2 + j, 0);
                }
                let inst = Instance::additive_u64(
                    goods,
                    alloc::vec![row.clone(), row.clone(), row],
                    frozen,
                )
                .expect("valid construction");
                (inst, 2 + filler as usize, 1)
            }
            PartitionVariant::MmsTwoAgent => {
                // double every weight so that epsilon = 1 stays below every
                // item value and all strict comparisons survive
                let scaled: Vec<u64> = weights.iter().map(|&w| 2 * w).collect();
                let mut goods = alloc::vec!["f1".to_string(), "f2".to_string()];
                goods.extend(item_names(0));
                let mut row0 = alloc::vec![0u64, 1];
                let mut row1 = alloc::vec![1u64, 0];
                row0.extend_from_slice(&scaled);
                row1.extend_from_slice(&scaled);
                let inst = Instance::additive_u64(
                    goods,
                    alloc::vec![row0, row1],
                    BTreeMap::from([(0, 0), (1, 1)]),
                )
                .expect("valid construction");
                (inst, 2, 0)
            }
        };

        Ok(PartitionReduction {
            instance,
            variant,
            weights: weights.to_vec(),
            target,
            item_offset,
            subset_agent,
        })
    }

    /// Pulls an allocation of the reduced instance back to the indices of a
    /// weight subset summing to half the total. The allocation must complete
    /// the frozen allocation and pass the variant's target property checker.
    pub fn extract_witness(&self, alloc: &PartialAllocation) -> Result<Vec<usize>, ExtractError> {
        let inst = &self.instance;
        if !completes_frozen(inst, alloc) {
            return Err(ExtractError::DoesNotCompleteFrozen);
        }
        let property = self.variant.target_property();
        let holds = match property {
            Property::Ef1 => check_ef1(inst, alloc).expect("complete").holds,
            Property::Prop1 => check_prop1(inst, alloc).expect("complete").holds,
            Property::Mms => {
                let mu: Vec<BigUint> = (0..inst.n_agents())
                    .map(|i| mms_value_bruteforce(inst, i, DEFAULT_BUDGET).expect("small").mu)
                    .collect();
                check_alpha_mms(inst, alloc, Alpha::one(), &mu)
                    .expect("complete")
                    .holds
            }
            _ => unreachable!("partition variants target ef1/prop1/mms"),
        };
        if !holds {
            return Err(ExtractError::FailsChecker(property));
        }
        let subset: Vec<usize> = alloc
            .bundle(self.subset_agent)
            .iter()
            .filter(|&&g| g >= self.item_offset)
            .map(|&g| g - self.item_offset)
            .collect();
        let sum: u64 = subset.iter().map(|&k| self.weights[k]).sum();
        if sum != self.target {
            return Err(ExtractError::InvalidSourceWitness(format!(
                "subset sums to {sum}, expected {}",
                self.target
            )));
        }
        Ok(subset)
    }
}

// ---------------------------------------------------------------------------
// Equitable Coloring
// ---------------------------------------------------------------------------

/// Simple undirected graph given by vertex names and edges over vertex
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self, ReductionError> {
        let mut seen = BTreeSet::new();
        for name in &vertices {
            if !seen.insert(name) {
                return Err(ReductionError::MalformedGraph(format!(
                    "duplicate vertex {name:?}"
                )));
            }
        }
        for &(u, v) in &edges {
            if u >= vertices.len() || v >= vertices.len() {
                return Err(ReductionError::MalformedGraph(format!(
                    "edge ({u}, {v}) leaves the vertex range"
                )));
            }
            if u == v {
                return Err(ReductionError::MalformedGraph(format!("self-loop at {u}")));
            }
        }
        Ok(Graph { vertices, edges })
    }

    /// True iff `coloring` (one color per vertex) gives adjacent vertices
    /// different colors and uses every color class equally often.
    pub fn is_equitable_proper_coloring(&self, coloring: &[usize], k: usize) -> bool {
        if coloring.len() != self.vertices.len() || k == 0 || !self.vertices.len().is_multiple_of(k) {
            return false;
        }
        if coloring.iter().any(|&c| c >= k) {
            return false;
        }
        if self.edges.iter().any(|&(u, v)| coloring[u] == coloring[v]) {
            return false;
        }
        let mut counts = alloc::vec![0usize; k];
        for &c in coloring {
            counts[c] += 1;
        }
        counts.iter().all(|&c| c == self.vertices.len() / k)
    }
}

/// Binary instance encoding an Equitable Coloring question: each color agent
/// must absorb an equal share of the vertex goods to stop envying the dummy
/// holder, and edge agents forbid monochromatic edges.
#[derive(Debug, Clone)]
pub struct EquitableColoringReduction {
    pub instance: Instance,
    /// Input graph after padding with isolated vertices up to a multiple of
    /// the color count; the pull-back colors these padded vertices too.
    pub graph: Graph,
    pub k: usize,
    color_agent_offset: usize,
}

impl EquitableColoringReduction {
    pub fn new(graph: &Graph, k: usize) -> Result<Self, ReductionError> {
        if k == 0 {
            return Err(ReductionError::InvalidParams(
                "at least one color required".to_string(),
            ));
        }
        let mut padded = graph.clone();
        let mut pad = 0;
        while !padded.vertices.len().is_multiple_of(k) {
            padded.vertices.push(format!("_pad{pad}"));
            pad += 1;
        }
        let q = padded.vertices.len();
        let t = q / k;
        let e = padded.edges.len();
        let n_agents = e + k + 1;
        let special = e + k;

        let mut goods: Vec<String> = padded.vertices.clone();
        goods.extend((1..=t + 1).map(|j| format!("d{j}")));
        let m = goods.len();

        let mut values = alloc::vec![alloc::vec![0u64; m]; n_agents];
        for (idx, &(u, v)) in padded.edges.iter().enumerate() {
            values[idx][u] = 1;
            values[idx][v] = 1;
        }
        for c in 0..k {
            for g in 0..m {
                values[e + c][g] = 1;
            }
        }
        for d in 0..=t {
            values[special][q + d] = 1;
        }

        let frozen: BTreeMap<usize, usize> = (0..=t).map(|d| (q + d, special)).collect();
        let instance =
            Instance::binary(goods, values, frozen).expect("valid construction");
        Ok(EquitableColoringReduction {
            instance,
            graph: padded,
            k,
            color_agent_offset: e,
        })
    }

    pub fn color_agent(&self, color: usize) -> usize {
        self.color_agent_offset + color
    }

    /// Pulls an EF1 completion back to an equitable proper coloring of the
    /// (padded) graph: each vertex is colored by the color agent holding its
    /// vertex good.
    pub fn extract_witness(&self, alloc: &PartialAllocation) -> Result<Vec<usize>, ExtractError> {
        let inst = &self.instance;
        if !completes_frozen(inst, alloc) {
            return Err(ExtractError::DoesNotCompleteFrozen);
        }
        if !check_ef1(inst, alloc).expect("complete").holds {
            return Err(ExtractError::FailsChecker(Property::Ef1));
        }
        let mut coloring = Vec::with_capacity(self.graph.vertices.len());
        for v in 0..self.graph.vertices.len() {
            let owner = alloc.owner_of(v).expect("complete allocation");
            if owner < self.color_agent_offset || owner >= self.color_agent_offset + self.k {
                return Err(ExtractError::GoodOutsideExpectedAgents { good: v });
            }
            coloring.push(owner - self.color_agent_offset);
        }
        if !self.graph.is_equitable_proper_coloring(&coloring, self.k) {
            return Err(ExtractError::InvalidSourceWitness(
                "pulled-back coloring is not equitable and proper".to_string(),
            ));
        }
        Ok(coloring)
    }
}

// ---------------------------------------------------------------------------
// Rainbow Coloring
// ---------------------------------------------------------------------------

/// Hypergraph given by vertex names and hyperedges over vertex indices.
/// Hyperedges are stored as sorted vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        let mut seen = BTreeSet::new();
        for name in &vertices {
            if !seen.insert(name) {
                return Err(ReductionError::MalformedGraph(format!(
                    "duplicate vertex {name:?}"
                )));
            }
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for edge in edges {
            let set: BTreeSet<usize> = edge.into_iter().collect();
            if set.iter().any(|&v| v >= vertices.len()) {
                return Err(ReductionError::MalformedGraph(
                    "hyperedge leaves the vertex range".to_string(),
                ));
            }
            normalized.push(set.into_iter().collect());
        }
        Ok(Hypergraph {
            vertices,
            edges: normalized,
        })
    }

    /// True iff every hyperedge has pairwise distinct colors.
    pub fn is_rainbow_coloring(&self, coloring: &[usize], k: usize) -> bool {
        if coloring.len() != self.vertices.len() || coloring.iter().any(|&c| c >= k) {
            return false;
        }
        self.edges.iter().all(|edge| {
            let distinct: BTreeSet<usize> = edge.iter().map(|&v| coloring[v]).collect();
            distinct.len() == edge.len()
        })
    }
}

/// Lexicographic instance encoding a Rainbow Coloring question. Pair agents
/// force every vertex good onto a color agent, and hyperedge agents forbid
/// two vertices of one hyperedge from sharing a color agent.
#[derive(Debug, Clone)]
pub struct RainbowColoringReduction {
    pub instance: Instance,
    /// Input hypergraph with two singleton hyperedges per vertex appended.
    pub hypergraph: Hypergraph,
    pub k: usize,
    color_agent_offset: usize,
}

impl RainbowColoringReduction {
    pub fn new(hypergraph: &Hypergraph, k: usize) -> Result<Self, ReductionError> {
        if k == 0 {
            return Err(ReductionError::InvalidParams(
                "at least one color required".to_string(),
            ));
        }
        for (idx, edge) in hypergraph.edges.iter().enumerate() {
            if edge.len() > k {
                return Err(ReductionError::HyperedgeTooLarge {
                    edge: idx,
                    size: edge.len(),
                    colors: k,
                });
            }
        }
        let mut padded = hypergraph.clone();
        for v in 0..padded.vertices.len() {
            padded.edges.push(alloc::vec![v]);
            padded.edges.push(alloc::vec![v]);
        }
        let q = padded.vertices.len();
        let r = padded.edges.len();
        let n_agents = r + k + q * r;

        // goods: vertex goods, then one frozen good per hyperedge agent,
        // color agent, and pair agent
        let mut goods: Vec<String> = padded.vertices.clone();
        goods.extend((0..r).map(|e| format!("edge{e}")));
        goods.extend((0..k).map(|c| format!("color{c}")));
        for e in 0..r {
            for v in 0..q {
                goods.push(format!("pair{e}_{v}"));
            }
        }
        let edge_good = |e: usize| q + e;
        let color_good = |c: usize| q + r + c;
        let pair_good = |e: usize, v: usize| q + r + k + e * q + v;
        let m = goods.len();

        let mut rankings: Vec<Vec<usize>> = Vec::with_capacity(n_agents);
        // hyperedge agents: own vertices, then all edge and pair goods
        // except the own frozen good, then the own good, then the rest
        for (e, edge) in padded.edges.iter().enumerate() {
            let members: BTreeSet<usize> = edge.iter().copied().collect();
            let mut ranking: Vec<usize> = members.iter().copied().collect();
            for other in 0..r {
                if other != e {
                    ranking.push(edge_good(other));
                }
            }
            for pe in 0..r {
                for pv in 0..q {
                    ranking.push(pair_good(pe, pv));
                }
            }
            ranking.push(edge_good(e));
            for v in 0..q {
                if !members.contains(&v) {
                    ranking.push(v);
                }
            }
            for c in 0..k {
                ranking.push(color_good(c));
            }
            rankings.push(ranking);
        }
        // color agents: own frozen good first, rest in index order
        for c in 0..k {
            let mut ranking = alloc::vec![color_good(c)];
            ranking.extend((0..m).filter(|&g| g != color_good(c)));
            rankings.push(ranking);
        }
        // pair agents: vertex, the hyperedge's frozen good, all pair goods
        // except the own one, the own good, then the rest
        for e in 0..r {
            for v in 0..q {
                let mut ranking = alloc::vec![v, edge_good(e)];
                for pe in 0..r {
                    for pv in 0..q {
                        if (pe, pv) != (e, v) {
                            ranking.push(pair_good(pe, pv));
                        }
                    }
                }
                ranking.push(pair_good(e, v));
                for g in 0..q {
                    if g != v {
                        ranking.push(g);
                    }
                }
                for other in 0..r {
                    if other != e {
                        ranking.push(edge_good(other));
                    }
                }
                for c in 0..k {
                    ranking.push(color_good(c));
                }
                rankings.push(ranking);
            }
        }

        let mut frozen = BTreeMap::new();
        for e in 0..r {
            frozen.insert(edge_good(e), e);
        }
        for c in 0..k {
            frozen.insert(color_good(c), r + c);
        }
        for e in 0..r {
            for v in 0..q {
                frozen.insert(pair_good(e, v), r + k + e * q + v);
            }
        }

        let instance =
            Instance::lexicographic(goods, rankings, frozen).expect("valid construction");
        Ok(RainbowColoringReduction {
            instance,
            hypergraph: padded,
            k,
            color_agent_offset: r,
        })
    }

    pub fn color_agent(&self, color: usize) -> usize {
        self.color_agent_offset + color
    }

    /// Pulls an EF1 completion back to a rainbow coloring: each vertex is
    /// colored by the color agent holding its vertex good.
    pub fn extract_witness(&self, alloc: &PartialAllocation) -> Result<Vec<usize>, ExtractError> {
        let inst = &self.instance;
        if !completes_frozen(inst, alloc) {
            return Err(ExtractError::DoesNotCompleteFrozen);
        }
        if !check_ef1(inst, alloc).expect("complete").holds {
            return Err(ExtractError::FailsChecker(Property::Ef1));
        }
        let mut coloring = Vec::with_capacity(self.hypergraph.vertices.len());
        for v in 0..self.hypergraph.vertices.len() {
            let owner = alloc.owner_of(v).expect("complete allocation");
            if owner < self.color_agent_offset || owner >= self.color_agent_offset + self.k {
                return Err(ExtractError::GoodOutsideExpectedAgents { good: v });
            }
            coloring.push(owner - self.color_agent_offset);
        }
        if !self.hypergraph.is_rainbow_coloring(&coloring, self.k) {
            return Err(ExtractError::InvalidSourceWitness(
                "pulled-back coloring is not rainbow".to_string(),
            ));
        }
        Ok(coloring)
    }
}

// ---------------------------------------------------------------------------
// Counterexample families
// ---------------------------------------------------------------------------

/// Two agents, four goods: a Pareto-optimal frozen allocation under
/// lexicographic valuations where no completion reaches both maximin shares
/// (agent 0 needs one of the unallocated goods, agent 1 needs both).
pub fn no_mms_lex() -> Instance {
    Instance::lexicographic(
        alloc::vec![
            "g1".to_string(),
            "g2".to_string(),
            "f1".to_string(),
            "f2".to_string(),
        ],
        alloc::vec![alloc::vec![0, 1, 2, 3], alloc::vec![2, 3, 0, 1]],
        BTreeMap::from([(2, 0), (3, 1)]),
    )
    .expect("valid construction")
}

fn lcm_up_to(n: u64) -> BigUint {
    let mut acc = BigUint::from(1u8);
    for j in 2..=n {
        let j = BigUint::from(j);
        let g = gcd(acc.clone(), j.clone());
        acc = acc / g * j;
    }
    acc
}

fn gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    while b != BigUint::ZERO {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Additive family with no alpha-MMS completion even though the frozen
/// allocation is Pareto optimal over the frozen goods and every frozen
/// bundle is a singleton.
///
/// The agent count is the smallest n with (alpha/2) * H_n > 1 (H_n the n-th
/// harmonic number, compared exactly). Every agent values each of the `ell`
/// unallocated goods at one scaling unit S = lcm(1..n) * (n * den(alpha) + 1);
/// frozen good j is worth j to agents i >= j (the epsilon tier, all below
/// one unit) and S*ell/i to agents i < j.
pub fn no_alpha_mms_additive(alpha: Alpha, ell: Option<u64>) -> Result<Instance, ReductionError> {
    // minimal n with H_n > 2/alpha, i.e. num * H_n > 2 * den exactly
    let mut num_h = BigUint::ZERO; // H_n = num_h / den_h
    let mut den_h = BigUint::from(1u8);
    let mut n: u64 = 0;
    loop {
        n += 1;
        num_h = num_h * n + &den_h;
        den_h *= n;
        if num_h.clone() * alpha.num() > den_h.clone() * (2 * alpha.den()) {
            break;
        }
        if n > 10_000 {
            return Err(ReductionError::InvalidParams(
                "alpha is too small: the derived agent count exceeds 10000".to_string(),
            ));
        }
    }
    let ell = ell.unwrap_or(n);
    if ell < n {
        return Err(ReductionError::InvalidParams(format!(
            "ell = {ell} must be at least the derived agent count {n}"
        )));
    }
    let unit = lcm_up_to(n) * (n * alpha.den() + 1);

    let mut goods: Vec<String> = (1..=n).map(|j| format!("f{j}")).collect();
    goods.extend((1..=ell).map(|j| format!("u{j}")));
    let mut values = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let mut row = Vec::with_capacity((n + ell) as usize);
        for j in 1..=n {
            if j <= i {
                row.push(BigUint::from(j));
            } else {
                row.push(&unit * ell / i);
            }
        }
        for _ in 0..ell {
            row.push(unit.clone());
        }
        values.push(row);
    }
    let frozen: BTreeMap<usize, usize> = (0..n as usize).map(|j| (j, j)).collect();
    Ok(Instance::additive(goods, values, frozen).expect("valid construction"))
}

/// Binary family with no alpha-MMS completion: y shared goods approved by
/// everybody plus, per agent, y frozen goods the owner values at zero. Each
/// maximin share is y, so alpha-MMS forces every agent to take x = num(alpha)
/// of the shared goods, which n > y/x agents cannot all do.
pub fn no_alpha_mms_binary(alpha: Alpha, n: Option<u64>) -> Result<Instance, ReductionError> {
    let x = alpha.num();
    let y = alpha.den();
    let n = n.unwrap_or(y / x + 1);
    if n * x <= y {
        return Err(ReductionError::InvalidParams(format!(
            "need n * {x} > {y} agents for the shared goods to run out, got n = {n}"
        )));
    }
    if n < 1 {
        return Err(ReductionError::InvalidParams("need at least one agent".to_string()));
    }
    let mut goods: Vec<String> = (1..=y).map(|j| format!("g{j}")).collect();
    for i in 1..=n {
        goods.extend((1..=y).map(move |j| format!("g{i}_{j}")));
    }
    let mut values = Vec::with_capacity(n as usize);
    for i in 0..n {
        let mut row = alloc::vec![1u64; y as usize];
        for owner in 0..n {
            let block = if owner == i { 0 } else { 1 };
            row.extend(core::iter::repeat_n(block, y as usize));
        }
        values.push(row);
    }
    let mut frozen = BTreeMap::new();
    for i in 0..n as usize {
        for j in 0..y as usize {
            frozen.insert(y as usize + i * y as usize + j, i);
        }
    }
    Ok(Instance::binary(goods, values, frozen).expect("valid construction"))
}

/// Three-agent binary instance whose Nash-welfare-maximal completion fails
/// EF1 although an EF1 and Pareto-optimal completion exists.
pub fn mnw_not_ef1() -> Instance {
    Instance::binary(
        alloc::vec![
            "g1".to_string(),
            "g2".to_string(),
            "g3".to_string(),
            "g4".to_string(),
            "f1".to_string(),
            "f2".to_string(),
            "f3".to_string(),
            "f4".to_string(),
        ],
        alloc::vec![
            alloc::vec![1, 1, 0, 0, 0, 0, 0, 0],
            alloc::vec![1, 1, 1, 1, 1, 1, 1, 1],
            alloc::vec![0, 0, 0, 0, 1, 1, 1, 1],
        ],
        BTreeMap::from([(4, 2), (5, 2), (6, 2), (7, 2)]),
    )
    .expect("valid construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::{check_po_binary, check_sequencible, SeqVerdict};
    use crate::model::SolveStatus;
    use crate::oracle::{oracle_solve, OracleBudgets};
    use alloc::vec;

    fn vertex_names(n: usize) -> Vec<String> {
        (0..n).map(|v| format!("v{v}")).collect()
    }

    #[test]
    fn partition_rejects_odd_sum_and_big_weights() {
        assert!(matches!(
            PartitionReduction::new(&[1, 1, 3], PartitionVariant::TwoAgentEf1),
            Err(ReductionError::OddWeightSum { sum: 5 })
        ));
        assert!(matches!(
            PartitionReduction::new(&[1, 1, 6], PartitionVariant::TwoAgentEf1),
            Err(ReductionError::WeightExceedsTarget { .. })
        ));
        // the three-agent and mms variants tolerate weights above the target
        assert!(PartitionReduction::new(&[1, 1, 6], PartitionVariant::ThreeIdentical).is_ok());
        assert!(PartitionReduction::new(&[1, 1, 6], PartitionVariant::MmsTwoAgent).is_ok());
    }

    #[test]
    fn partition_two_agent_ef1_yes_instance() {
        let red = PartitionReduction::new(&[1, 1, 2], PartitionVariant::TwoAgentEf1).unwrap();
        let outcome = oracle_solve(&red.instance, &[Property::Ef1], OracleBudgets::default());
        let witness = outcome.witness.expect("even split exists");
        let subset = red.extract_witness(&witness).unwrap();
        let sum: u64 = subset.iter().map(|&k| [1u64, 1, 2][k]).sum();
        assert_eq!(sum, 2);
    }

    #[test]
    fn partition_three_identical_small_split() {
        let red = PartitionReduction::new(&[1, 1], PartitionVariant::ThreeIdentical).unwrap();
        let outcome = oracle_solve(&red.instance, &[Property::Ef1], OracleBudgets::default());
        assert_eq!(outcome.status, SolveStatus::Witness);
        red.extract_witness(&outcome.witness.unwrap()).unwrap();
    }

    #[test]
    fn partition_extract_rejects_bad_allocation() {
        let red = PartitionReduction::new(&[1, 1, 2], PartitionVariant::TwoAgentEf1).unwrap();
        // everything to agent 0 completes F but is not EF1
        let mut bundles = vec![BTreeSet::new(), BTreeSet::new()];
        bundles[0] = BTreeSet::from([0, 2, 3, 4]);
        bundles[1] = BTreeSet::from([1]);
        let alloc = PartialAllocation::new(&red.instance, bundles).unwrap();
        assert!(matches!(
            red.extract_witness(&alloc),
            Err(ExtractError::FailsChecker(Property::Ef1))
        ));
    }

    #[test]
    fn equitable_coloring_four_cycle() {
        let graph = Graph::new(
            vertex_names(4),
            vec![(0, 1), (1, 2), (2, 3), (3, 0)],
        )
        .unwrap();
        let red = EquitableColoringReduction::new(&graph, 2).unwrap();
        assert!(check_po_binary(&red.instance, &red.instance.frozen_allocation())
            .unwrap()
            .holds);
        let outcome = oracle_solve(&red.instance, &[Property::Ef1], OracleBudgets::default());
        let witness = outcome.witness.expect("a 4-cycle is equitably 2-colorable");
        let coloring = red.extract_witness(&witness).unwrap();
        assert!(red.graph.is_equitable_proper_coloring(&coloring, 2));
    }

    #[test]
    fn equitable_coloring_triangle_padded_is_no_instance() {
        let graph = Graph::new(vertex_names(3), vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let red = EquitableColoringReduction::new(&graph, 2).unwrap();
        assert_eq!(red.graph.vertices.len(), 4);
        let outcome = oracle_solve(&red.instance, &[Property::Ef1], OracleBudgets::default());
        assert_eq!(outcome.status, SolveStatus::NoneExists);
    }

    #[test]
    fn equitable_coloring_edgeless_graph() {
        let graph = Graph::new(vertex_names(2), vec![]).unwrap();
        let red = EquitableColoringReduction::new(&graph, 2).unwrap();
        let outcome = oracle_solve(&red.instance, &[Property::Ef1], OracleBudgets::default());
        assert_eq!(outcome.status, SolveStatus::Witness);
    }

    #[test]
    fn rainbow_single_edge_two_colors() {
        let h = Hypergraph::new(vertex_names(2), vec![vec![0, 1]]).unwrap();
        let red = RainbowColoringReduction::new(&h, 2).unwrap();
        // two singleton hyperedges per vertex appended
        assert_eq!(red.hypergraph.edges.len(), 5);
        assert_eq!(red.instance.n_agents(), 5 + 2 + 2 * 5);
        let outcome = oracle_solve(&red.instance, &[Property::Ef1], OracleBudgets::default());
        let witness = outcome.witness.expect("two colors suffice");
        let coloring = red.extract_witness(&witness).unwrap();
        assert_ne!(coloring[0], coloring[1]);
    }

    #[test]
    fn rainbow_rejects_oversized_hyperedge() {
        let h = Hypergraph::new(vertex_names(2), vec![vec![0, 1]]).unwrap();
        assert!(matches!(
            RainbowColoringReduction::new(&h, 1),
            Err(ReductionError::HyperedgeTooLarge { .. })
        ));
    }

    #[test]
    fn rainbow_pure_singletons_single_color() {
        let h = Hypergraph::new(vertex_names(1), vec![vec![0], vec![0]]).unwrap();
        let red = RainbowColoringReduction::new(&h, 1).unwrap();
        let outcome = oracle_solve(&red.instance, &[Property::Ef1], OracleBudgets::default());
        assert_eq!(outcome.status, SolveStatus::Witness);
    }

    #[test]
    fn no_mms_lex_frozen_part_is_sequencible() {
        let inst = no_mms_lex();
        let verdict = check_sequencible(&inst, &inst.frozen_allocation()).unwrap();
        assert!(matches!(verdict, SeqVerdict::Sequencible(_)));
    }

    #[test]
    fn no_alpha_mms_additive_alpha_one_derives_four_agents() {
        let inst = no_alpha_mms_additive(Alpha::one(), None).unwrap();
        assert_eq!(inst.n_agents(), 4);
        assert_eq!(inst.m(), 8);
        assert_eq!(inst.unallocated().len(), 4);
        // scaling unit S = lcm(1..4) * (4 + 1) = 60; check a few entries
        let s = BigUint::from(60u8);
        assert_eq!(inst.item_value(0, 4), &s);
        // agent 1 (0-indexed 0) values f2 at S*ell/1
        assert_eq!(inst.item_value(0, 1), &(&s * 4u8));
        // agent 4 values f4 in the epsilon tier
        assert_eq!(inst.item_value(3, 3), &BigUint::from(4u8));
    }

    #[test]
    fn no_alpha_mms_binary_matches_shared_goods_layout() {
        let inst = no_alpha_mms_binary(Alpha::one(), None).unwrap();
        assert_eq!(inst.n_agents(), 2);
        assert_eq!(inst.m(), 3);
        assert_eq!(inst.unallocated(), vec![0]);
        assert_eq!(inst.item_value(0, 1), &BigUint::ZERO);
        assert_eq!(inst.item_value(1, 1), &BigUint::from(1u8));
    }
}
