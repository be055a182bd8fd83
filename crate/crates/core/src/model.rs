//! Core data types: instances, allocations, and exact bundle valuation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

/// Which restriction the valuation profile satisfies.
///
/// Binary and lexicographic instances unlock the polynomial-time solvers;
/// general additive instances are served by structural solvers where their
/// preconditions hold and by the exhaustive oracle otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuationClass {
    Binary,
    Lexicographic,
    Additive,
}

impl fmt::Display for ValuationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationClass::Binary => write!(f, "binary"),
            ValuationClass::Lexicographic => write!(f, "lexicographic"),
            ValuationClass::Additive => write!(f, "additive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    NoAgents,
    DuplicateGoodName { name: String },
    ValueRowCount { expected: usize, got: usize },
    ValueColumnCount { agent: usize, expected: usize, got: usize },
    BinaryValueOutOfRange { agent: usize, good: usize },
    RankingNotPermutation { agent: usize },
    GoodIndexOutOfRange { index: usize },
    AgentIndexOutOfRange { index: usize },
    WrongClass { expected: ValuationClass, found: ValuationClass },
    BundleCountMismatch { expected: usize, got: usize },
    OverlappingBundles { good: usize },
    FrozenGoodInCompletion { good: usize },
    UnallocatedGoodMissing { good: usize },
    InvalidAlpha { num: u64, den: u64 },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::NoAgents => write!(f, "instance must have at least one agent"),
            ModelError::DuplicateGoodName { name } => write!(f, "duplicate good name {name:?}"),
            ModelError::ValueRowCount { expected, got } => {
                write!(f, "expected {expected} valuation rows, got {got}")
            }
            ModelError::ValueColumnCount {
                agent,
                expected,
                got,
            } => write!(
                f,
                "agent {agent}: expected {expected} item values, got {got}"
            ),
            ModelError::BinaryValueOutOfRange { agent, good } => write!(
                f,
                "agent {agent}, good {good}: value out of class range (binary values must be 0 or 1)"
            ),
            ModelError::RankingNotPermutation { agent } => {
                write!(f, "agent {agent}: ranking is not a permutation of the goods")
            }
            ModelError::GoodIndexOutOfRange { index } => {
                write!(f, "good index {index} out of range")
            }
            ModelError::AgentIndexOutOfRange { index } => {
                write!(f, "agent index {index} out of range")
            }
            ModelError::WrongClass { expected, found } => {
                write!(f, "expected {expected} valuations, found {found}")
            }
            ModelError::BundleCountMismatch { expected, got } => {
                write!(f, "expected {expected} bundles, got {got}")
            }
            ModelError::OverlappingBundles { good } => {
                write!(f, "good {good} appears in more than one bundle")
            }
            ModelError::FrozenGoodInCompletion { good } => {
                write!(f, "completion assigns frozen good {good}")
            }
            ModelError::UnallocatedGoodMissing { good } => {
                write!(f, "completion does not cover unallocated good {good}")
            }
            ModelError::InvalidAlpha { num, den } => {
                write!(f, "alpha {num}/{den} must lie in (0, 1]")
            }
        }
    }
}

impl core::error::Error for ModelError {}

/// A completion problem instance: agents, goods, valuations, and the frozen
/// partial allocation.
///
/// Good and agent identifiers are external strings and dense indices
/// respectively; all algorithms operate on the indices, which makes every
/// tie-break deterministic. Lexicographic rankings are realized cardinally as
/// `2^(m - rank)` at construction time, so `item_value` and `bundle_value`
/// are uniform across the three classes; the original rankings are kept for
/// the ordinal algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n_agents: usize,
    goods: Vec<String>,
    class: ValuationClass,
    values: Vec<Vec<BigUint>>,
    rankings: Option<Vec<Vec<usize>>>,
    frozen: Vec<Option<usize>>,
}

impl Instance {
    /// Binary additive instance; every value must be 0 or 1.
    pub fn binary(
        goods: Vec<String>,
        values: Vec<Vec<u64>>,
        frozen: BTreeMap<usize, usize>,
    ) -> Result<Self, ModelError> {
        let n = values.len();
        for (agent, row) in values.iter().enumerate() {
            for (good, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(ModelError::BinaryValueOutOfRange { agent, good });
                }
            }
        }
        let big = values
            .into_iter()
            .map(|row| row.into_iter().map(BigUint::from).collect())
            .collect();
        Self::build(n, goods, ValuationClass::Binary, big, None, frozen)
    }

    /// General additive instance with arbitrary-precision item values.
    pub fn additive(
        goods: Vec<String>,
        values: Vec<Vec<BigUint>>,
        frozen: BTreeMap<usize, usize>,
    ) -> Result<Self, ModelError> {
        let n = values.len();
        Self::build(n, goods, ValuationClass::Additive, values, None, frozen)
    }

    /// Convenience constructor for additive instances with machine-word values.
    pub fn additive_u64(
        goods: Vec<String>,
        values: Vec<Vec<u64>>,
        frozen: BTreeMap<usize, usize>,
    ) -> Result<Self, ModelError> {
        let big = values
            .into_iter()
            .map(|row| row.into_iter().map(BigUint::from).collect())
            .collect();
        Self::additive(goods, big, frozen)
    }

    /// Lexicographic instance. `rankings[i]` lists good indices from most to
    /// least preferred and must be a permutation of all goods.
    pub fn lexicographic(
        goods: Vec<String>,
        rankings: Vec<Vec<usize>>,
        frozen: BTreeMap<usize, usize>,
    ) -> Result<Self, ModelError> {
        let n = rankings.len();
        let m = goods.len();
        let mut values = Vec::with_capacity(n);
        for (agent, ranking) in rankings.iter().enumerate() {
            if ranking.len() != m {
                return Err(ModelError::RankingNotPermutation { agent });
            }
            let mut row = alloc::vec![BigUint::ZERO; m];
            let mut seen = alloc::vec![false; m];
            for (pos, &g) in ranking.iter().enumerate() {
                if g >= m || seen[g] {
                    return Err(ModelError::RankingNotPermutation { agent });
                }
                seen[g] = true;
                // rank r = pos + 1, value 2^(m - r)
                row[g] = BigUint::from(1u8) << (m - pos - 1);
            }
            values.push(row);
        }
        Self::build(
            n,
            goods,
            ValuationClass::Lexicographic,
            values,
            Some(rankings),
            frozen,
        )
    }

    fn build(
        n_agents: usize,
        goods: Vec<String>,
        class: ValuationClass,
        values: Vec<Vec<BigUint>>,
        rankings: Option<Vec<Vec<usize>>>,
        frozen: BTreeMap<usize, usize>,
    ) -> Result<Self, ModelError> {
        if n_agents == 0 {
            return Err(ModelError::NoAgents);
        }
        let m = goods.len();
        let mut names = BTreeSet::new();
        for name in &goods {
            if !names.insert(name) {
                return Err(ModelError::DuplicateGoodName { name: name.clone() });
            }
        }
        for (agent, row) in values.iter().enumerate() {
            if row.len() != m {
                return Err(ModelError::ValueColumnCount {
                    agent,
                    expected: m,
                    got: row.len(),
                });
            }
        }
        let mut frozen_vec = alloc::vec![None; m];
        for (&good, &agent) in &frozen {
            if good >= m {
                return Err(ModelError::GoodIndexOutOfRange { index: good });
            }
            if agent >= n_agents {
                return Err(ModelError::AgentIndexOutOfRange { index: agent });
            }
            frozen_vec[good] = Some(agent);
        }
        Ok(Instance {
            n_agents,
            goods,
            class,
            values,
            rankings,
            frozen: frozen_vec,
        })
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    /// Number of goods.
    pub fn m(&self) -> usize {
        self.goods.len()
    }

    pub fn class(&self) -> ValuationClass {
        self.class
    }

    pub fn good_names(&self) -> &[String] {
        &self.goods
    }

    pub fn item_value(&self, agent: usize, good: usize) -> &BigUint {
        &self.values[agent][good]
    }

    pub fn item_values(&self, agent: usize) -> &[BigUint] {
        &self.values[agent]
    }

    /// Preference order over goods (most preferred first) for lexicographic
    /// instances.
    pub fn ranking(&self, agent: usize) -> Option<&[usize]> {
        self.rankings.as_ref().map(|r| r[agent].as_slice())
    }

    pub fn frozen_owner(&self, good: usize) -> Option<usize> {
        self.frozen[good]
    }

    /// The frozen partial allocation F.
    pub fn frozen_allocation(&self) -> PartialAllocation {
        let mut bundles = alloc::vec![BTreeSet::new(); self.n_agents];
        for (good, owner) in self.frozen.iter().enumerate() {
            if let Some(agent) = owner {
                bundles[*agent].insert(good);
            }
        }
        PartialAllocation { bundles }
    }

    /// The unallocated set U, in index order.
    pub fn unallocated(&self) -> Vec<usize> {
        (0..self.m()).filter(|&g| self.frozen[g].is_none()).collect()
    }

    /// Additive value of a bundle from `agent`'s viewpoint, computed with
    /// arbitrary precision. For lexicographic instances this is the sum of
    /// the `2^(m - rank)` realization, which orders bundles exactly as the
    /// ordinal preference extension does.
    pub fn bundle_value(&self, agent: usize, bundle: &BTreeSet<usize>) -> BigUint {
        assert!(agent < self.n_agents, "agent index out of range");
        let mut total = BigUint::ZERO;
        for &g in bundle {
            assert!(g < self.m(), "good index out of range");
            total += &self.values[agent][g];
        }
        total
    }

    /// v_i(M): the agent's value for all goods.
    pub fn total_value(&self, agent: usize) -> BigUint {
        let mut total = BigUint::ZERO;
        for v in &self.values[agent] {
            total += v;
        }
        total
    }

    /// Converts a lexicographic instance into the consistent general-additive
    /// instance with item values `2^(m - rank)`. Bundle order is preserved:
    /// a bundle is preferred under the rankings iff its realized value is
    /// larger.
    pub fn cardinal_realization(&self) -> Result<Instance, ModelError> {
        if self.class != ValuationClass::Lexicographic {
            return Err(ModelError::WrongClass {
                expected: ValuationClass::Lexicographic,
                found: self.class,
            });
        }
        Ok(Instance {
            n_agents: self.n_agents,
            goods: self.goods.clone(),
            class: ValuationClass::Additive,
            values: self.values.clone(),
            rankings: None,
            frozen: self.frozen.clone(),
        })
    }
}

/// An ordered subpartition of the goods: pairwise disjoint per-agent bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAllocation {
    bundles: Vec<BTreeSet<usize>>,
}

impl PartialAllocation {
    pub fn new(inst: &Instance, bundles: Vec<BTreeSet<usize>>) -> Result<Self, ModelError> {
        if bundles.len() != inst.n_agents() {
            return Err(ModelError::BundleCountMismatch {
                expected: inst.n_agents(),
                got: bundles.len(),
            });
        }
        let mut seen = alloc::vec![false; inst.m()];
        for bundle in &bundles {
            for &g in bundle {
                if g >= inst.m() {
                    return Err(ModelError::GoodIndexOutOfRange { index: g });
                }
                if seen[g] {
                    return Err(ModelError::OverlappingBundles { good: g });
                }
                seen[g] = true;
            }
        }
        Ok(PartialAllocation { bundles })
    }

    /// Empty allocation for `n` agents.
    pub fn empty(n: usize) -> Self {
        PartialAllocation {
            bundles: alloc::vec![BTreeSet::new(); n],
        }
    }

    pub fn n_agents(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundle(&self, agent: usize) -> &BTreeSet<usize> {
        &self.bundles[agent]
    }

    pub fn bundles(&self) -> &[BTreeSet<usize>] {
        &self.bundles
    }

    pub fn owner_of(&self, good: usize) -> Option<usize> {
        self.bundles.iter().position(|b| b.contains(&good))
    }

    pub fn allocated_goods(&self) -> BTreeSet<usize> {
        let mut all = BTreeSet::new();
        for b in &self.bundles {
            all.extend(b.iter().copied());
        }
        all
    }

    pub fn is_complete(&self, inst: &Instance) -> bool {
        self.bundles.iter().map(|b| b.len()).sum::<usize>() == inst.m()
    }

    pub(crate) fn insert(&mut self, agent: usize, good: usize) {
        self.bundles[agent].insert(good);
    }
}

/// An allocation of exactly the unallocated goods of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    bundles: Vec<BTreeSet<usize>>,
}

impl Completion {
    /// Validates that the bundles are disjoint and cover exactly the
    /// unallocated set U.
    pub fn new(inst: &Instance, bundles: Vec<BTreeSet<usize>>) -> Result<Self, ModelError> {
        if bundles.len() != inst.n_agents() {
            return Err(ModelError::BundleCountMismatch {
                expected: inst.n_agents(),
                got: bundles.len(),
            });
        }
        let mut seen = alloc::vec![false; inst.m()];
        for bundle in &bundles {
            for &g in bundle {
                if g >= inst.m() {
                    return Err(ModelError::GoodIndexOutOfRange { index: g });
                }
                if inst.frozen_owner(g).is_some() {
                    return Err(ModelError::FrozenGoodInCompletion { good: g });
                }
                if seen[g] {
                    return Err(ModelError::OverlappingBundles { good: g });
                }
                seen[g] = true;
            }
        }
        for g in inst.unallocated() {
            if !seen[g] {
                return Err(ModelError::UnallocatedGoodMissing { good: g });
            }
        }
        Ok(Completion { bundles })
    }

    pub fn bundle(&self, agent: usize) -> &BTreeSet<usize> {
        &self.bundles[agent]
    }

    pub fn bundles(&self) -> &[BTreeSet<usize>] {
        &self.bundles
    }
}

/// Merges the instance's frozen allocation with a completion, bundle-wise.
pub fn merge_allocation(inst: &Instance, completion: &Completion) -> PartialAllocation {
    let mut merged = inst.frozen_allocation();
    for (agent, bundle) in completion.bundles.iter().enumerate() {
        for &g in bundle {
            merged.insert(agent, g);
        }
    }
    merged
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Witness,
    NoneExists,
    NotApplicable,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveStatus::Witness => write!(f, "witness"),
            SolveStatus::NoneExists => write!(f, "none_exists"),
            SolveStatus::NotApplicable => write!(f, "not_applicable"),
        }
    }
}

/// Result of a solve call: a witness allocation completing the frozen
/// allocation, a certified non-existence verdict, or "not applicable" when a
/// solver's preconditions are unmet (or an oracle budget is exceeded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub witness: Option<PartialAllocation>,
    /// Names the algorithm or precondition that produced this outcome.
    pub note: String,
}

impl SolveOutcome {
    pub fn witness(alloc: PartialAllocation, note: impl Into<String>) -> Self {
        SolveOutcome {
            status: SolveStatus::Witness,
            witness: Some(alloc),
            note: note.into(),
        }
    }

    pub fn none_exists(note: impl Into<String>) -> Self {
        SolveOutcome {
            status: SolveStatus::NoneExists,
            witness: None,
            note: note.into(),
        }
    }

    pub fn not_applicable(note: impl Into<String>) -> Self {
        SolveOutcome {
            status: SolveStatus::NotApplicable,
            witness: None,
            note: note.into(),
        }
    }

    pub fn exists(&self) -> bool {
        self.status == SolveStatus::Witness
    }
}

/// An exact rational in (0, 1], used for alpha-MMS thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Alpha {
    num: u64,
    den: u64,
}

impl Alpha {
    pub fn new(num: u64, den: u64) -> Result<Self, ModelError> {
        if num == 0 || den == 0 || num > den {
            return Err(ModelError::InvalidAlpha { num, den });
        }
        Ok(Alpha { num, den })
    }

    pub fn one() -> Self {
        Alpha { num: 1, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    /// Two agents, four goods, the rankings of the no-MMS lexicographic
    /// counterexample. Goods in order: g1, g2, f1, f2; f1 frozen to agent 0,
    /// f2 frozen to agent 1.
    fn lex_counterexample() -> Instance {
        Instance::lexicographic(
            names(&["g1", "g2", "f1", "f2"]),
            vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]],
            BTreeMap::from([(2, 0), (3, 1)]),
        )
        .unwrap()
    }

    #[test]
    fn lex_instance_realizes_powers_of_two() {
        let inst = lex_counterexample();
        assert_eq!(inst.unallocated(), vec![0, 1]);
        let expected: Vec<u64> = vec![8, 4, 2, 1];
        for (g, want) in expected.iter().enumerate() {
            assert_eq!(inst.item_value(0, g), &BigUint::from(*want));
        }
        // agent 1 ranks f1 > f2 > g1 > g2
        assert_eq!(inst.item_value(1, 2), &BigUint::from(8u8));
        assert_eq!(inst.item_value(1, 3), &BigUint::from(4u8));
        assert_eq!(inst.item_value(1, 0), &BigUint::from(2u8));
        assert_eq!(inst.item_value(1, 1), &BigUint::from(1u8));
    }

    #[test]
    fn bundle_value_lex_rank() {
        let inst = lex_counterexample();
        // agent 0's rank of f1 is 3, so its value is 2^(4-3) = 2
        let bundle = BTreeSet::from([2]);
        assert_eq!(inst.bundle_value(0, &bundle), BigUint::from(2u8));
        assert_eq!(inst.bundle_value(0, &BTreeSet::new()), BigUint::ZERO);
    }

    #[test]
    fn empty_goods_instance_is_valid() {
        let inst = Instance::binary(Vec::new(), vec![vec![]], BTreeMap::new()).unwrap();
        assert_eq!(inst.m(), 0);
        assert!(inst.unallocated().is_empty());
        assert_eq!(inst.total_value(0), BigUint::ZERO);
    }

    #[test]
    fn binary_value_out_of_range_rejected() {
        let err = Instance::binary(
            names(&["a", "b"]),
            vec![vec![1, 2], vec![0, 0]],
            BTreeMap::new(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            ModelError::BinaryValueOutOfRange { agent: 0, good: 1 }
        );
    }

    #[test]
    fn ranking_must_be_permutation() {
        let err = Instance::lexicographic(
            names(&["a", "b"]),
            vec![vec![0, 0], vec![0, 1]],
            BTreeMap::new(),
        )
        .unwrap_err();
        assert_eq!(err, ModelError::RankingNotPermutation { agent: 0 });
    }

    #[test]
    fn cardinal_realization_small() {
        // m = 2, ranking (a, b) realizes as values (2, 1)
        let inst = Instance::lexicographic(
            names(&["a", "b"]),
            vec![vec![0, 1]],
            BTreeMap::new(),
        )
        .unwrap();
        let real = inst.cardinal_realization().unwrap();
        assert_eq!(real.class(), ValuationClass::Additive);
        assert_eq!(real.item_value(0, 0), &BigUint::from(2u8));
        assert_eq!(real.item_value(0, 1), &BigUint::from(1u8));
        assert!(real.ranking(0).is_none());
    }

    #[test]
    fn cardinal_realization_empty() {
        let inst =
            Instance::lexicographic(Vec::new(), vec![vec![]], BTreeMap::new()).unwrap();
        let real = inst.cardinal_realization().unwrap();
        assert_eq!(real.m(), 0);
    }

    #[test]
    fn cardinal_realization_wrong_class() {
        let inst = Instance::binary(names(&["a"]), vec![vec![1]], BTreeMap::new()).unwrap();
        assert!(matches!(
            inst.cardinal_realization(),
            Err(ModelError::WrongClass { .. })
        ));
    }

    #[test]
    fn merge_disjoint_union() {
        let inst = Instance::binary(
            names(&["f1", "f2", "g1", "g2"]),
            vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]],
            BTreeMap::from([(0, 0), (1, 1)]),
        )
        .unwrap();
        let completion =
            Completion::new(&inst, vec![BTreeSet::from([2]), BTreeSet::from([3])]).unwrap();
        let merged = merge_allocation(&inst, &completion);
        assert_eq!(merged.bundle(0), &BTreeSet::from([0, 2]));
        assert_eq!(merged.bundle(1), &BTreeSet::from([1, 3]));
        assert!(merged.is_complete(&inst));
    }

    #[test]
    fn merge_identity_when_frozen_complete() {
        let inst = Instance::binary(
            names(&["f1", "f2"]),
            vec![vec![1, 0], vec![0, 1]],
            BTreeMap::from([(0, 0), (1, 1)]),
        )
        .unwrap();
        let completion =
            Completion::new(&inst, vec![BTreeSet::new(), BTreeSet::new()]).unwrap();
        let merged = merge_allocation(&inst, &completion);
        assert_eq!(merged, inst.frozen_allocation());
    }

    #[test]
    fn completion_rejects_frozen_good() {
        let inst = Instance::binary(
            names(&["f1", "g1"]),
            vec![vec![1, 1], vec![1, 1]],
            BTreeMap::from([(0, 0)]),
        )
        .unwrap();
        let err =
            Completion::new(&inst, vec![BTreeSet::from([0, 1]), BTreeSet::new()]).unwrap_err();
        assert_eq!(err, ModelError::FrozenGoodInCompletion { good: 0 });
    }

    #[test]
    fn completion_must_cover_unallocated() {
        let inst = Instance::binary(
            names(&["g1", "g2"]),
            vec![vec![1, 1]],
            BTreeMap::new(),
        )
        .unwrap();
        let err = Completion::new(&inst, vec![BTreeSet::from([0])]).unwrap_err();
        assert_eq!(err, ModelError::UnallocatedGoodMissing { good: 1 });
    }

    #[test]
    fn alpha_bounds() {
        assert!(Alpha::new(1, 2).is_ok());
        assert!(Alpha::new(1, 1).is_ok());
        assert!(Alpha::new(0, 1).is_err());
        assert!(Alpha::new(3, 2).is_err());
    }

    #[test]
    fn additivity_on_disjoint_bundles() {
        let inst = Instance::additive_u64(
            names(&["a", "b", "c", "d"]),
            vec![vec![3, 5, 0, 7]],
            BTreeMap::new(),
        )
        .unwrap();
        let s = BTreeSet::from([0, 2]);
        let t = BTreeSet::from([1, 3]);
        let st: BTreeSet<usize> = s.union(&t).copied().collect();
        assert_eq!(
            inst.bundle_value(0, &st),
            inst.bundle_value(0, &s) + inst.bundle_value(0, &t)
        );
    }
}
