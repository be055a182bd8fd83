//! Cross-checks of the graph kernels and the sequencibility checker against
//! independent exhaustive oracles.

use std::collections::{BTreeMap, BTreeSet};

use faircomp_core::checkers::{check_sequencible, SeqVerdict};
use faircomp_core::graphs::{
    feasible_flow_with_quotas, matching_covering_left, BipartiteGraph, QuotaNetwork,
};
use faircomp_core::model::{Instance, PartialAllocation};

/// Tiny deterministic generator for sampled sweeps.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> usize {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 33) as usize
    }

    fn below(&mut self, bound: usize) -> usize {
        self.next() % bound
    }
}

/// Largest matching size by trying, per left node, every free neighbor or
/// skipping it.
fn exhaustive_max_matching(adjacency: &[Vec<usize>], right: usize) -> usize {
    fn rec(adjacency: &[Vec<usize>], left: usize, used: &mut Vec<bool>) -> usize {
        if left == adjacency.len() {
            return 0;
        }
        let mut best = rec(adjacency, left + 1, used);
        for &r in &adjacency[left] {
            if !used[r] {
                used[r] = true;
                best = best.max(1 + rec(adjacency, left + 1, used));
                used[r] = false;
            }
        }
        best
    }
    let mut used = vec![false; right];
    rec(adjacency, 0, &mut used)
}

fn check_matching_against_oracle(adjacency: &[Vec<usize>], right: usize) {
    let left = adjacency.len();
    let mut graph = BipartiteGraph::new(left, right);
    for (l, neighbors) in adjacency.iter().enumerate() {
        for &r in neighbors {
            graph.add_edge(l, r);
        }
    }
    let covering = matching_covering_left(&graph);
    let oracle_covers = exhaustive_max_matching(adjacency, right) == left;
    match covering {
        Some(matching) => {
            assert!(oracle_covers, "matching reported but oracle finds none");
            let distinct: BTreeSet<usize> = matching.iter().copied().collect();
            assert_eq!(distinct.len(), left, "matching reuses a right node");
            for (l, &r) in matching.iter().enumerate() {
                assert!(adjacency[l].contains(&r), "matched pair is not an edge");
            }
        }
        None => assert!(!oracle_covers, "oracle covers the left side but solver fails"),
    }
}

#[test]
fn matching_agrees_with_enumeration_exhaustively_small() {
    // every bipartite graph with up to 3 + 3 nodes
    for left in 0..=3usize {
        for right in 0..=3usize {
            let pairs = left * right;
            for mask in 0u32..(1 << pairs) {
                let mut adjacency = vec![Vec::new(); left];
                for bit in 0..pairs {
                    if mask & (1 << bit) != 0 {
                        adjacency[bit / right.max(1)].push(bit % right.max(1));
                    }
                }
                check_matching_against_oracle(&adjacency, right);
            }
        }
    }
}

#[test]
fn matching_agrees_with_enumeration_sampled() {
    let mut rng = Lcg(0xfeed5eed);
    for _ in 0..2000 {
        let left = rng.below(6);
        let right = rng.below(6);
        let mut adjacency = vec![Vec::new(); left];
        for row in adjacency.iter_mut() {
            for r in 0..right {
                if rng.below(2) == 0 {
                    row.push(r);
                }
            }
        }
        check_matching_against_oracle(&adjacency, right);
    }
}

/// Does some assignment of goods to approving agents give every agent at
/// least its quota? Goods may also stay unassigned.
fn exhaustive_quota_assignment(approvals: &[Vec<bool>], quotas: &[u64]) -> bool {
    let n = approvals.len();
    let m = if n == 0 { 0 } else { approvals[0].len() };
    fn rec(approvals: &[Vec<bool>], quotas: &[u64], good: usize, counts: &mut Vec<u64>) -> bool {
        let n = approvals.len();
        if good == approvals.first().map_or(0, |row| row.len()) {
            return counts.iter().zip(quotas).all(|(c, q)| c >= q);
        }
        // leave the good out
        if rec(approvals, quotas, good + 1, counts) {
            return true;
        }
        for agent in 0..n {
            if approvals[agent][good] {
                counts[agent] += 1;
                if rec(approvals, quotas, good + 1, counts) {
                    counts[agent] -= 1;
                    return true;
                }
                counts[agent] -= 1;
            }
        }
        false
    }
    let _ = m;
    let mut counts = vec![0u64; n];
    rec(approvals, quotas, 0, &mut counts)
}

fn check_flow_against_assignment(approvals: &[Vec<bool>], quotas: &[u64]) {
    let n = approvals.len();
    let m = approvals.first().map_or(0, |row| row.len());
    let good_node = |g: usize| 2 + g;
    let agent_node = |a: usize| 2 + m + a;
    let mut net = QuotaNetwork::new(2 + m + n, 0, 1);
    for g in 0..m {
        net.add_arc(0, good_node(g), Some(1), 0);
        for a in 0..n {
            if approvals[a][g] {
                net.add_arc(good_node(g), agent_node(a), Some(1), 0);
            }
        }
    }
    for (a, &q) in quotas.iter().enumerate() {
        net.add_arc(agent_node(a), 1, None, q);
    }
    let feasible = feasible_flow_with_quotas(&net).is_some();
    assert_eq!(
        feasible,
        exhaustive_quota_assignment(approvals, quotas),
        "approvals {approvals:?} quotas {quotas:?}"
    );
}

#[test]
fn quota_flow_agrees_with_assignment_search_exhaustively_small() {
    // every approval matrix with n = 2, m <= 3 and every quota vector
    for m in 0..=3usize {
        for mask in 0u32..(1 << (2 * m)) {
            let approvals: Vec<Vec<bool>> = (0..2)
                .map(|a| (0..m).map(|g| mask & (1 << (a * m + g)) != 0).collect())
                .collect();
            for q0 in 0..=(m as u64) {
                for q1 in 0..=(m as u64) {
                    check_flow_against_assignment(&approvals, &[q0, q1]);
                }
            }
        }
    }
}

#[test]
fn quota_flow_agrees_with_assignment_search_sampled() {
    let mut rng = Lcg(0xabcdef);
    for _ in 0..1500 {
        let n = 1 + rng.below(3);
        let m = rng.below(6);
        let approvals: Vec<Vec<bool>> = (0..n)
            .map(|_| (0..m).map(|_| rng.below(2) == 0).collect())
            .collect();
        let quotas: Vec<u64> = (0..n).map(|_| rng.below(m + 2) as u64).collect();
        check_flow_against_assignment(&approvals, &quotas);
    }
}

/// All length-k agent sequences over n agents, as an odometer.
fn sequences(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for seq in &all {
            for a in 0..n {
                let mut extended = seq.clone();
                extended.push(a);
                next.push(extended);
            }
        }
        all = next;
    }
    all
}

/// Simulates a picking sequence over the allocated goods and compares the
/// induced allocation with the target.
fn sequence_realizes(
    inst: &Instance,
    alloc: &PartialAllocation,
    sequence: &[usize],
) -> bool {
    let mut remaining: BTreeSet<usize> = alloc.allocated_goods();
    let mut induced = vec![BTreeSet::new(); inst.n_agents()];
    for &agent in sequence {
        let ranking = inst.ranking(agent).unwrap();
        let top = ranking.iter().copied().find(|g| remaining.contains(g));
        match top {
            Some(g) => {
                remaining.remove(&g);
                induced[agent].insert(g);
            }
            None => return false,
        }
    }
    induced
        .iter()
        .zip(alloc.bundles())
        .all(|(a, b)| a == b)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut all = Vec::new();
    for (idx, &head) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(idx);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            all.push(tail);
        }
    }
    all
}

#[test]
fn sequencible_agrees_with_sequence_enumeration() {
    let mut rng = Lcg(0x5e11ab1e);
    for _ in 0..400 {
        let n = 1 + rng.below(3);
        let m = rng.below(6);
        let goods: Vec<String> = (0..m).map(|g| format!("g{g}")).collect();
        let mut rankings = Vec::new();
        for _ in 0..n {
            let base: Vec<usize> = (0..m).collect();
            let perms = if m <= 1 { vec![base.clone()] } else { permutations(&base) };
            rankings.push(perms[rng.below(perms.len())].clone());
        }
        let inst = Instance::lexicographic(goods, rankings, BTreeMap::new()).unwrap();
        // random partial allocation
        let mut bundles = vec![BTreeSet::new(); n];
        let mut count = 0;
        for g in 0..m {
            let pick = rng.below(n + 1);
            if pick < n {
                bundles[pick].insert(g);
                count += 1;
            }
        }
        let alloc = PartialAllocation::new(&inst, bundles).unwrap();

        let verdict = check_sequencible(&inst, &alloc).unwrap();
        let oracle = sequences(n, count)
            .into_iter()
            .any(|seq| sequence_realizes(&inst, &alloc, &seq));
        match verdict {
            SeqVerdict::Sequencible(seq) => {
                assert!(oracle, "checker found a sequence the oracle rules out");
                assert!(sequence_realizes(&inst, &alloc, &seq));
            }
            SeqVerdict::NotSequencible => assert!(!oracle),
        }
    }
}
