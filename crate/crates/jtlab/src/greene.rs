//! Greene's chain invariant of `D_P`, computed by min-cost flow, plus
//! brute-force oracles for cross-checking on small posets.
//!
//! `c_k` is the largest number of vertices covered by a union of `k` chains.
//! The usual reduction computes it: split every vertex into an arc of cost
//! -1 and capacity 1, wire the strict order with free arcs, and send `k`
//! units of flow; successive shortest-path augmentation makes the whole
//! profile `c_1, c_2, ...` fall out of one solver, one unit at a time, with
//! each prefix optimal. `lambda(P)` is the sequence of first differences,
//! which is weakly decreasing — a partition of `n` with `r(P)` parts.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::matching::max_bipartite_matching;
use crate::partition::{r_of, Partition};
use crate::poset::PartitionPoset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("brute-force oracle unavailable: {vertices} vertices exceeds the cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },
}

/// Subset-enumeration cap for the chain-side oracle.
pub const CHAIN_ORACLE_CAP: usize = 12;
/// Subset-enumeration cap for the antichain-side oracle (`k >= 2`; `k = 1`
/// goes through matching and has no cap).
pub const ANTICHAIN_ORACLE_CAP: usize = 16;

#[derive(Clone)]
struct FlowEdge {
    to: usize,
    rev: usize,
    cap: i64,
    cost: i64,
}

struct MinCostFlow {
    graph: Vec<Vec<FlowEdge>>,
}

impl MinCostFlow {
    fn new(nodes: usize) -> Self {
        MinCostFlow {
            graph: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: i64) {
        let rev_from = self.graph[to].len();
        let rev_to = self.graph[from].len();
        self.graph[from].push(FlowEdge {
            to,
            rev: rev_from,
            cap,
            cost,
        });
        self.graph[to].push(FlowEdge {
            to: from,
            rev: rev_to,
            cap: 0,
            cost: -cost,
        });
    }

    /// Bellman-Ford distances from `source`, for the initial potentials (the
    /// vertex arcs carry negative costs before any flow is pushed, so plain
    /// Dijkstra cannot start things off).
    fn bellman_ford(&self, source: usize) -> Vec<i64> {
        const INF: i64 = i64::MAX / 4;
        let n = self.graph.len();
        let mut dist = vec![INF; n];
        dist[source] = 0;
        for _ in 0..n {
            let mut changed = false;
            for v in 0..n {
                if dist[v] == INF {
                    continue;
                }
                for e in &self.graph[v] {
                    if e.cap > 0 && dist[v] + e.cost < dist[e.to] {
                        dist[e.to] = dist[v] + e.cost;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        dist
    }

    /// Pushes one unit along a cheapest `source -> sink` path, maintaining
    /// potentials across calls; returns the true path cost, or `None` when
    /// the sink is unreachable in the residual graph.
    fn augment_unit(&mut self, source: usize, sink: usize, potential: &mut [i64]) -> Option<i64> {
        let n = self.graph.len();
        let mut dist: Vec<Option<i64>> = vec![None; n];
        let mut prev: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX); n];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(0);
        heap.push(Reverse((0i64, source)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if dist[v] != Some(d) {
                continue;
            }
            for (i, e) in self.graph[v].iter().enumerate() {
                if e.cap <= 0 {
                    continue;
                }
                let reduced = e.cost + potential[v] - potential[e.to];
                debug_assert!(reduced >= 0, "potentials must keep reduced costs nonnegative");
                let nd = d + reduced;
                if dist[e.to].is_none_or(|old| nd < old) {
                    dist[e.to] = Some(nd);
                    prev[e.to] = (v, i);
                    heap.push(Reverse((nd, e.to)));
                }
            }
        }
        let sink_dist = dist[sink]?;
        let cost = sink_dist + potential[sink] - potential[source];
        for v in 0..n {
            if let Some(d) = dist[v] {
                potential[v] += d;
            }
        }
        let mut v = sink;
        while v != source {
            let (u, i) = prev[v];
            self.graph[u][i].cap -= 1;
            let rev = self.graph[u][i].rev;
            self.graph[v][rev].cap += 1;
            v = u;
        }
        Some(cost)
    }
}

/// Incremental chain-union solver: each [`next_marginal`] call allows one
/// more chain and returns the gain in covered vertices.
///
/// [`next_marginal`]: ChainUnionSolver::next_marginal
pub struct ChainUnionSolver {
    flow: MinCostFlow,
    potential: Vec<i64>,
    source: usize,
    sink: usize,
    last_marginal: Option<usize>,
}

impl ChainUnionSolver {
    pub fn new(poset: &PartitionPoset) -> Self {
        let n = poset.vertex_count();
        let source = 2 * n;
        let sink = 2 * n + 1;
        let mut flow = MinCostFlow::new(2 * n + 2);
        let vs = poset.vertices();
        for i in 0..n {
            flow.add_edge(source, i, 1, 0);
            flow.add_edge(i, n + i, 1, -1); // covering vertex i pays off once
            flow.add_edge(n + i, sink, 1, 0);
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && poset.leq(vs[i], vs[j]) {
                    flow.add_edge(n + i, j, 1, 0);
                }
            }
        }
        let potential = flow.bellman_ford(source);
        ChainUnionSolver {
            flow,
            potential,
            source,
            sink,
            last_marginal: None,
        }
    }

    /// The gain from allowing one more chain; zero once extra chains stop
    /// helping. Marginals are weakly decreasing.
    pub fn next_marginal(&mut self) -> usize {
        let gain = match self
            .flow
            .augment_unit(self.source, self.sink, &mut self.potential)
        {
            None => 0,
            Some(cost) => {
                assert!(cost <= 0, "an extra chain can never lose ground");
                (-cost) as usize
            }
        };
        if let Some(last) = self.last_marginal {
            assert!(gain <= last, "marginal gains must be weakly decreasing");
        }
        self.last_marginal = Some(gain);
        gain
    }
}

/// Largest number of vertices covered by a union of `k` chains in `D_P`.
pub fn max_k_chain_union(poset: &PartitionPoset, k: usize) -> usize {
    let mut solver = ChainUnionSolver::new(poset);
    (0..k).map(|_| solver.next_marginal()).sum()
}

/// The chain profile of a poset: maximum k-chain-union sizes and their first
/// differences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainUnionProfile {
    /// `c[k]` = largest vertex count over unions of `k` chains; `c[0] = 0`.
    pub c: Vec<usize>,
    /// First differences of `c`: a partition of `n` with `r(P)` parts.
    pub lambda: Partition,
}

/// `lambda(P)`: runs the flow solver for `k = 1..=r(P)` and packages the
/// profile. Panics if the profile fails its structural guarantees (saturation
/// at `r` chains, weakly decreasing positive marginals) — those hold for
/// every partition and a failure means the solver is broken.
pub fn lambda_of(p: &Partition) -> ChainUnionProfile {
    let poset = PartitionPoset::build(p);
    let r = r_of(p);
    let mut solver = ChainUnionSolver::new(&poset);
    let mut c = vec![0usize];
    let mut marginals = Vec::with_capacity(r);
    for _ in 0..r {
        let m = solver.next_marginal();
        marginals.push(m);
        c.push(c.last().unwrap() + m);
    }
    assert_eq!(c[r], p.n(), "r(P) chains must cover all of D_P");
    assert_eq!(solver.next_marginal(), 0, "no gain past r(P) chains");
    let lambda = Partition::new(marginals).expect("marginals are positive up to r(P)");
    ChainUnionProfile { c, lambda }
}

/// Maximum antichain size (poset width) via Dilworth and König: the minimum
/// chain cover of an `n`-vertex poset is `n` minus a maximum matching on the
/// strict order, and equals the width. No size cap.
pub fn max_antichain_size(poset: &PartitionPoset) -> usize {
    let n = poset.vertex_count();
    let vs = poset.vertices();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| i != j && poset.leq(vs[i], vs[j]))
                .collect()
        })
        .collect();
    let (matching, _, _) = max_bipartite_matching(n, n, &adj);
    n - matching
}

/// Exhaustive maximum union of `k` chains: enumerates subsets and keeps the
/// largest one whose minimum chain cover (by Dilworth/König on the induced
/// subposet) is at most `k`. Capped at [`CHAIN_ORACLE_CAP`] vertices.
pub fn max_k_chain_union_bruteforce(
    poset: &PartitionPoset,
    k: usize,
) -> Result<usize, OracleError> {
    let n = poset.vertex_count();
    if n > CHAIN_ORACLE_CAP {
        return Err(OracleError::TooLarge {
            vertices: n,
            cap: CHAIN_ORACLE_CAP,
        });
    }
    if k == 0 {
        return Ok(0);
    }
    let vs = poset.vertices();
    let mut best = 0usize;
    for mask in 0u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if members.len() <= best {
            continue;
        }
        let adj: Vec<Vec<usize>> = members
            .iter()
            .map(|&i| {
                members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &j)| i != j && poset.leq(vs[i], vs[j]))
                    .map(|(jj, _)| jj)
                    .collect()
            })
            .collect();
        let (matching, _, _) = max_bipartite_matching(members.len(), members.len(), &adj);
        if members.len() - matching <= k {
            best = members.len();
        }
    }
    Ok(best)
}

/// `a_k` for `k = 1..`: the largest size of a subset whose longest chain has
/// at most `k` vertices, by one pass over all subsets. The returned list
/// stops at the first `a_k = n`. Capped at [`ANTICHAIN_ORACLE_CAP`] vertices.
pub fn antichain_union_profile_bruteforce(
    poset: &PartitionPoset,
) -> Result<Vec<usize>, OracleError> {
    let n = poset.vertex_count();
    if n > ANTICHAIN_ORACLE_CAP {
        return Err(OracleError::TooLarge {
            vertices: n,
            cap: ANTICHAIN_ORACLE_CAP,
        });
    }
    let vs = poset.vertices();
    let preds: Vec<u32> = (0..n)
        .map(|j| {
            let mut m = 0u32;
            for i in 0..n {
                if i != j && poset.leq(vs[i], vs[j]) {
                    m |= 1 << i;
                }
            }
            m
        })
        .collect();
    // ascending predecessor count is a linear extension: u < v implies
    // preds(u) is a strict subset of preds(v)
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| preds[v].count_ones());

    let mut best_of_longest = vec![0usize; n + 1];
    let mut dp = vec![0u8; n];
    for mask in 0u32..(1u32 << n) {
        let mut longest = 0u8;
        for &v in &order {
            if mask >> v & 1 == 0 {
                continue;
            }
            let mut chain_into = 0u8;
            let mut m = mask & preds[v];
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                chain_into = chain_into.max(dp[u]);
            }
            dp[v] = chain_into + 1;
            longest = longest.max(dp[v]);
        }
        let size = mask.count_ones() as usize;
        let l = longest as usize;
        if size > best_of_longest[l] {
            best_of_longest[l] = size;
        }
    }
    let mut a = Vec::new();
    let mut best = 0usize;
    for &b in &best_of_longest[1..=n] {
        best = best.max(b);
        a.push(best);
        if best == n {
            break;
        }
    }
    Ok(a)
}

/// Exhaustive maximum union of `k` antichains. `k = 1` uses matching and is
/// uncapped; larger `k` goes through the subset pass.
pub fn max_k_antichain_union_bruteforce(
    poset: &PartitionPoset,
    k: usize,
) -> Result<usize, OracleError> {
    if k == 0 {
        return Ok(0);
    }
    if k == 1 {
        return Ok(max_antichain_size(poset));
    }
    let profile = antichain_union_profile_bruteforce(poset)?;
    Ok(profile
        .get(k - 1)
        .copied()
        .unwrap_or(poset.vertex_count()))
}
