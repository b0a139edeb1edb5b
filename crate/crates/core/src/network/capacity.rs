//! Minimizing the worst-case relay load: a randomized-restart heuristic for
//! real sizes and an exhaustive optimizer for toy instances.

use super::paths::{complete_path_set, induced_capacity, PathSet};
use super::{NetworkError, NetworkGraph, Role};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeMap};

const IMPROVEMENT_SWEEPS: usize = 2;

/// Least-cost route where stepping onto an interior repeater costs
/// `1 + load·(vertex count)`: hop count dominates until loads differ, then
/// the load term steers traffic away from busy relays. Deterministic:
/// strict improvements only, heap ordered by `(cost, vertex)`.
fn load_aware_route(
    graph: &NetworkGraph,
    source: usize,
    target: usize,
    loads: &[u32],
) -> Option<Vec<usize>> {
    let penalty = graph.vertex_count() as u64;
    let enter_cost = |v: usize| -> u64 {
        if v == target {
            1
        } else {
            1 + u64::from(loads[v]) * penalty
        }
    };
    let mut dist = vec![u64::MAX; graph.vertex_count()];
    let mut parent = vec![usize::MAX; graph.vertex_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0;
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((cost, vertex))) = heap.pop() {
        if cost > dist[vertex] {
            continue;
        }
        if vertex == target {
            break;
        }
        for &next in graph.neighbors(vertex) {
            if next != target && graph.role(next) != Role::Repeater {
                continue;
            }
            let candidate = cost + enter_cost(next);
            if candidate < dist[next] {
                dist[next] = candidate;
                parent[next] = vertex;
                heap.push(Reverse((candidate, next)));
            }
        }
    }
    if dist[target] == u64::MAX {
        return None;
    }
    let mut path = vec![target];
    let mut cursor = target;
    while cursor != source {
        cursor = parent[cursor];
        path.push(cursor);
    }
    path.reverse();
    Some(path)
}

fn adjust_loads(loads: &mut [u32], path: &[usize], delta: i32) {
    for &v in &path[1..path.len() - 1] {
        loads[v] = loads[v].saturating_add_signed(delta);
    }
}

/// Heuristic search for a complete routing with small induced capacity.
///
/// Starts from plain shortest-path routing (which also bounds the result:
/// the heuristic never returns anything worse), then runs `effort`
/// restarts. Each restart shuffles the pair order with its own
/// `ChaCha8(seed xor restart)` stream, routes pairs one by one on
/// load-penalized costs, re-routes every pair twice more against the
/// then-current loads, and the best routing over all restarts wins.
pub fn minimize_induced_capacity(
    graph: &NetworkGraph,
    effort: u32,
    seed: u64,
) -> Result<PathSet, NetworkError> {
    let baseline = complete_path_set(graph)?;
    let mut best_capacity = induced_capacity(graph, &baseline);
    let mut best = baseline;
    let pairs = best.pairs();
    for restart in 0..effort {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(restart));
        let mut order = pairs.clone();
        order.shuffle(&mut rng);
        let mut loads = vec![0u32; graph.vertex_count()];
        let mut current: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &(a, b) in &order {
            let path =
                load_aware_route(graph, a, b, &loads).ok_or_else(|| NetworkError::NoRepeaterPath {
                    a: graph.name(a).to_string(),
                    b: graph.name(b).to_string(),
                })?;
            adjust_loads(&mut loads, &path, 1);
            current.insert((a, b), path);
        }
        for _ in 0..IMPROVEMENT_SWEEPS {
            for &(a, b) in &order {
                let previous = current.get(&(a, b)).expect("pair was routed").clone();
                adjust_loads(&mut loads, &previous, -1);
                let replacement =
                    load_aware_route(graph, a, b, &loads).unwrap_or(previous);
                adjust_loads(&mut loads, &replacement, 1);
                current.insert((a, b), replacement);
            }
        }
        let mut candidate = PathSet::new();
        for (_, path) in current {
            candidate.insert(path);
        }
        let capacity = induced_capacity(graph, &candidate);
        if capacity < best_capacity {
            best_capacity = capacity;
            best = candidate;
        }
    }
    Ok(best)
}

/// Size guards for [`brute_force_min_capacity`].
#[derive(Debug, Clone, Copy)]
pub struct BruteForceLimits {
    /// Cap on simple paths enumerated per terminal pair.
    pub max_paths_per_pair: usize,
    /// Cap on the product of per-pair candidate counts.
    pub max_combinations: u128,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        Self {
            max_paths_per_pair: 512,
            max_combinations: 2_000_000,
        }
    }
}

/// All simple repeater-interior paths between two terminals, in DFS order
/// with ascending neighbor expansion (so the list is deterministic and its
/// first entries are lexicographically smallest per length-class visit
/// order).
fn enumerate_simple_paths(
    graph: &NetworkGraph,
    source: usize,
    target: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>, NetworkError> {
    fn dfs(
        graph: &NetworkGraph,
        current: usize,
        target: usize,
        visited: &mut u64,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), NetworkError> {
        if current == target {
            if out.len() >= cap {
                return Err(NetworkError::InstanceTooLarge(format!(
                    "more than {cap} candidate routes for one pair"
                )));
            }
            out.push(path.clone());
            return Ok(());
        }
        for &next in graph.neighbors(current) {
            let allowed = next == target || graph.role(next) == Role::Repeater;
            if !allowed || *visited & (1 << next) != 0 {
                continue;
            }
            *visited |= 1 << next;
            path.push(next);
            dfs(graph, next, target, visited, path, out, cap)?;
            path.pop();
            *visited &= !(1 << next);
        }
        Ok(())
    }

    let mut out = Vec::new();
    let mut path = vec![source];
    let mut visited = 1u64 << source;
    dfs(graph, source, target, &mut visited, &mut path, &mut out, cap)?;
    Ok(out)
}

/// Exhaustive minimum induced capacity: enumerates every simple-path choice
/// for every terminal pair and scans all combinations.
///
/// Only feasible on toy instances; the limits reject anything larger with
/// [`NetworkError::InstanceTooLarge`]. Returns the first minimizing
/// combination in candidate order along with its capacity.
pub fn brute_force_min_capacity(
    graph: &NetworkGraph,
    limits: BruteForceLimits,
) -> Result<(PathSet, u32), NetworkError> {
    if graph.vertex_count() > 64 {
        return Err(NetworkError::InstanceTooLarge(format!(
            "{} vertices exceed the 64-vertex enumeration bound",
            graph.vertex_count()
        )));
    }
    let terminals = graph.terminals();
    let mut pairs = Vec::new();
    for (i, &a) in terminals.iter().enumerate() {
        for &b in &terminals[i + 1..] {
            pairs.push((a, b));
        }
    }
    if pairs.is_empty() {
        return Ok((PathSet::new(), 0));
    }
    let mut candidates = Vec::with_capacity(pairs.len());
    let mut combinations: u128 = 1;
    for &(a, b) in &pairs {
        let options = enumerate_simple_paths(graph, a, b, limits.max_paths_per_pair)?;
        if options.is_empty() {
            return Err(NetworkError::NoRepeaterPath {
                a: graph.name(a).to_string(),
                b: graph.name(b).to_string(),
            });
        }
        combinations = combinations.saturating_mul(options.len() as u128);
        if combinations > limits.max_combinations {
            return Err(NetworkError::InstanceTooLarge(format!(
                "more than {} path combinations",
                limits.max_combinations
            )));
        }
        candidates.push(options);
    }
    let mut choice = vec![0usize; candidates.len()];
    let mut best_choice = choice.clone();
    let mut best_capacity = u32::MAX;
    loop {
        let mut counts = vec![0u32; graph.vertex_count()];
        for (pair_index, &option) in choice.iter().enumerate() {
            let path = &candidates[pair_index][option];
            for &v in &path[1..path.len() - 1] {
                counts[v] += 1;
            }
        }
        let capacity = counts.into_iter().max().unwrap_or(0);
        if capacity < best_capacity {
            best_capacity = capacity;
            best_choice = choice.clone();
        }
        // Odometer increment over the candidate lists.
        let mut position = 0;
        loop {
            if position == choice.len() {
                let mut set = PathSet::new();
                for (pair_index, &option) in best_choice.iter().enumerate() {
                    set.insert(candidates[pair_index][option].clone());
                }
                return Ok((set, best_capacity));
            }
            choice[position] += 1;
            if choice[position] < candidates[position].len() {
                break;
            }
            choice[position] = 0;
            position += 1;
        }
    }
}
