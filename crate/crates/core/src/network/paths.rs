//! Deterministic shortest-path routing between terminals, and the
//! congestion measures built on top of it.
//!
//! Routes run through repeaters only: a path's interior may not contain
//! terminals, which is enforced by simply never expanding a terminal other
//! than the route's own endpoints. Ties between equal-length routes are
//! broken toward the lexicographically smallest vertex-name sequence, which
//! (names being index-sorted) is the smallest index sequence.

use super::{NetworkError, NetworkGraph, Role};
use std::collections::BTreeMap;

/// A set of terminal-to-terminal paths keyed by canonical `(min, max)`
/// endpoint indices, each stored oriented from the smaller endpoint.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PathSet {
    paths: BTreeMap<(usize, usize), Vec<usize>>,
}

impl PathSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a path, canonicalizing its orientation. Replaces any
    /// existing path between the same endpoints.
    pub fn insert(&mut self, mut path: Vec<usize>) {
        assert!(path.len() >= 2, "a path needs two endpoints");
        let (a, b) = (path[0], path[path.len() - 1]);
        assert_ne!(a, b, "a path needs distinct endpoints");
        if a > b {
            path.reverse();
        }
        self.paths.insert((a.min(b), a.max(b)), path);
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// The stored path between two terminals, if any.
    pub fn path(&self, a: usize, b: usize) -> Option<&[usize]> {
        self.paths
            .get(&(a.min(b), a.max(b)))
            .map(|p| p.as_slice())
    }

    /// Iterates `(endpoints, path)` in ascending endpoint order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Vec<usize>)> {
        self.paths.iter().map(|(&k, v)| (k, v))
    }

    /// Endpoint pairs in ascending order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.paths.keys().copied().collect()
    }
}

/// Whether routing toward `target` may stand on `vertex`: repeaters always,
/// terminals only as the route's own endpoint.
fn transit_allowed(graph: &NetworkGraph, vertex: usize, target: usize) -> bool {
    vertex == target || graph.role(vertex) == Role::Repeater
}

const UNREACHABLE: u32 = u32::MAX;

/// Breadth-first hop distances *to* `target` through repeater-only
/// interiors. Terminals other than the target never relay, so they keep
/// distance `u32::MAX` unless they are the target itself; sources read
/// their distance off their neighbors.
pub(crate) fn distance_field(graph: &NetworkGraph, target: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; graph.vertex_count()];
    dist[target] = 0;
    let mut queue = std::collections::VecDeque::from([target]);
    while let Some(v) = queue.pop_front() {
        for &n in graph.neighbors(v) {
            if dist[n] == UNREACHABLE && graph.role(n) == Role::Repeater {
                dist[n] = dist[v] + 1;
                queue.push_back(n);
            }
        }
    }
    dist
}

/// Greedy walk from `source` down a distance field toward `target`,
/// producing the lexicographically smallest shortest path: every hop picks
/// the smallest-index neighbor that still lies on *some* shortest route.
pub(crate) fn walk_shortest(
    graph: &NetworkGraph,
    source: usize,
    target: usize,
    field: &[u32],
) -> Option<Vec<usize>> {
    if source == target {
        return Some(vec![source]);
    }
    // First hop: minimize remaining distance, then index. (The source may
    // be a terminal, whose own field entry is unreachable by design.)
    let mut best: Option<(u32, usize)> = None;
    for &n in graph.neighbors(source) {
        if transit_allowed(graph, n, target) && field[n] != UNREACHABLE {
            let candidate = (field[n], n);
            if best.map_or(true, |b| candidate < b) {
                best = Some(candidate);
            }
        }
    }
    let (mut remaining, mut current) = best?;
    let mut path = vec![source, current];
    while current != target {
        let next = graph
            .neighbors(current)
            .iter()
            .copied()
            .find(|&n| transit_allowed(graph, n, target) && field[n] == remaining - 1)
            .expect("a vertex at distance d has a neighbor at distance d-1");
        path.push(next);
        current = next;
        remaining -= 1;
    }
    Some(path)
}

/// The lexicographically smallest shortest repeater-interior path between
/// two vertices, or `None` when no such route exists.
pub fn lex_shortest_path(
    graph: &NetworkGraph,
    source: usize,
    target: usize,
) -> Option<Vec<usize>> {
    let field = distance_field(graph, target);
    walk_shortest(graph, source, target, &field)
}

/// Reusable router that precomputes one distance field per routing target.
pub struct ShortestPathRouter<'g> {
    graph: &'g NetworkGraph,
    fields: BTreeMap<usize, Vec<u32>>,
}

impl<'g> ShortestPathRouter<'g> {
    /// Builds fields for every vertex in `targets`.
    pub fn new(graph: &'g NetworkGraph, targets: impl IntoIterator<Item = usize>) -> Self {
        let fields = targets
            .into_iter()
            .map(|t| (t, distance_field(graph, t)))
            .collect();
        Self { graph, fields }
    }

    /// Routes using a prepared field, falling back to a fresh search for
    /// unprepared targets.
    pub fn route(&self, source: usize, target: usize) -> Option<Vec<usize>> {
        match self.fields.get(&target) {
            Some(field) => walk_shortest(self.graph, source, target, field),
            None => lex_shortest_path(self.graph, source, target),
        }
    }
}

/// Shortest-path routes for *every* unordered terminal pair.
///
/// Fails with [`NetworkError::NoRepeaterPath`] when some pair cannot be
/// joined through repeaters.
pub fn complete_path_set(graph: &NetworkGraph) -> Result<PathSet, NetworkError> {
    let terminals = graph.terminals();
    let router = ShortestPathRouter::new(graph, terminals.iter().copied());
    let mut set = PathSet::new();
    for (i, &a) in terminals.iter().enumerate() {
        for &b in &terminals[i + 1..] {
            let path = router.route(a, b).ok_or_else(|| NetworkError::NoRepeaterPath {
                a: graph.name(a).to_string(),
                b: graph.name(b).to_string(),
            })?;
            set.insert(path);
        }
    }
    Ok(set)
}

/// How many stored paths cross each vertex as an *interior* hop. Endpoints
/// do not count: holding your own pair is not relaying.
pub(crate) fn interior_counts(graph: &NetworkGraph, paths: &PathSet) -> Vec<u32> {
    let mut counts = vec![0u32; graph.vertex_count()];
    for (_, path) in paths.iter() {
        for &v in &path[1..path.len() - 1] {
            counts[v] += 1;
        }
    }
    counts
}

/// Number of paths in `paths` that relay through the named repeater.
pub fn repeater_capacity(
    graph: &NetworkGraph,
    paths: &PathSet,
    name: &str,
) -> Result<u32, NetworkError> {
    let index = graph.index_of(name)?;
    if graph.role(index) != Role::Repeater {
        return Err(NetworkError::NotARepeater(name.to_string()));
    }
    Ok(interior_counts(graph, paths)[index])
}

/// The congestion of a routing: the maximum relay count over all vertices.
pub fn induced_capacity(graph: &NetworkGraph, paths: &PathSet) -> u32 {
    interior_counts(graph, paths)
        .into_iter()
        .max()
        .unwrap_or(0)
}

/// The busiest relay vertex and its count — smallest index on ties — or
/// `None` when no path has an interior.
pub fn most_congested(graph: &NetworkGraph, paths: &PathSet) -> Option<(usize, u32)> {
    let counts = interior_counts(graph, paths);
    let (index, &count) = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))?;
    if count == 0 {
        None
    } else {
        Some((index, count))
    }
}
