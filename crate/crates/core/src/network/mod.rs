//! Repeater-network modelling: vertices are repeaters or terminals, edges
//! are entanglement links, and the questions are where shortest routes run,
//! how much traffic the busiest repeater carries, and in what order swaps
//! execute along a route.
//!
//! Vertices are referred to by index into a name-sorted table, so index
//! order *is* lexicographic name order. That single invariant is what makes
//! every tie-break in the routing and capacity layers deterministic.

mod capacity;
mod paths;
mod schedule;

pub use capacity::{brute_force_min_capacity, minimize_induced_capacity, BruteForceLimits};
pub use paths::{
    complete_path_set, induced_capacity, lex_shortest_path, most_congested, repeater_capacity,
    PathSet, ShortestPathRouter,
};
pub(crate) use paths::{distance_field as paths_distance_field, walk_shortest as paths_walk_shortest};
pub use schedule::{make_schedule, replay_qubit_occupancy, SwapProtocol, SwapSchedule, SwapStep};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// Errors from the network layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(String),
    #[error("vertex {0} is not a repeater")]
    NotARepeater(String),
    #[error("no repeater-interior route between {a} and {b}")]
    NoRepeaterPath { a: String, b: String },
    #[error("nested schedules need a power-of-two segment count, got {0}")]
    NotPowerOfTwo(usize),
    #[error("path must contain at least two vertices, got {0}")]
    PathTooShort(usize),
    #[error("schedule step ({left}, {intermediate}, {right}) does not match the held pairs")]
    InvalidSchedule {
        left: usize,
        intermediate: usize,
        right: usize,
    },
    #[error("instance too large for exhaustive search: {0}")]
    InstanceTooLarge(String),
}

/// What a vertex does: relay entanglement or consume it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Role {
    Repeater,
    Terminal,
}

impl Role {
    fn token(self) -> &'static str {
        match self {
            Role::Repeater => "R",
            Role::Terminal => "T",
        }
    }
}

/// An undirected network of repeaters and terminals.
///
/// Construction sorts vertices by name; all public indices refer to that
/// sorted order. Adjacency lists are kept ascending and edges canonical
/// `(min, max)`, so iteration order never depends on input order.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkGraph {
    names: Vec<String>,
    roles: Vec<Role>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl NetworkGraph {
    /// Builds a graph from named vertices and name-pair edges.
    pub fn from_parts(
        vertices: Vec<(String, Role)>,
        edges: Vec<(String, String)>,
    ) -> Result<Self, NetworkError> {
        let mut sorted = vertices;
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in sorted.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(NetworkError::DuplicateVertex(pair[0].0.clone()));
            }
        }
        let names: Vec<String> = sorted.iter().map(|(n, _)| n.clone()).collect();
        let roles: Vec<Role> = sorted.iter().map(|(_, r)| *r).collect();
        let index: BTreeMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut canonical = BTreeSet::new();
        for (a, b) in &edges {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| NetworkError::UnknownVertex(a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| NetworkError::UnknownVertex(b.clone()))?;
            if ia == ib {
                return Err(NetworkError::SelfLoop(a.clone()));
            }
            canonical.insert((ia.min(ib), ia.max(ib)));
        }
        let mut adjacency = vec![Vec::new(); names.len()];
        for &(a, b) in &canonical {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            names,
            roles,
            adjacency,
            edges: canonical.into_iter().collect(),
        })
    }

    /// Parses the plain-text format:
    ///
    /// ```text
    /// vertices <count>
    /// v <name> <R|T>
    /// e <name> <name>
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored. Errors carry
    /// 1-based line numbers.
    pub fn parse(text: &str) -> Result<Self, NetworkError> {
        let mut declared: Option<usize> = None;
        let mut vertices: Vec<(String, Role)> = Vec::new();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut edges: Vec<(String, String)> = Vec::new();
        let err = |line: usize, message: String| NetworkError::Parse { line, message };
        for (number, raw) in text.lines().enumerate() {
            let line = number + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            match fields[0] {
                "vertices" => {
                    if declared.is_some() {
                        return Err(err(line, "duplicate vertices header".into()));
                    }
                    if fields.len() != 2 {
                        return Err(err(line, "expected: vertices <count>".into()));
                    }
                    let count = fields[1]
                        .parse::<usize>()
                        .map_err(|_| err(line, format!("invalid vertex count {}", fields[1])))?;
                    declared = Some(count);
                }
                "v" => {
                    if declared.is_none() {
                        return Err(err(line, "vertex before vertices header".into()));
                    }
                    if fields.len() != 3 {
                        return Err(err(line, "expected: v <name> <R|T>".into()));
                    }
                    let role = match fields[2] {
                        "R" => Role::Repeater,
                        "T" => Role::Terminal,
                        other => {
                            return Err(err(line, format!("invalid role {other}, expected R or T")))
                        }
                    };
                    if !seen.insert(fields[1].to_string()) {
                        return Err(err(line, format!("duplicate vertex {}", fields[1])));
                    }
                    vertices.push((fields[1].to_string(), role));
                }
                "e" => {
                    if fields.len() != 3 {
                        return Err(err(line, "expected: e <name> <name>".into()));
                    }
                    if fields[1] == fields[2] {
                        return Err(err(line, format!("self-loop on vertex {}", fields[1])));
                    }
                    for endpoint in [fields[1], fields[2]] {
                        if !seen.contains(endpoint) {
                            return Err(err(line, format!("unknown vertex {endpoint}")));
                        }
                    }
                    edges.push((fields[1].to_string(), fields[2].to_string()));
                }
                other => return Err(err(line, format!("unknown directive {other}"))),
            }
        }
        let declared = declared.ok_or_else(|| err(1, "missing vertices header".into()))?;
        if declared != vertices.len() {
            return Err(err(
                1,
                format!(
                    "vertices header declares {declared} but {} were defined",
                    vertices.len()
                ),
            ));
        }
        Self::from_parts(vertices, edges)
    }

    /// Serializes back to the text format, vertices and edges sorted, so
    /// output is canonical regardless of construction order.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.names.len());
        for (name, role) in self.names.iter().zip(&self.roles) {
            out.push_str(&format!("v {name} {}\n", role.token()));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("e {} {}\n", self.names[a], self.names[b]));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn role(&self, index: usize) -> Role {
        self.roles[index]
    }

    /// Index of a vertex by name.
    pub fn index_of(&self, name: &str) -> Result<usize, NetworkError> {
        self.names
            .binary_search_by(|probe| probe.as_str().cmp(name))
            .map_err(|_| NetworkError::UnknownVertex(name.to_string()))
    }

    /// Neighbor indices, ascending.
    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adjacency[index]
    }

    /// Canonical `(min, max)` edge list, ascending.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Indices of all terminals, ascending.
    pub fn terminals(&self) -> Vec<usize> {
        (0..self.names.len())
            .filter(|&i| self.roles[i] == Role::Terminal)
            .collect()
    }

    /// Indices of all repeaters, ascending.
    pub fn repeaters(&self) -> Vec<usize> {
        (0..self.names.len())
            .filter(|&i| self.roles[i] == Role::Repeater)
            .collect()
    }
}

/// One structural rule the graph breaks.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub enum ConstraintViolation {
    /// Terminals must never be directly linked.
    TerminalsAdjacent { first: String, second: String },
    /// Every terminal needs at least one repeater to reach the network.
    NoRepeaterNeighbor { terminal: String },
    /// The graph must be one connected component.
    Disconnected { vertex: String },
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintViolation::TerminalsAdjacent { first, second } => {
                write!(f, "terminals {first} and {second} are adjacent")
            }
            ConstraintViolation::NoRepeaterNeighbor { terminal } => {
                write!(f, "terminal {terminal} has no repeater neighbor")
            }
            ConstraintViolation::Disconnected { vertex } => {
                write!(f, "vertex {vertex} is unreachable from the rest of the graph")
            }
        }
    }
}

/// Every violation found, as data rather than an error, so callers can
/// report them all at once.
#[derive(Debug, Clone, Default, PartialEq, serde::Serialize)]
pub struct ValidationReport {
    pub violations: Vec<ConstraintViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the structural rules: no terminal–terminal edges, every terminal
/// has a repeater neighbor, and the graph is connected.
pub fn validate_graph(graph: &NetworkGraph) -> ValidationReport {
    let mut violations = Vec::new();
    for &(a, b) in graph.edges() {
        if graph.role(a) == Role::Terminal && graph.role(b) == Role::Terminal {
            violations.push(ConstraintViolation::TerminalsAdjacent {
                first: graph.name(a).to_string(),
                second: graph.name(b).to_string(),
            });
        }
    }
    for terminal in graph.terminals() {
        let has_repeater = graph
            .neighbors(terminal)
            .iter()
            .any(|&n| graph.role(n) == Role::Repeater);
        if !has_repeater {
            violations.push(ConstraintViolation::NoRepeaterNeighbor {
                terminal: graph.name(terminal).to_string(),
            });
        }
    }
    if graph.vertex_count() > 0 {
        let mut reached = vec![false; graph.vertex_count()];
        let mut queue = VecDeque::from([0usize]);
        reached[0] = true;
        while let Some(v) = queue.pop_front() {
            for &n in graph.neighbors(v) {
                if !reached[n] {
                    reached[n] = true;
                    queue.push_back(n);
                }
            }
        }
        for (index, ok) in reached.iter().enumerate() {
            if !ok {
                violations.push(ConstraintViolation::Disconnected {
                    vertex: graph.name(index).to_string(),
                });
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_text() -> &'static str {
        "vertices 5\n\
         v ta T\n\
         v tb T\n\
         v r1 R\n\
         v r2 R\n\
         v r3 R\n\
         e ta r1\n\
         e r1 r2\n\
         e r2 r3\n\
         e r3 tb\n"
    }

    #[test]
    fn parse_and_lookup() {
        let g = NetworkGraph::parse(sample_text()).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 4);
        // Indices follow lexicographic name order: r1 r2 r3 ta tb.
        assert_eq!(g.name(0), "r1");
        assert_eq!(g.name(3), "ta");
        assert_eq!(g.role(g.index_of("ta").unwrap()), Role::Terminal);
        assert_eq!(g.role(g.index_of("r2").unwrap()), Role::Repeater);
        assert_eq!(g.terminals().len(), 2);
        assert_eq!(g.repeaters().len(), 3);
        assert!(matches!(
            g.index_of("zz"),
            Err(NetworkError::UnknownVertex(_))
        ));
    }

    #[test]
    fn serialization_is_canonical() {
        let g = NetworkGraph::parse(sample_text()).unwrap();
        let text = g.to_text();
        let reparsed = NetworkGraph::parse(&text).unwrap();
        assert_eq!(g, reparsed);
        assert_eq!(text, reparsed.to_text());
        // Vertex lines come sorted even though input listed terminals first.
        let second_line = text.lines().nth(1).unwrap();
        assert_eq!(second_line, "v r1 R");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad_role = "vertices 1\nv a X\n";
        match NetworkGraph::parse(bad_role) {
            Err(NetworkError::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("invalid role"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let unknown = "vertices 1\nv a R\ne a b\n";
        match NetworkGraph::parse(unknown) {
            Err(NetworkError::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("unknown vertex b"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let count_mismatch = "vertices 3\nv a R\nv b R\n";
        assert!(matches!(
            NetworkGraph::parse(count_mismatch),
            Err(NetworkError::Parse { line: 1, .. })
        ));
        let duplicate = "vertices 2\nv a R\nv a R\n";
        match NetworkGraph::parse(duplicate) {
            Err(NetworkError::Parse { line: 3, message }) => {
                assert!(message.contains("duplicate"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# comment\n\nvertices 2\nv a R\n# another\nv b R\ne a b\n";
        let g = NetworkGraph::parse(text).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn from_parts_rejects_structural_mistakes() {
        let vertices = vec![("a".to_string(), Role::Repeater)];
        assert!(matches!(
            NetworkGraph::from_parts(vertices, vec![("a".into(), "a".into())]),
            Err(NetworkError::SelfLoop(_))
        ));
        let duplicated = vec![
            ("a".to_string(), Role::Repeater),
            ("a".to_string(), Role::Terminal),
        ];
        assert!(matches!(
            NetworkGraph::from_parts(duplicated, vec![]),
            Err(NetworkError::DuplicateVertex(_))
        ));
    }

    #[test]
    fn parallel_edges_collapse() {
        let vertices = vec![
            ("a".to_string(), Role::Repeater),
            ("b".to_string(), Role::Repeater),
        ];
        let edges = vec![
            ("a".to_string(), "b".to_string()),
            ("b".to_string(), "a".to_string()),
        ];
        let g = NetworkGraph::from_parts(vertices, edges).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn validation_reports_every_violation() {
        let text = "vertices 5\n\
                    v t1 T\n\
                    v t2 T\n\
                    v t3 T\n\
                    v r1 R\n\
                    v x1 R\n\
                    e t1 t2\n\
                    e t1 r1\n\
                    e t2 r1\n\
                    e t3 t1\n";
        let g = NetworkGraph::parse(text).unwrap();
        let report = validate_graph(&g);
        assert!(!report.is_valid());
        let adjacent = report
            .violations
            .iter()
            .filter(|v| matches!(v, ConstraintViolation::TerminalsAdjacent { .. }))
            .count();
        assert_eq!(adjacent, 2);
        assert!(report.violations.iter().any(
            |v| matches!(v, ConstraintViolation::NoRepeaterNeighbor { terminal } if terminal == "t3")
        ));
        assert!(report.violations.iter().any(
            |v| matches!(v, ConstraintViolation::Disconnected { vertex } if vertex == "x1")
        ));
    }

    #[test]
    fn valid_graph_passes() {
        let g = NetworkGraph::parse(sample_text()).unwrap();
        assert!(validate_graph(&g).is_valid());
    }
}
