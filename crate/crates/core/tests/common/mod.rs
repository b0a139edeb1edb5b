//! Fixtures shared by the integration test targets.

// Each test target compiles this module independently, so a fixture used by
// only one target would otherwise trip dead-code lints in the others.
#![allow(dead_code)]

use purecc::network::{NetworkGraph, Role};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A deliberately congestion-prone 7-vertex instance: three terminals all
/// attach to one hub repeater, but each terminal pair also shares a
/// dedicated relay, so naive shortest-path routing piles all three demands
/// onto the hub (capacity 3) while the optimum spreads them out
/// (capacity 1). Every terminal pair has exactly two equal-length routes.
pub fn hub_and_spokes() -> NetworkGraph {
    let vertices = vec![
        ("ra".to_string(), Role::Repeater),
        ("rx".to_string(), Role::Repeater),
        ("ry".to_string(), Role::Repeater),
        ("rz".to_string(), Role::Repeater),
        ("t1".to_string(), Role::Terminal),
        ("t2".to_string(), Role::Terminal),
        ("t3".to_string(), Role::Terminal),
    ];
    let edge = |a: &str, b: &str| (a.to_string(), b.to_string());
    let edges = vec![
        edge("t1", "ra"),
        edge("t2", "ra"),
        edge("t3", "ra"),
        edge("t1", "rx"),
        edge("t2", "rx"),
        edge("t1", "ry"),
        edge("t3", "ry"),
        edge("t2", "rz"),
        edge("t3", "rz"),
    ];
    NetworkGraph::from_parts(vertices, edges).expect("fixture is well formed")
}

/// Four terminals hanging off one repeater: every routing must relay all
/// C(4,2) = 6 demands through the hub, so every method reports 6.
pub fn star() -> NetworkGraph {
    let vertices = vec![
        ("hub".to_string(), Role::Repeater),
        ("t1".to_string(), Role::Terminal),
        ("t2".to_string(), Role::Terminal),
        ("t3".to_string(), Role::Terminal),
        ("t4".to_string(), Role::Terminal),
    ];
    let edges = (1..=4)
        .map(|i| (format!("t{i}"), "hub".to_string()))
        .collect();
    NetworkGraph::from_parts(vertices, edges).expect("fixture is well formed")
}

/// A random valid instance with at most 8 vertices: 2–3 terminals, a
/// connected repeater core (random tree plus optional extra edges), and
/// each terminal attached to 1–2 repeaters. Terminals are never mutually
/// adjacent by construction.
pub fn random_valid_graph(rng: &mut ChaCha8Rng) -> NetworkGraph {
    let terminals = rng.gen_range(2..=3usize);
    let repeaters = rng.gen_range(2..=(8 - terminals));
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in 0..repeaters {
        vertices.push((format!("r{i}"), Role::Repeater));
        if i > 0 {
            let parent = rng.gen_range(0..i);
            edges.push((format!("r{parent}"), format!("r{i}")));
        }
    }
    // Sprinkle extra repeater-repeater edges for route diversity.
    for a in 0..repeaters {
        for b in a + 1..repeaters {
            if rng.gen_bool(0.3) {
                let candidate = (format!("r{a}"), format!("r{b}"));
                if !edges.contains(&candidate) {
                    edges.push(candidate);
                }
            }
        }
    }
    for t in 0..terminals {
        vertices.push((format!("t{t}"), Role::Terminal));
        let first = rng.gen_range(0..repeaters);
        edges.push((format!("r{first}"), format!("t{t}")));
        if repeaters > 1 && rng.gen_bool(0.5) {
            let mut second = rng.gen_range(0..repeaters);
            while second == first {
                second = rng.gen_range(0..repeaters);
            }
            edges.push((format!("r{second}"), format!("t{t}")));
        }
    }
    NetworkGraph::from_parts(vertices, edges).expect("generated instance is well formed")
}
