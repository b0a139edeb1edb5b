//! Entanglement-swapping schedules along a fixed route.
//!
//! A route of `n` segments starts as `n` elementary pairs between route
//! neighbors; every swap at an intermediate vertex fuses the two pairs it
//! holds into one longer pair. Both protocols below end with a single
//! end-to-end pair after exactly `n − 1` swaps; they differ in how many
//! *rounds* of parallel swaps that takes and in how long each repeater must
//! keep its qubits alive.

use super::NetworkError;
use std::collections::{BTreeMap, BTreeSet};

/// Swap orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SwapProtocol {
    /// Left to right, one swap per round: `n − 1` rounds, but every
    /// intermediate swap extends the same left-anchored pair.
    Sequential,
    /// Balanced doubling: round `r` fuses pairs spanning `2^(r−1)` segments
    /// into spans of `2^r`, finishing in `log2(n)` rounds. Requires a
    /// power-of-two segment count.
    Nested,
}

/// One swap: `intermediate` fuses its pairs toward `left` and `right` into
/// a single `left`–`right` pair during `round` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapStep {
    pub round: u32,
    pub intermediate: usize,
    pub left: usize,
    pub right: usize,
}

/// A full swap ordering for one route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapSchedule {
    pub protocol: SwapProtocol,
    pub rounds: u32,
    pub steps: Vec<SwapStep>,
}

/// Builds the swap schedule for a route given as a vertex sequence.
///
/// A single-segment route needs no swaps and yields an empty schedule. The
/// nested protocol rejects segment counts that are not powers of two.
pub fn make_schedule(path: &[usize], protocol: SwapProtocol) -> Result<SwapSchedule, NetworkError> {
    if path.len() < 2 {
        return Err(NetworkError::PathTooShort(path.len()));
    }
    let segments = path.len() - 1;
    let mut steps = Vec::with_capacity(segments - 1);
    let rounds;
    match protocol {
        SwapProtocol::Sequential => {
            rounds = (segments - 1) as u32;
            for i in 1..segments {
                steps.push(SwapStep {
                    round: i as u32,
                    intermediate: path[i],
                    left: path[0],
                    right: path[i + 1],
                });
            }
        }
        SwapProtocol::Nested => {
            if !segments.is_power_of_two() {
                return Err(NetworkError::NotPowerOfTwo(segments));
            }
            rounds = segments.trailing_zeros();
            for round in 1..=rounds {
                let span = 1usize << round;
                for start in (0..segments).step_by(span) {
                    steps.push(SwapStep {
                        round,
                        intermediate: path[start + span / 2],
                        left: path[start],
                        right: path[start + span],
                    });
                }
            }
        }
    }
    Ok(SwapSchedule {
        protocol,
        rounds,
        steps,
    })
}

/// Replays a schedule against its route and reports the maximum number of
/// pair-halves (qubits) each vertex held at any moment.
///
/// Starts from the route's elementary pairs and checks that every step
/// fuses two pairs that actually exist at that point; a step that does not
/// is reported as [`NetworkError::InvalidSchedule`].
pub fn replay_qubit_occupancy(
    path: &[usize],
    schedule: &SwapSchedule,
) -> Result<BTreeMap<usize, u32>, NetworkError> {
    if path.len() < 2 {
        return Err(NetworkError::PathTooShort(path.len()));
    }
    let mut active: BTreeSet<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    let occupancy = |active: &BTreeSet<(usize, usize)>| {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for &(a, b) in active {
            *counts.entry(a).or_insert(0) += 1;
            *counts.entry(b).or_insert(0) += 1;
        }
        counts
    };
    let mut maxima = occupancy(&active);
    for step in &schedule.steps {
        let left_pair = (step.left, step.intermediate);
        let right_pair = (step.intermediate, step.right);
        if !active.remove(&left_pair) || !active.remove(&right_pair) {
            return Err(NetworkError::InvalidSchedule {
                left: step.left,
                intermediate: step.intermediate,
                right: step.right,
            });
        }
        active.insert((step.left, step.right));
        for (vertex, count) in occupancy(&active) {
            let entry = maxima.entry(vertex).or_insert(0);
            *entry = (*entry).max(count);
        }
    }
    Ok(maxima)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_schedule_shape() {
        let path: Vec<usize> = (0..5).collect();
        let schedule = make_schedule(&path, SwapProtocol::Sequential).unwrap();
        assert_eq!(schedule.rounds, 3);
        assert_eq!(schedule.steps.len(), 3);
        assert_eq!(
            schedule.steps[0],
            SwapStep { round: 1, intermediate: 1, left: 0, right: 2 }
        );
        assert_eq!(
            schedule.steps[2],
            SwapStep { round: 3, intermediate: 3, left: 0, right: 4 }
        );
    }

    #[test]
    fn nested_schedule_shape() {
        let path: Vec<usize> = (0..5).collect();
        let schedule = make_schedule(&path, SwapProtocol::Nested).unwrap();
        assert_eq!(schedule.rounds, 2);
        assert_eq!(schedule.steps.len(), 3);
        assert_eq!(
            schedule.steps[0],
            SwapStep { round: 1, intermediate: 1, left: 0, right: 2 }
        );
        assert_eq!(
            schedule.steps[1],
            SwapStep { round: 1, intermediate: 3, left: 2, right: 4 }
        );
        assert_eq!(
            schedule.steps[2],
            SwapStep { round: 2, intermediate: 2, left: 0, right: 4 }
        );
    }

    #[test]
    fn single_segment_routes_need_no_swaps() {
        for protocol in [SwapProtocol::Sequential, SwapProtocol::Nested] {
            let schedule = make_schedule(&[3, 9], protocol).unwrap();
            assert_eq!(schedule.rounds, 0);
            assert!(schedule.steps.is_empty());
        }
    }

    #[test]
    fn nested_requires_power_of_two_segments() {
        let path: Vec<usize> = (0..4).collect();
        assert!(matches!(
            make_schedule(&path, SwapProtocol::Nested),
            Err(NetworkError::NotPowerOfTwo(3))
        ));
        assert!(make_schedule(&path, SwapProtocol::Sequential).is_ok());
    }

    #[test]
    fn degenerate_paths_are_rejected() {
        assert!(matches!(
            make_schedule(&[7], SwapProtocol::Sequential),
            Err(NetworkError::PathTooShort(1))
        ));
        assert!(matches!(
            make_schedule(&[], SwapProtocol::Nested),
            Err(NetworkError::PathTooShort(0))
        ));
    }

    #[test]
    fn replay_confirms_two_qubit_repeaters() {
        for segments in [1usize, 2, 4, 8, 16, 32, 64] {
            let path: Vec<usize> = (0..=segments).collect();
            for protocol in [SwapProtocol::Sequential, SwapProtocol::Nested] {
                let schedule = make_schedule(&path, protocol).unwrap();
                assert_eq!(schedule.steps.len(), segments - 1);
                let maxima = replay_qubit_occupancy(&path, &schedule).unwrap();
                for (&vertex, &max_held) in &maxima {
                    let expected = if vertex == path[0] || vertex == *path.last().unwrap() {
                        1
                    } else {
                        2
                    };
                    assert!(
                        max_held <= expected,
                        "{protocol:?}: vertex {vertex} held {max_held} qubits"
                    );
                }
            }
        }
    }

    #[test]
    fn replay_rejects_inconsistent_steps() {
        let path: Vec<usize> = (0..5).collect();
        let mut schedule = make_schedule(&path, SwapProtocol::Sequential).unwrap();
        schedule.steps.swap(0, 2);
        assert!(matches!(
            replay_qubit_occupancy(&path, &schedule),
            Err(NetworkError::InvalidSchedule { .. })
        ));
    }

    #[test]
    fn odd_length_sequential_still_ends_with_one_pair() {
        let path: Vec<usize> = (0..8).collect();
        let schedule = make_schedule(&path, SwapProtocol::Sequential).unwrap();
        // Replaying to completion leaves exactly the end-to-end pair.
        let mut active: std::collections::BTreeSet<(usize, usize)> =
            path.windows(2).map(|w| (w[0], w[1])).collect();
        for step in &schedule.steps {
            active.remove(&(step.left, step.intermediate));
            active.remove(&(step.intermediate, step.right));
            active.insert((step.left, step.right));
        }
        assert_eq!(active.len(), 1);
        assert!(active.contains(&(0, 7)));
    }
}
