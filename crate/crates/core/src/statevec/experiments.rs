//! Circuit-level replicas of the protocols the closed-form layer models:
//! two-pair purification, entanglement swapping, repetition-code links, an
//! encoded swap, and concatenated majority decoding.
//!
//! Each experiment enumerates every error pattern and measurement branch of
//! a fixed small circuit, so its outputs are exact expectation values that
//! can be compared against analytic formulas at 1e-12 tolerances.

use super::channel::{enumerate_channel, pattern_weight, ErrorPattern};
use super::{
    apply_circuit, apply_gate, bell_pair_state, bell_projection_probability, measure_z, BellKind,
    Gate, KahanSum, PureState, SimError,
};

/// The three summary numbers every post-selected experiment produces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentResult {
    /// Probability that the protocol's post-selection accepts.
    pub accept_probability: f64,
    /// Bell-pair fidelity of the surviving pair, conditioned on acceptance.
    pub conditional_bell_fidelity: f64,
    /// Joint probability of accepting *and* holding the intended outcome.
    pub raw_success_probability: f64,
}

impl ExperimentResult {
    /// The square-root-of-success convention used by the single-qubit
    /// repetition-code recursion.
    pub fn sqrt_success_fidelity(&self) -> f64 {
        self.raw_success_probability.sqrt()
    }
}

fn expect_gate(state: &PureState, gate: Gate) -> PureState {
    apply_gate(state, gate).expect("fixed experiment circuits use valid qubit indices")
}

fn expect_circuit(state: &PureState, gates: &[Gate]) -> PureState {
    apply_circuit(state, gates).expect("fixed experiment circuits use valid qubit indices")
}

/// One round of two-pair purification on pairs that each carry error weight
/// `p_pair` (mixture `(1−p)·Φ⁺ + p·Ψ⁺`).
///
/// Layout: kept pair on qubits (0, 1), sacrificed pair on (2, 3). Each side
/// applies a CNOT from its kept half onto its sacrificed half, both
/// sacrificed qubits are measured, and the round accepts when the outcomes
/// agree. Exact expectations come from enumerating the four channel
/// patterns and all measurement branches.
pub fn purification_experiment(p_pair: f64) -> ExperimentResult {
    let base = bell_pair_state(BellKind::PhiPlus)
        .tensor(&bell_pair_state(BellKind::PhiPlus))
        .expect("four qubits fit the simulator");
    // Flipping one half of a pair converts Φ⁺ into Ψ⁺, so a bit-flip
    // channel on one qubit per pair realizes the mixture exactly.
    let branches =
        enumerate_channel(&base, &[1, 3], p_pair).expect("channel subset is valid");
    let mut accept = KahanSum::new();
    let mut raw = KahanSum::new();
    for (pattern, noisy) in &branches {
        let state = expect_circuit(
            noisy,
            &[
                Gate::Cnot { control: 0, target: 2 },
                Gate::Cnot { control: 1, target: 3 },
            ],
        );
        for first in measure_z(&state, 2).expect("qubit 2 exists") {
            for second in measure_z(&first.state, 3).expect("qubit 3 exists") {
                if first.outcome != second.outcome {
                    continue;
                }
                let branch_probability = pattern.weight * first.probability * second.probability;
                accept.add(branch_probability);
                let phi = bell_projection_probability(&second.state, 0, 1, BellKind::PhiPlus)
                    .expect("kept pair qubits exist");
                raw.add(branch_probability * phi);
            }
        }
    }
    let accept_probability = accept.value();
    let raw_success_probability = raw.value();
    let conditional_bell_fidelity = if accept_probability > 0.0 {
        raw_success_probability / accept_probability
    } else {
        0.0
    };
    ExperimentResult {
        accept_probability,
        conditional_bell_fidelity,
        raw_success_probability,
    }
}

/// Probability that independent bit-flips with probability `p_x` on *both*
/// halves of a fresh Φ⁺ pair leave it in the Ψ⁺ error state.
///
/// Double flips cancel on Φ⁺, which is why this comes out below `2·p_x`.
pub fn qubit_level_pair_error(p_x: f64) -> f64 {
    let base = bell_pair_state(BellKind::PhiPlus);
    let branches = enumerate_channel(&base, &[0, 1], p_x).expect("channel subset is valid");
    let mut total = KahanSum::new();
    for (pattern, state) in &branches {
        let psi = bell_projection_probability(state, 0, 1, BellKind::PsiPlus)
            .expect("pair qubits exist");
        total.add(pattern.weight * psi);
    }
    total.value()
}

/// Entanglement swapping of two pairs s–r and r–d under one explicit flip
/// pattern over the four qubits (subset order: s, r-left, r-right, d).
///
/// The repeater applies CNOT between its halves, measures both, and the
/// endpoint applies the X/Z corrections dictated by the outcomes. The final
/// s–d pair is always a definite Bell state; which one is returned.
pub fn swapping_experiment(pattern: &ErrorPattern) -> Result<BellKind, SimError> {
    if pattern.flips >= 1 << 4 {
        return Err(SimError::PatternOutOfRange {
            flips: pattern.flips,
            subset_size: 4,
        });
    }
    let base = bell_pair_state(BellKind::PhiPlus)
        .tensor(&bell_pair_state(BellKind::PhiPlus))
        .expect("four qubits fit the simulator");
    let mut state = base;
    for position in 0..4 {
        if pattern.flips_qubit(position) {
            state = apply_gate(&state, Gate::X(position))?;
        }
    }
    let state = expect_circuit(&state, &[Gate::Cnot { control: 1, target: 2 }, Gate::H(1)]);
    let mut kinds = Vec::new();
    for first in measure_z(&state, 1)? {
        for second in measure_z(&first.state, 2)? {
            let mut corrected = second.state.clone();
            if second.outcome == 1 {
                corrected = expect_gate(&corrected, Gate::X(3));
            }
            if first.outcome == 1 {
                corrected = expect_gate(&corrected, Gate::Z(3));
            }
            kinds.push(classify_bell_end_to_end(&corrected)?);
        }
    }
    let kind = kinds[0];
    if kinds.iter().any(|&k| k != kind) {
        return Err(SimError::UnclassifiableState);
    }
    Ok(kind)
}

fn classify_bell_end_to_end(state: &PureState) -> Result<BellKind, SimError> {
    super::classify_bell(state, 0, 3)
}

/// Majority-decode success of one three-qubit repetition block whose qubits
/// each flip independently with the pattern given by `flips` (bit `i` →
/// block qubit `i`; qubit 0 is the data qubit).
fn repetition_block_decodes_correctly(flips: u8) -> bool {
    let mut state = PureState::zero_state(3).expect("three qubits fit the simulator");
    // Encoding copies the (here |0⟩) data qubit onto both ancillas.
    state = expect_circuit(
        &state,
        &[
            Gate::Cnot { control: 0, target: 1 },
            Gate::Cnot { control: 0, target: 2 },
        ],
    );
    for position in 0..3 {
        if flips >> position & 1 == 1 {
            state = expect_gate(&state, Gate::X(position));
        }
    }
    state = expect_circuit(&state, &decode_block_gates(0, 1));
    let branches = measure_z(&state, 0).expect("qubit 0 exists");
    branches.len() == 1 && branches[0].outcome == 0
}

/// The majority-vote decoder for one block: data at `start`, ancillas at
/// `start + stride` and `start + 2·stride`. Two CNOTs move the data value
/// onto the ancillas (turning them into disagreement flags), then a Toffoli
/// flips the data qubit exactly when both ancillas disagree with it.
fn decode_block_gates(start: usize, stride: usize) -> [Gate; 3] {
    [
        Gate::Cnot { control: start, target: start + stride },
        Gate::Cnot { control: start, target: start + 2 * stride },
        Gate::Toffoli {
            control_a: start + stride,
            control_b: start + 2 * stride,
            target: start,
        },
    ]
}

/// A repetition-coded link: both halves of an encoded Bell pair pass
/// through independent per-qubit flip channels with probability `p` and are
/// majority-decoded.
///
/// `raw_success_probability` is the probability that *both* halves decode
/// their logical value correctly — the per-side bookkeeping whose square
/// root the single-qubit recursion tracks. (The literal Φ⁺ projection of
/// the decoded pair is larger: simultaneous logical flips on both sides
/// cancel there. Tests pin that identity against the full six-qubit
/// circuit.) There is no post-selection, so acceptance is 1.
pub fn repetition_code_experiment(p: f64) -> ExperimentResult {
    assert!(
        (0.0..=1.0).contains(&p),
        "flip probability must lie in [0, 1], got {p}"
    );
    let mut side = KahanSum::new();
    for flips in 0..8u8 {
        if repetition_block_decodes_correctly(flips) {
            side.add(pattern_weight(u32::from(flips), 3, p));
        }
    }
    let per_side = side.value();
    let both = per_side * per_side;
    ExperimentResult {
        accept_probability: 1.0,
        conditional_bell_fidelity: both,
        raw_success_probability: both,
    }
}

/// Probability that the decoded s–d pair of an encoded swap ends in |Φ⁺⟩
/// under explicit flip patterns on the two codewords (bit `i` of each
/// pattern → block qubit `i`, data qubit at bit 2 for the s side and bit 0
/// for the d side's data-first layout below).
///
/// Register layout (eight qubits): s-side ancillas (0, 1) and data (2);
/// repeater halves (3, 4); d-side data (5) and ancillas (6, 7). The s
/// pattern's bits address qubits (0, 1, 2); the d pattern's bits address
/// qubits (5, 6, 7).
pub fn ecc_swap_pattern_outcome(s_flips: u8, d_flips: u8) -> Result<f64, SimError> {
    if s_flips >= 8 || d_flips >= 8 {
        return Err(SimError::PatternOutOfRange {
            flips: u32::from(s_flips.max(d_flips)),
            subset_size: 3,
        });
    }
    let mut state = PureState::zero_state(8)?;
    state = expect_circuit(
        &state,
        &[
            // Bell pairs s–r and r–d.
            Gate::H(2),
            Gate::Cnot { control: 2, target: 3 },
            Gate::H(4),
            Gate::Cnot { control: 4, target: 5 },
            // Encode both codewords before the swap.
            Gate::Cnot { control: 2, target: 0 },
            Gate::Cnot { control: 2, target: 1 },
            Gate::Cnot { control: 5, target: 6 },
            Gate::Cnot { control: 5, target: 7 },
            // The repeater swaps its two halves together.
            Gate::Cnot { control: 3, target: 4 },
            Gate::H(3),
        ],
    );
    let mut total = KahanSum::new();
    for first in measure_z(&state, 3)? {
        for second in measure_z(&first.state, 4)? {
            let mut branch = second.state.clone();
            // Logical corrections act transversally on the d codeword.
            if second.outcome == 1 {
                branch = expect_circuit(&branch, &[Gate::X(5), Gate::X(6), Gate::X(7)]);
            }
            if first.outcome == 1 {
                branch = expect_circuit(&branch, &[Gate::Z(5), Gate::Z(6), Gate::Z(7)]);
            }
            // Channel flips hit the codewords after the corrections.
            for position in 0..3usize {
                if s_flips >> position & 1 == 1 {
                    branch = expect_gate(&branch, Gate::X(position));
                }
                if d_flips >> position & 1 == 1 {
                    branch = expect_gate(&branch, Gate::X(5 + position));
                }
            }
            // Majority-decode both sides; data qubits are 2 and 5.
            branch = expect_circuit(
                &branch,
                &[
                    Gate::Cnot { control: 2, target: 0 },
                    Gate::Cnot { control: 2, target: 1 },
                    Gate::Toffoli { control_a: 0, control_b: 1, target: 2 },
                    Gate::Cnot { control: 5, target: 6 },
                    Gate::Cnot { control: 5, target: 7 },
                    Gate::Toffoli { control_a: 6, control_b: 7, target: 5 },
                ],
            );
            let phi = bell_projection_probability(&branch, 2, 5, BellKind::PhiPlus)?;
            total.add(first.probability * second.probability * phi);
        }
    }
    Ok(total.value())
}

/// The encoded-swap experiment: repetition codewords on both sides of a
/// swapped pair, independent per-qubit flips with probability `p` on all
/// six codeword qubits, majority decoding, and a final Φ⁺ projection of the
/// decoded s–d pair.
///
/// No post-selection is involved (swap outcomes are corrected, not
/// filtered), so acceptance is 1 and the raw and conditional values agree.
pub fn ecc_swap_experiment(p: f64) -> ExperimentResult {
    assert!(
        (0.0..=1.0).contains(&p),
        "flip probability must lie in [0, 1], got {p}"
    );
    let mut total = KahanSum::new();
    for s_flips in 0..8u8 {
        for d_flips in 0..8u8 {
            let weight = pattern_weight(u32::from(s_flips), 3, p)
                * pattern_weight(u32::from(d_flips), 3, p);
            let outcome = ecc_swap_pattern_outcome(s_flips, d_flips)
                .expect("patterns below 8 are valid");
            total.add(weight * outcome);
        }
    }
    let phi = total.value();
    ExperimentResult {
        accept_probability: 1.0,
        conditional_bell_fidelity: phi,
        raw_success_probability: phi,
    }
}

/// Success probability of `levels` nested majority votes when each physical
/// qubit carries error probability `p`, by the closed recursion
/// `s' = s³ + 3·s²·(1 − s)` seeded with `s = 1 − p`.
pub fn concatenated_success_probability(levels: u32, p: f64) -> f64 {
    assert!(
        (0.0..=1.0).contains(&p),
        "flip probability must lie in [0, 1], got {p}"
    );
    let mut s = 1.0 - p;
    for _ in 0..levels {
        s = s * s * s + 3.0 * s * s * (1.0 - s);
    }
    s
}

/// The decode circuit for a `levels`-deep concatenated repetition code on
/// `3^levels` qubits: inner blocks collapse onto their data qubits first,
/// then each outer level majority-votes over the surviving data qubits.
fn concatenated_decode_gates(levels: u32) -> Vec<Gate> {
    let mut gates = Vec::new();
    let total = 3usize.pow(levels);
    for level in 1..=levels {
        let block = 3usize.pow(level);
        let stride = 3usize.pow(level - 1);
        for start in (0..total).step_by(block) {
            gates.extend_from_slice(&decode_block_gates(start, stride));
        }
    }
    gates
}

/// Brute-force check of [`concatenated_success_probability`]: enumerates
/// all `2^(3^levels)` flip patterns on the physical qubits of an encoded
/// |0⟩, runs the exact decode circuit on each, and accumulates the weighted
/// probability that the logical qubit reads 0.
///
/// Supported for `levels ≤ 2` (512 patterns on nine qubits).
pub fn concatenated_success_brute_force(levels: u32, p: f64) -> Result<f64, SimError> {
    assert!(
        (0.0..=1.0).contains(&p),
        "flip probability must lie in [0, 1], got {p}"
    );
    if levels > 2 {
        return Err(SimError::PatternSpaceTooLarge(levels));
    }
    let num_qubits = 3usize.pow(levels);
    let gates = concatenated_decode_gates(levels);
    let mut success = KahanSum::new();
    for flips in 0..(1u32 << num_qubits) {
        // Subset position i addresses qubit i; qubit 0 is the index MSB.
        let mut index = 0usize;
        for position in 0..num_qubits {
            if flips >> position & 1 == 1 {
                index |= 1 << (num_qubits - 1 - position);
            }
        }
        let state = PureState::basis_state(num_qubits, index)?;
        let decoded = apply_circuit(&state, &gates)?;
        let branches = measure_z(&decoded, 0)?;
        for branch in branches {
            if branch.outcome == 0 {
                success.add(pattern_weight(flips, num_qubits, p) * branch.probability);
            }
        }
    }
    Ok(success.value())
}
