//! Exact state-vector simulation of small quantum registers.
//!
//! Register convention: **qubit 0 is the most significant bit** of the
//! amplitude index, so the basis state |q₀ q₁ … q_{n−1}⟩ sits at index
//! `q₀·2^{n−1} + q₁·2^{n−2} + … + q_{n−1}`. Measurement is handled by
//! exhaustive branch enumeration — nothing in this module ever samples — so
//! every probability that leaves it is exact up to floating-point rounding.
//! That exactness is what lets the circuit layer act as an independent
//! oracle for the closed-form expressions in [`crate::analytic`].

mod channel;
mod experiments;

pub use channel::{enumerate_channel, ErrorPattern};
pub use experiments::{
    concatenated_success_brute_force, concatenated_success_probability, ecc_swap_experiment,
    ecc_swap_pattern_outcome, purification_experiment, qubit_level_pair_error,
    repetition_code_experiment, swapping_experiment, ExperimentResult,
};

use num_complex::Complex64;
use thiserror::Error;

/// Largest register the simulator accepts (2^20 amplitudes).
pub const MAX_QUBITS: usize = 20;

const NORM_TOLERANCE: f64 = 1e-10;
const BRANCH_PROBABILITY_FLOOR: f64 = 1e-30;

/// Errors from the simulation layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("register of {0} qubits exceeds the {MAX_QUBITS}-qubit simulator limit")]
    RegisterTooLarge(usize),
    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("gate addresses qubit {0} more than once")]
    DuplicateQubit(usize),
    #[error("basis index {index} out of range for dimension {dimension}")]
    BasisIndexOutOfRange { index: usize, dimension: usize },
    #[error("amplitude vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("state norm {0} deviates from 1 beyond tolerance")]
    NotNormalized(f64),
    #[error("measurement is not unitary; use measure_z for branch enumeration")]
    MeasurementNotUnitary,
    #[error("error-channel subset of {0} qubits exceeds the enumeration limit")]
    SubsetTooLarge(usize),
    #[error("flip pattern {flips:#b} addresses qubits beyond the {subset_size}-qubit subset")]
    PatternOutOfRange { flips: u32, subset_size: usize },
    #[error("concatenation depth {0} exceeds the brute-force enumeration limit")]
    PatternSpaceTooLarge(u32),
    #[error("state is not a Bell state up to tolerance")]
    UnclassifiableState,
}

/// Compensated (Kahan–Neumaier) accumulator for sums of many small
/// probabilities, keeping oracle comparisons honest at the 1e-12 scale.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// A pure state of up to [`MAX_QUBITS`] qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// |00…0⟩ on `num_qubits` qubits.
    pub fn zero_state(num_qubits: usize) -> Result<Self, SimError> {
        Self::basis_state(num_qubits, 0)
    }

    /// The computational basis state with the given amplitude index.
    pub fn basis_state(num_qubits: usize, index: usize) -> Result<Self, SimError> {
        if num_qubits > MAX_QUBITS {
            return Err(SimError::RegisterTooLarge(num_qubits));
        }
        let dimension = 1usize << num_qubits;
        if index >= dimension {
            return Err(SimError::BasisIndexOutOfRange { index, dimension });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dimension];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps a raw amplitude vector, requiring a power-of-two length within
    /// the size limit and unit norm within `1e-10`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, SimError> {
        let dimension = amplitudes.len();
        if !dimension.is_power_of_two() {
            return Err(SimError::NotPowerOfTwo(dimension));
        }
        let num_qubits = dimension.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(SimError::RegisterTooLarge(num_qubits));
        }
        let state = Self {
            num_qubits,
            amplitudes,
        };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimError::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Euclidean norm, accumulated with compensation.
    pub fn norm(&self) -> f64 {
        let mut acc = KahanSum::new();
        for a in &self.amplitudes {
            acc.add(a.norm_sqr());
        }
        acc.value().sqrt()
    }

    /// Kronecker product `self ⊗ other`; `self`'s qubits become the leading
    /// (most significant) block.
    pub fn tensor(&self, other: &PureState) -> Result<PureState, SimError> {
        let num_qubits = self.num_qubits + other.num_qubits;
        if num_qubits > MAX_QUBITS {
            return Err(SimError::RegisterTooLarge(num_qubits));
        }
        let mut amplitudes =
            vec![Complex64::new(0.0, 0.0); self.amplitudes.len() * other.amplitudes.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let offset = i << other.num_qubits;
            for (j, b) in other.amplitudes.iter().enumerate() {
                amplitudes[offset | j] = a * b;
            }
        }
        Ok(PureState {
            num_qubits,
            amplitudes,
        })
    }

    /// Bit mask selecting `qubit`'s position inside an amplitude index.
    fn qubit_mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }

    fn check_qubit(&self, qubit: usize) -> Result<(), SimError> {
        if qubit >= self.num_qubits {
            Err(SimError::QubitOutOfRange {
                index: qubit,
                num_qubits: self.num_qubits,
            })
        } else {
            Ok(())
        }
    }
}

/// The gate set: enough for Bell-pair preparation, purification,
/// entanglement swapping, and repetition-code encode/decode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    Cnot { control: usize, target: usize },
    Toffoli { control_a: usize, control_b: usize, target: usize },
    /// A placeholder in circuit listings; applying it through
    /// [`apply_gate`] is rejected because collapse is not unitary. Use
    /// [`measure_z`] to enumerate branches instead.
    MeasureZ(usize),
}

impl Gate {
    fn validate(self, state: &PureState) -> Result<(), SimError> {
        match self {
            Gate::H(q) | Gate::X(q) | Gate::Z(q) | Gate::MeasureZ(q) => state.check_qubit(q),
            Gate::Cnot { control, target } => {
                state.check_qubit(control)?;
                state.check_qubit(target)?;
                if control == target {
                    return Err(SimError::DuplicateQubit(control));
                }
                Ok(())
            }
            Gate::Toffoli {
                control_a,
                control_b,
                target,
            } => {
                state.check_qubit(control_a)?;
                state.check_qubit(control_b)?;
                state.check_qubit(target)?;
                if control_a == control_b {
                    return Err(SimError::DuplicateQubit(control_a));
                }
                if control_a == target || control_b == target {
                    return Err(SimError::DuplicateQubit(target));
                }
                Ok(())
            }
        }
    }
}

/// Applies one unitary gate, returning the new state.
pub fn apply_gate(state: &PureState, gate: Gate) -> Result<PureState, SimError> {
    gate.validate(state)?;
    let mut out = state.clone();
    let amps = &mut out.amplitudes;
    match gate {
        Gate::H(q) => {
            let mask = state.qubit_mask(q);
            let c = std::f64::consts::FRAC_1_SQRT_2;
            for i in 0..amps.len() {
                if i & mask == 0 {
                    let a = amps[i];
                    let b = amps[i | mask];
                    amps[i] = (a + b) * c;
                    amps[i | mask] = (a - b) * c;
                }
            }
        }
        Gate::X(q) => {
            let mask = state.qubit_mask(q);
            for i in 0..amps.len() {
                if i & mask == 0 {
                    amps.swap(i, i | mask);
                }
            }
        }
        Gate::Z(q) => {
            let mask = state.qubit_mask(q);
            for (i, a) in amps.iter_mut().enumerate() {
                if i & mask != 0 {
                    *a = -*a;
                }
            }
        }
        Gate::Cnot { control, target } => {
            let cmask = state.qubit_mask(control);
            let tmask = state.qubit_mask(target);
            for i in 0..amps.len() {
                if i & cmask != 0 && i & tmask == 0 {
                    amps.swap(i, i | tmask);
                }
            }
        }
        Gate::Toffoli {
            control_a,
            control_b,
            target,
        } => {
            let amask = state.qubit_mask(control_a);
            let bmask = state.qubit_mask(control_b);
            let tmask = state.qubit_mask(target);
            for i in 0..amps.len() {
                if i & amask != 0 && i & bmask != 0 && i & tmask == 0 {
                    amps.swap(i, i | tmask);
                }
            }
        }
        Gate::MeasureZ(_) => return Err(SimError::MeasurementNotUnitary),
    }
    Ok(out)
}

/// Applies a gate sequence left to right.
pub fn apply_circuit(state: &PureState, gates: &[Gate]) -> Result<PureState, SimError> {
    let mut current = state.clone();
    for &gate in gates {
        current = apply_gate(&current, gate)?;
    }
    Ok(current)
}

/// One branch of an enumerated Z measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBranch {
    pub outcome: u8,
    pub probability: f64,
    /// Post-measurement state, renormalized.
    pub state: PureState,
}

/// Enumerates both collapse branches of a Z measurement on `qubit`.
/// Branches with probability below `1e-30` are dropped; survivors are
/// renormalized.
pub fn measure_z(state: &PureState, qubit: usize) -> Result<Vec<MeasurementBranch>, SimError> {
    state.check_qubit(qubit)?;
    let mask = state.qubit_mask(qubit);
    let mut branches = Vec::with_capacity(2);
    for outcome in 0..2u8 {
        let mut prob = KahanSum::new();
        for (i, a) in state.amplitudes.iter().enumerate() {
            let bit = u8::from(i & mask != 0);
            if bit == outcome {
                prob.add(a.norm_sqr());
            }
        }
        let probability = prob.value();
        if probability <= BRANCH_PROBABILITY_FLOOR {
            continue;
        }
        let scale = 1.0 / probability.sqrt();
        let amplitudes = state
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let bit = u8::from(i & mask != 0);
                if bit == outcome {
                    a * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        branches.push(MeasurementBranch {
            outcome,
            probability,
            state: PureState {
                num_qubits: state.num_qubits,
                amplitudes,
            },
        });
    }
    Ok(branches)
}

/// The four maximally entangled two-qubit states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];

    /// The two basis settings `(bit_a, bit_b)` superposed, and the relative
    /// sign between them.
    fn components(self) -> ((u8, u8), (u8, u8), f64) {
        match self {
            BellKind::PhiPlus => ((0, 0), (1, 1), 1.0),
            BellKind::PhiMinus => ((0, 0), (1, 1), -1.0),
            BellKind::PsiPlus => ((0, 1), (1, 0), 1.0),
            BellKind::PsiMinus => ((0, 1), (1, 0), -1.0),
        }
    }
}

/// A fresh two-qubit Bell pair.
pub fn bell_pair_state(kind: BellKind) -> PureState {
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let ((a0, b0), (a1, b1), sign) = kind.components();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 4];
    amplitudes[usize::from(a0) << 1 | usize::from(b0)] = Complex64::new(c, 0.0);
    amplitudes[usize::from(a1) << 1 | usize::from(b1)] = Complex64::new(sign * c, 0.0);
    PureState {
        num_qubits: 2,
        amplitudes,
    }
}

/// Probability that projecting qubits `(qubit_a, qubit_b)` of `state` onto
/// the given Bell state succeeds.
pub fn bell_projection_probability(
    state: &PureState,
    qubit_a: usize,
    qubit_b: usize,
    kind: BellKind,
) -> Result<f64, SimError> {
    state.check_qubit(qubit_a)?;
    state.check_qubit(qubit_b)?;
    if qubit_a == qubit_b {
        return Err(SimError::DuplicateQubit(qubit_a));
    }
    let mask_a = state.qubit_mask(qubit_a);
    let mask_b = state.qubit_mask(qubit_b);
    let ((a0, b0), (a1, b1), sign) = kind.components();
    let pattern_first = usize::from(a0) * mask_a + usize::from(b0) * mask_b;
    let pattern_second = usize::from(a1) * mask_a + usize::from(b1) * mask_b;
    let pair_mask = mask_a | mask_b;
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let mut prob = KahanSum::new();
    for i in 0..state.amplitudes.len() {
        // Visit each residual configuration once, via its first-component slot.
        if i & pair_mask != pattern_first {
            continue;
        }
        let partner = (i & !pair_mask) | pattern_second;
        let overlap = (state.amplitudes[i] + state.amplitudes[partner] * sign) * c;
        prob.add(overlap.norm_sqr());
    }
    Ok(prob.value())
}

/// Identifies which Bell state qubits `(qubit_a, qubit_b)` hold, requiring
/// unit projection probability within `1e-9`.
pub fn classify_bell(
    state: &PureState,
    qubit_a: usize,
    qubit_b: usize,
) -> Result<BellKind, SimError> {
    for kind in BellKind::ALL {
        let p = bell_projection_probability(state, qubit_a, qubit_b, kind)?;
        if (p - 1.0).abs() < 1e-9 {
            return Ok(kind);
        }
    }
    Err(SimError::UnclassifiableState)
}
