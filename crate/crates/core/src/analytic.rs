//! Closed-form fidelity recursions, iteration bounds, and resource formulas.
//!
//! Two fidelity conventions coexist and are kept explicit throughout. A
//! *Bell-pair* fidelity is the overlap of a two-qubit mixture with the ideal
//! |Φ⁺⟩ state, a plain probability. The repetition-code recursion instead
//! tracks a *single-qubit* fidelity, the square root of a success
//! probability, because one concatenation step maps the per-qubit success
//! probability s to s³ + 3s²(1−s) and the pair-level quantity is the square
//! of the per-side value. [`fidelity_trajectory`] always reports the
//! Bell-pair convention for both schemes so curves are directly comparable.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard stop for fixed-point iterations driven by [`iterations_to_target`],
/// guarding against targets that a recursion cannot reach.
pub const ITERATION_CAP: u32 = 10_000;

/// Single-qubit error level below which one repetition-code concatenation is
/// guaranteed to at least halve the error `1 − F`.
///
/// The value is the exact halving point of the majority-vote error map
/// `e' = 3e² − 2e³`: solving `3e − 2e² = 1/2` gives
/// `e = (6 − sqrt(20)) / 8 ≈ 0.190983`. The fidelity recursion
/// `F' = F·sqrt(3 − 2F)` used by [`ecc_iteration_bound`] halves its error on
/// an even wider range (up to `e = (13 − sqrt(41))/16 ≈ 0.412`), so switching
/// from explicit iteration to the halving argument at this threshold is
/// conservative for both conventions.
pub fn halving_threshold() -> f64 {
    (6.0 - 20.0_f64.sqrt()) / 8.0
}

const TWO_THIRDS: f64 = 2.0 / 3.0;

/// Errors from the closed-form layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    /// A value outside the domain a fidelity-valued argument requires.
    #[error("fidelity {0} is outside the valid domain for this operation")]
    InvalidFidelity(f64),
    /// Target error rates must lie strictly between 0 and 1.
    #[error("target error rate {0} must lie strictly between 0 and 1")]
    InvalidEpsilon(f64),
    /// Purification has fixed points at 1/2 and 1; starting at or below 1/2
    /// can never improve the pair.
    #[error("initial fidelity {0} is at or below the purification threshold 1/2")]
    PurificationBelowThreshold(f64),
    /// The recursion failed to reach the target within [`ITERATION_CAP`].
    #[error("target not reached within {cap} iterations")]
    IterationCapExceeded { cap: u32 },
    /// A Bell mixture's weights must sum to one.
    #[error("mixture weights {fidelity} + {error_weight} do not sum to 1")]
    MixtureNotNormalized { fidelity: f64, error_weight: f64 },
    /// Repetition codes need at least three qubits for a majority vote.
    #[error("repetition code arity {0} is below the minimum of 3")]
    InvalidCodeArity(u32),
    /// A memory-cost exponential left the range of `u128`.
    #[error("resource count {base}^{exponent} overflows a 128-bit counter")]
    ResourceOverflow { base: u32, exponent: u32 },
}

/// A fidelity: a probability-valued overlap in `[0, 1]`.
///
/// Construction is checked once so downstream formulas can assume the
/// domain. Serialized transparently as the inner `f64`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Fidelity(f64);

impl Fidelity {
    /// Checks `0 ≤ value ≤ 1` and that the value is finite.
    pub fn new(value: f64) -> Result<Self, AnalyticError> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(AnalyticError::InvalidFidelity(value))
        }
    }

    /// The inner probability.
    pub fn value(self) -> f64 {
        self.0
    }

    /// Wraps recursion output, clamping the sub-ulp overshoot floating
    /// arithmetic can produce at the endpoints.
    fn from_recursion(value: f64) -> Self {
        Self(value.clamp(0.0, 1.0))
    }
}

impl TryFrom<f64> for Fidelity {
    type Error = AnalyticError;

    fn try_from(value: f64) -> Result<Self, AnalyticError> {
        Self::new(value)
    }
}

impl From<Fidelity> for f64 {
    fn from(f: Fidelity) -> f64 {
        f.0
    }
}

impl std::fmt::Display for Fidelity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A rank-two Bell-diagonal mixture: weight `fidelity` on |Φ⁺⟩ and
/// `error_weight` on the orthogonal error component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellMixture {
    fidelity: Fidelity,
    error_weight: f64,
}

const MIXTURE_TOLERANCE: f64 = 1e-12;

impl BellMixture {
    /// Requires `fidelity + error_weight = 1` within `1e-12` and a
    /// non-negative error weight.
    pub fn new(fidelity: Fidelity, error_weight: f64) -> Result<Self, AnalyticError> {
        if error_weight >= 0.0 && (fidelity.value() + error_weight - 1.0).abs() <= MIXTURE_TOLERANCE
        {
            Ok(Self {
                fidelity,
                error_weight,
            })
        } else {
            Err(AnalyticError::MixtureNotNormalized {
                fidelity: fidelity.value(),
                error_weight,
            })
        }
    }

    /// The mixture with error weight `1 − F`.
    pub fn from_fidelity(fidelity: Fidelity) -> Self {
        Self {
            fidelity,
            error_weight: 1.0 - fidelity.value(),
        }
    }

    pub fn fidelity(&self) -> Fidelity {
        self.fidelity
    }

    pub fn error_weight(&self) -> f64 {
        self.error_weight
    }

    /// The post-selected mixture after one two-pair purification round.
    pub fn purified(&self) -> BellMixture {
        Self::from_fidelity(purify_step(self.fidelity))
    }
}

/// The two noise-suppression schemes the toolkit compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scheme {
    /// Repeated two-pair purification with post-selection.
    Purification,
    /// Concatenated bit-flip repetition coding with majority decoding.
    EccRepetition { code_arity: u32 },
}

impl Scheme {
    /// The standard three-qubit repetition scheme.
    pub const fn ecc() -> Self {
        Scheme::EccRepetition { code_arity: 3 }
    }

    /// Rejects code arities below the three needed for a majority vote.
    pub fn validate(self) -> Result<(), AnalyticError> {
        match self {
            Scheme::EccRepetition { code_arity } if code_arity < 3 => {
                Err(AnalyticError::InvalidCodeArity(code_arity))
            }
            _ => Ok(()),
        }
    }

    /// Stable lowercase label used in CSV/JSON output.
    pub fn label(self) -> &'static str {
        match self {
            Scheme::Purification => "purification",
            Scheme::EccRepetition { .. } => "ecc",
        }
    }
}

fn purify_step_raw(f: f64) -> f64 {
    let q = 1.0 - f;
    let num = f * f;
    num / (num + q * q)
}

fn ecc_single_step_raw(f: f64) -> f64 {
    // F' = sqrt(F³ + 3 F² (1 − F)) = F · sqrt(3 − 2F)
    f * (3.0 - 2.0 * f).sqrt()
}

/// One round of two-pair purification: `F' = F² / (F² + (1 − F)²)`.
///
/// Fixed points at 1/2 and 1; strictly improving on (1/2, 1), strictly
/// degrading on (0, 1/2).
pub fn purify_step(f: Fidelity) -> Fidelity {
    Fidelity::from_recursion(purify_step_raw(f.value()))
}

/// Probability that one purification round post-selects successfully when
/// each input pair carries error weight `p`: `(1 − p)² + p²`.
pub fn purification_acceptance_probability(p: f64) -> f64 {
    assert!(
        (0.0..=1.0).contains(&p),
        "error weight must lie in [0, 1], got {p}"
    );
    let q = 1.0 - p;
    q * q + p * p
}

/// Fidelity of the surviving pair after one purification round on two pairs
/// with error weight `p`: `(1 − p)² / ((1 − p)² + p²)`.
pub fn purified_pair_fidelity(p: f64) -> Fidelity {
    assert!(
        (0.0..=1.0).contains(&p),
        "error weight must lie in [0, 1], got {p}"
    );
    let q = 1.0 - p;
    Fidelity::from_recursion(q * q / (q * q + p * p))
}

/// One repetition-code concatenation step in the single-qubit (square-root)
/// convention: `F' = F · sqrt(3 − 2F)`.
pub fn ecc_single_qubit_step(f: Fidelity) -> Fidelity {
    Fidelity::from_recursion(ecc_single_step_raw(f.value()))
}

/// Bell-pair fidelity after majority decoding, with the regime flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EccBellFidelity {
    pub fidelity: Fidelity,
    /// True when `p > 1/2`, where majority voting amplifies rather than
    /// suppresses the error.
    pub degraded_regime: bool,
}

/// Bell-pair fidelity of one encoded link whose three physical qubits each
/// flip independently with probability `p`:
/// `(1 − p)³ + 3 p (1 − p)² = (1 − p)² (1 + 2p)`.
pub fn ecc_bell_fidelity(p: f64) -> EccBellFidelity {
    assert!(
        (0.0..=1.0).contains(&p),
        "flip probability must lie in [0, 1], got {p}"
    );
    let q = 1.0 - p;
    EccBellFidelity {
        fidelity: Fidelity::from_recursion(q * q * (1.0 + 2.0 * p)),
        degraded_regime: p > 0.5,
    }
}

/// A fidelity curve: `values[n]` is the Bell-pair fidelity after `n`
/// rounds/concatenations, with `values[0]` the verbatim starting point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelityTrajectory {
    pub scheme: Scheme,
    pub initial: Fidelity,
    pub values: Vec<Fidelity>,
}

impl FidelityTrajectory {
    /// The last point of the curve.
    pub fn final_value(&self) -> Fidelity {
        *self.values.last().expect("trajectory holds at least F0")
    }
}

/// Iterates a scheme's recursion `steps` times starting from the Bell-pair
/// fidelity `f0`, reporting Bell-pair values throughout.
///
/// For the repetition scheme the iteration happens in the single-qubit
/// convention seeded with `sqrt(f0)`, and each stored point is the square of
/// the current single-qubit value.
///
/// Purification requires `f0 > 1/2`; anything at or below the fixed point is
/// rejected rather than silently producing a curve that sinks to 1/2.
pub fn fidelity_trajectory(
    scheme: Scheme,
    f0: Fidelity,
    steps: u32,
) -> Result<FidelityTrajectory, AnalyticError> {
    scheme.validate()?;
    let mut values = Vec::with_capacity(steps as usize + 1);
    values.push(f0);
    match scheme {
        Scheme::Purification => {
            if f0.value() <= 0.5 {
                return Err(AnalyticError::PurificationBelowThreshold(f0.value()));
            }
            let mut f = f0.value();
            for _ in 0..steps {
                f = purify_step_raw(f);
                values.push(Fidelity::from_recursion(f));
            }
        }
        Scheme::EccRepetition { .. } => {
            let mut single = f0.value().sqrt();
            for _ in 0..steps {
                single = ecc_single_step_raw(single);
                values.push(Fidelity::from_recursion(single * single));
            }
        }
    }
    Ok(FidelityTrajectory {
        scheme,
        initial: f0,
        values,
    })
}

/// Smallest iteration count `n` with trajectory value ≥ `target`.
///
/// Returns 0 immediately when `f0 ≥ target`, even for inputs a scheme could
/// not improve: no improvement is being asked for. Otherwise purification
/// demands `f0 > 1/2`, and any recursion that fails to reach the target
/// within [`ITERATION_CAP`] rounds reports
/// [`AnalyticError::IterationCapExceeded`].
pub fn iterations_to_target(
    scheme: Scheme,
    f0: Fidelity,
    target: Fidelity,
) -> Result<u32, AnalyticError> {
    scheme.validate()?;
    if f0.value() >= target.value() {
        return Ok(0);
    }
    match scheme {
        Scheme::Purification => {
            if f0.value() <= 0.5 {
                return Err(AnalyticError::PurificationBelowThreshold(f0.value()));
            }
            let mut f = f0.value();
            let mut n = 0;
            while f < target.value() {
                n += 1;
                if n > ITERATION_CAP {
                    return Err(AnalyticError::IterationCapExceeded { cap: ITERATION_CAP });
                }
                f = purify_step_raw(f);
            }
            Ok(n)
        }
        Scheme::EccRepetition { .. } => {
            let mut single = f0.value().sqrt();
            let mut n = 0;
            while single * single < target.value() {
                n += 1;
                if n > ITERATION_CAP {
                    return Err(AnalyticError::IterationCapExceeded { cap: ITERATION_CAP });
                }
                single = ecc_single_step_raw(single);
            }
            Ok(n)
        }
    }
}

/// Upper bound on purification rounds needed to push the pair error below
/// `eps`, valid for any `f0 > 1/2`.
///
/// Two phases. While `F < 2/3` each accepted round multiplies the fidelity
/// by more than `F₀ + 1/2`, so
/// `ceil(−log2(F₀·sqrt(2)) / log2(F₀ + 1/2))` rounds suffice to leave the
/// slow region (the numerator measures the climb to `1/sqrt(2) > 2/3`).
/// From `F ≥ 2/3` onwards, writing `F = k/(k+1)` with `k ≥ 2`, one round
/// squares `k`, so the error `1/(k+1)` falls doubly exponentially and
/// `ceil(log2 log2 (1/eps))` more rounds suffice; that term is clamped to 0
/// when `log2(1/eps) ≤ 1`.
pub fn purification_iteration_bound(f0: Fidelity, eps: f64) -> Result<u32, AnalyticError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(AnalyticError::InvalidEpsilon(eps));
    }
    let f = f0.value();
    if f <= 0.5 {
        return Err(AnalyticError::PurificationBelowThreshold(f));
    }
    let phase1 = if f >= TWO_THIRDS {
        0
    } else {
        (-(f * std::f64::consts::SQRT_2).log2() / (f + 0.5).log2()).ceil() as u32
    };
    let loglog = (1.0 / eps).log2().log2();
    let phase2 = if loglog <= 0.0 { 0 } else { loglog.ceil() as u32 };
    Ok(phase1 + phase2)
}

/// Upper bound on repetition-code concatenations needed to push the
/// single-qubit error `1 − F` below `eps`, valid for any single-qubit
/// `f0 > 1/2`.
///
/// The recursion is iterated explicitly until the error drops below
/// [`halving_threshold`], after which every further concatenation provably
/// at least halves it, so `ceil(log2(e / eps))` more levels suffice.
pub fn ecc_iteration_bound(f0: Fidelity, eps: f64) -> Result<u32, AnalyticError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(AnalyticError::InvalidEpsilon(eps));
    }
    let f = f0.value();
    if f <= 0.5 {
        return Err(AnalyticError::InvalidFidelity(f));
    }
    let threshold = halving_threshold();
    let mut current = f;
    let mut n0 = 0u32;
    while 1.0 - current >= threshold {
        n0 += 1;
        if n0 > ITERATION_CAP {
            return Err(AnalyticError::IterationCapExceeded { cap: ITERATION_CAP });
        }
        current = ecc_single_step_raw(current);
    }
    let err = 1.0 - current;
    if err <= eps {
        Ok(n0)
    } else {
        Ok(n0 + (err / eps).log2().ceil() as u32)
    }
}

/// Qubits a single repeater must hold to run `iterations` rounds of a scheme
/// over a route of `path_length` edges: `2^(n+ℓ−1)` for purification and
/// `m^(n+ℓ−1)` for arity-`m` repetition coding.
///
/// Counts are `u128` because the repetition scheme's exponential passes
/// `u64::MAX` already at `n + ℓ − 1 = 41`; growth past `u128` is still
/// reported as [`AnalyticError::ResourceOverflow`].
pub fn memory_required(scheme: Scheme, iterations: u32, path_length: u32) -> Result<u128, AnalyticError> {
    scheme.validate()?;
    assert!(
        iterations >= 1 && path_length >= 1,
        "resource formulas require n >= 1 and path length >= 1"
    );
    let base: u32 = match scheme {
        Scheme::Purification => 2,
        Scheme::EccRepetition { code_arity } => code_arity,
    };
    let exponent64 = u64::from(iterations) + u64::from(path_length) - 1;
    let exponent = u32::try_from(exponent64).expect("exponent fits u32 by construction");
    u128::from(base)
        .checked_pow(exponent)
        .ok_or(AnalyticError::ResourceOverflow { base, exponent })
}

/// Two-qubit operations a repeater performs over a route of `path_length`
/// edges: `7·n·(ℓ−1)` for purification, `4·(ℓ−1)` for repetition coding.
///
/// The repetition-scheme count is deliberately independent of `n`: deeper
/// concatenation grows memory, not the per-repeater gate count.
pub fn operations_required(scheme: Scheme, iterations: u32, path_length: u32) -> u128 {
    assert!(
        iterations >= 1 && path_length >= 1,
        "resource formulas require n >= 1 and path length >= 1"
    );
    let swaps = u128::from(path_length) - 1;
    match scheme {
        Scheme::Purification => 7 * u128::from(iterations) * swaps,
        Scheme::EccRepetition { .. } => 4 * swaps,
    }
}

/// The full cost picture for reaching `target` from `f0` over a route of
/// `path_length` edges with one scheme.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourceProfile {
    pub scheme: Scheme,
    pub initial_fidelity: Fidelity,
    pub target_fidelity: Fidelity,
    /// Rounds priced into the hardware: the minimum count reaching the
    /// target, forced to at least 1 so a profile always prices one round.
    pub iterations: u32,
    /// Route length in edges.
    pub path_length: u32,
    /// Fidelity at the iteration where the target is first met (or `f0`
    /// when no iterations were needed).
    pub achieved_fidelity: Fidelity,
    pub qubits: u128,
    pub operations: u128,
}

/// Prices a scheme: finds the minimum iteration count reaching `target`,
/// then evaluates the memory and operation formulas at that count (forced to
/// at least 1) and the given route length.
pub fn resource_profile(
    scheme: Scheme,
    f0: Fidelity,
    target: Fidelity,
    path_length: u32,
) -> Result<ResourceProfile, AnalyticError> {
    assert!(path_length >= 1, "path length must be at least 1");
    let raw = iterations_to_target(scheme, f0, target)?;
    let achieved = if raw == 0 {
        f0
    } else {
        fidelity_trajectory(scheme, f0, raw)?.final_value()
    };
    let iterations = raw.max(1);
    Ok(ResourceProfile {
        scheme,
        initial_fidelity: f0,
        target_fidelity: target,
        iterations,
        path_length,
        achieved_fidelity: achieved,
        qubits: memory_required(scheme, iterations, path_length)?,
        operations: operations_required(scheme, iterations, path_length),
    })
}
