//! Cross-checks of every closed-form protocol formula against the exact
//! state-vector circuit oracle.
//!
//! Each check sweeps a fixed 21-point probability grid, runs the relevant
//! circuit experiment at every point, and records the worst absolute
//! deviation from the closed form. The formulas arrive through a
//! [`FormulaSet`] of plain function pointers so a caller can deliberately
//! substitute a wrong formula and watch the corresponding check fail — the
//! checks validate formulas against circuits, not formulas against
//! themselves.

use crate::analytic;
use crate::statevec::{
    concatenated_success_brute_force, concatenated_success_probability, purification_experiment,
    qubit_level_pair_error, repetition_code_experiment,
};
use serde::Serialize;

/// Largest deviation any formula may show against its circuit oracle. Both
/// sides are exact up to floating-point rounding, so the budget is tight.
pub const CHECK_TOLERANCE: f64 = 1e-12;

/// Names of the checks [`run_oracle_checks`] produces, in order.
pub const CHECK_NAMES: [&str; 6] = [
    "purification-fidelity",
    "purification-acceptance",
    "repetition-code-fidelity",
    "concatenation-level-1",
    "concatenation-level-2",
    "pair-error-reduction",
];

/// Result of one formula-versus-circuit sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// Worst `|circuit − formula|` over the probability grid.
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.max_deviation.is_finite() && self.max_deviation <= self.tolerance
    }
}

/// The closed forms under test, as substitutable function pointers.
///
/// All probability arguments range over [0, 1]. The default wires in the
/// production formulas; replace a field to demonstrate that the checks
/// actually discriminate.
#[derive(Clone, Copy)]
pub struct FormulaSet {
    /// Post-selected fidelity after one purification round at pair error
    /// weight `p`.
    pub purified_pair_fidelity: fn(f64) -> f64,
    /// Acceptance probability of that round.
    pub purification_acceptance: fn(f64) -> f64,
    /// Per-side decode success of a repetition-coded link at per-qubit flip
    /// probability `p`.
    pub ecc_bell_fidelity: fn(f64) -> f64,
    /// Logical success of `levels` nested majority votes.
    pub concatenated_success: fn(u32, f64) -> f64,
    /// Probability that per-qubit flips at rate `p` on both halves leave a
    /// fresh pair in the swapped error state.
    pub pair_error_reduction: fn(f64) -> f64,
}

impl Default for FormulaSet {
    fn default() -> Self {
        Self {
            purified_pair_fidelity: |p| analytic::purified_pair_fidelity(p).value(),
            purification_acceptance: analytic::purification_acceptance_probability,
            ecc_bell_fidelity: |p| analytic::ecc_bell_fidelity(p).fidelity.value(),
            concatenated_success: concatenated_success_probability,
            pair_error_reduction: |p| 2.0 * p * (1.0 - p),
        }
    }
}

/// The shared sweep grid: 21 equally spaced probabilities from 0 to 1
/// inclusive. Dense enough to pin every polynomial identity involved (all
/// are degree ≤ 9), cheap enough to run the nine-qubit brute force at every
/// point.
pub fn probability_grid() -> Vec<f64> {
    (0..=20).map(|i| f64::from(i) / 20.0).collect()
}

fn sweep(name: &'static str, deviation_at: impl Fn(f64) -> f64) -> CheckOutcome {
    let max_deviation = probability_grid()
        .into_iter()
        .map(deviation_at)
        .fold(0.0_f64, f64::max);
    CheckOutcome {
        name,
        max_deviation,
        tolerance: CHECK_TOLERANCE,
    }
}

/// Runs every formula-versus-circuit check and reports the deviations.
pub fn run_oracle_checks(formulas: &FormulaSet) -> Vec<CheckOutcome> {
    let f = *formulas;
    vec![
        sweep("purification-fidelity", |p| {
            let circuit = purification_experiment(p).conditional_bell_fidelity;
            (circuit - (f.purified_pair_fidelity)(p)).abs()
        }),
        sweep("purification-acceptance", |p| {
            let circuit = purification_experiment(p).accept_probability;
            (circuit - (f.purification_acceptance)(p)).abs()
        }),
        sweep("repetition-code-fidelity", |p| {
            let circuit = repetition_code_experiment(p).sqrt_success_fidelity();
            (circuit - (f.ecc_bell_fidelity)(p)).abs()
        }),
        sweep("concatenation-level-1", |p| {
            let circuit = concatenated_success_brute_force(1, p)
                .expect("one level is within brute-force range");
            (circuit - (f.concatenated_success)(1, p)).abs()
        }),
        sweep("concatenation-level-2", |p| {
            let circuit = concatenated_success_brute_force(2, p)
                .expect("two levels are within brute-force range");
            (circuit - (f.concatenated_success)(2, p)).abs()
        }),
        sweep("pair-error-reduction", |p| {
            let circuit = qubit_level_pair_error(p);
            (circuit - (f.pair_error_reduction)(p)).abs()
        }),
    ]
}

/// [`run_oracle_checks`] with the production formulas.
pub fn default_checks() -> Vec<CheckOutcome> {
    run_oracle_checks(&FormulaSet::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spans_the_unit_interval() {
        let grid = probability_grid();
        assert_eq!(grid.len(), 21);
        assert_eq!(grid[0], 0.0);
        assert_eq!(grid[20], 1.0);
        assert!((grid[7] - 0.35).abs() < 1e-15);
    }

    #[test]
    fn production_formulas_pass_every_check() {
        let outcomes = default_checks();
        let names: Vec<&str> = outcomes.iter().map(|o| o.name).collect();
        assert_eq!(names, CHECK_NAMES);
        for outcome in &outcomes {
            assert!(
                outcome.passed(),
                "{} deviates by {} (tolerance {})",
                outcome.name,
                outcome.max_deviation,
                outcome.tolerance
            );
        }
    }

    #[test]
    fn corrupted_formula_fails_exactly_its_own_check() {
        let mut formulas = FormulaSet::default();
        formulas.pair_error_reduction = |p| 2.0 * p; // drops the cancellation term
        let outcomes = run_oracle_checks(&formulas);
        for outcome in &outcomes {
            if outcome.name == "pair-error-reduction" {
                assert!(!outcome.passed(), "the corrupted check must fail");
                // Worst case p = 1: 2p(1−p) = 0 versus 2p = 2.
                assert!(outcome.max_deviation > 1.0);
            } else {
                assert!(outcome.passed(), "{} should be unaffected", outcome.name);
            }
        }
    }

    #[test]
    fn corrupted_recursion_fails_both_concatenation_checks() {
        let mut formulas = FormulaSet::default();
        formulas.concatenated_success = |levels, p| {
            let mut s = 1.0 - p;
            for _ in 0..levels {
                s = s * s; // wrong recursion: two-qubit AND, not majority
            }
            s
        };
        let outcomes = run_oracle_checks(&formulas);
        for outcome in &outcomes {
            let concatenation = outcome.name.starts_with("concatenation");
            assert_eq!(!outcome.passed(), concatenation, "{}", outcome.name);
        }
    }
}
