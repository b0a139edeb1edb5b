//! Exhaustive enumeration of independent bit-flip channels.
//!
//! Instead of sampling errors, a channel acting on `s` qubits is expanded
//! into all `2^s` flip patterns, each carrying its exact binomial weight
//! `p^|pattern| (1−p)^(s−|pattern|)`. Downstream experiments then average
//! circuit outcomes over the patterns, which is what makes them exact
//! oracles rather than Monte Carlo estimates.

use super::{apply_gate, Gate, PureState, SimError, MAX_QUBITS};

/// One flip pattern of an enumerated channel: bit `i` of `flips` is set when
/// the `i`-th qubit of the channel's subset was flipped; `weight` is the
/// pattern's exact probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorPattern {
    pub flips: u32,
    pub weight: f64,
}

impl ErrorPattern {
    /// Number of flipped qubits in the pattern.
    pub fn flip_count(&self) -> u32 {
        self.flips.count_ones()
    }

    /// Whether the pattern flips the subset's `position`-th qubit.
    pub fn flips_qubit(&self, position: usize) -> bool {
        self.flips >> position & 1 == 1
    }
}

/// Exact probability of a flip pattern: `p^k (1−p)^(s−k)` for `k` flips
/// among `s` qubits.
pub(crate) fn pattern_weight(flips: u32, subset_size: usize, p: f64) -> f64 {
    let k = flips.count_ones() as i32;
    p.powi(k) * (1.0 - p).powi(subset_size as i32 - k)
}

/// Expands an independent bit-flip channel with per-qubit probability `p`
/// acting on `subset` of `base`'s qubits into all `2^|subset|` weighted
/// branch states.
///
/// Subset indices must be distinct and in range; weights sum to 1 exactly up
/// to rounding.
pub fn enumerate_channel(
    base: &PureState,
    subset: &[usize],
    p: f64,
) -> Result<Vec<(ErrorPattern, PureState)>, SimError> {
    assert!(
        (0.0..=1.0).contains(&p),
        "flip probability must lie in [0, 1], got {p}"
    );
    if subset.len() > MAX_QUBITS {
        return Err(SimError::SubsetTooLarge(subset.len()));
    }
    for (i, &q) in subset.iter().enumerate() {
        if q >= base.num_qubits() {
            return Err(SimError::QubitOutOfRange {
                index: q,
                num_qubits: base.num_qubits(),
            });
        }
        if subset[..i].contains(&q) {
            return Err(SimError::DuplicateQubit(q));
        }
    }
    let count = 1u32 << subset.len();
    let mut branches = Vec::with_capacity(count as usize);
    for flips in 0..count {
        let mut state = base.clone();
        for (position, &qubit) in subset.iter().enumerate() {
            if flips >> position & 1 == 1 {
                state = apply_gate(&state, Gate::X(qubit))?;
            }
        }
        branches.push((
            ErrorPattern {
                flips,
                weight: pattern_weight(flips, subset.len(), p),
            },
            state,
        ));
    }
    Ok(branches)
}

#[cfg(test)]
mod tests {
    use super::super::{bell_pair_state, BellKind, KahanSum};
    use super::*;

    #[test]
    fn weights_sum_to_one_for_various_subset_sizes() {
        let base = PureState::zero_state(8).unwrap();
        for size in 0..=8usize {
            let subset: Vec<usize> = (0..size).collect();
            for p in [0.0, 0.1, 0.37, 0.5, 0.93, 1.0] {
                let branches = enumerate_channel(&base, &subset, p).unwrap();
                assert_eq!(branches.len(), 1 << size);
                let mut total = KahanSum::new();
                for (pattern, _) in &branches {
                    total.add(pattern.weight);
                }
                assert!(
                    (total.value() - 1.0).abs() <= 1e-10,
                    "weights sum to {} for size {size}, p {p}",
                    total.value()
                );
            }
        }
    }

    #[test]
    fn patterns_apply_the_stated_flips() {
        let base = PureState::zero_state(3).unwrap();
        let branches = enumerate_channel(&base, &[0, 1, 2], 0.25).unwrap();
        for (pattern, state) in &branches {
            // The flipped basis state index mirrors the pattern bits
            // (subset position i targets qubit i, the i-th most significant).
            let mut expected = 0usize;
            for position in 0..3 {
                if pattern.flips_qubit(position) {
                    expected |= 1 << (2 - position);
                }
            }
            assert!((state.amplitudes()[expected].norm_sqr() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn weight_formula_is_binomial() {
        let base = PureState::zero_state(2).unwrap();
        let p = 0.2;
        let branches = enumerate_channel(&base, &[0, 1], p).unwrap();
        let by_flips: Vec<f64> = branches.iter().map(|(pat, _)| pat.weight).collect();
        assert!((by_flips[0b00] - 0.64).abs() < 1e-15);
        assert!((by_flips[0b01] - 0.16).abs() < 1e-15);
        assert!((by_flips[0b10] - 0.16).abs() < 1e-15);
        assert!((by_flips[0b11] - 0.04).abs() < 1e-15);
    }

    #[test]
    fn invalid_subsets_are_rejected() {
        let base = PureState::zero_state(2).unwrap();
        assert!(matches!(
            enumerate_channel(&base, &[0, 0], 0.1),
            Err(SimError::DuplicateQubit(0))
        ));
        assert!(matches!(
            enumerate_channel(&base, &[5], 0.1),
            Err(SimError::QubitOutOfRange { .. })
        ));
    }

    #[test]
    fn flipping_both_halves_of_a_pair_preserves_phi_plus() {
        let base = bell_pair_state(BellKind::PhiPlus);
        let branches = enumerate_channel(&base, &[0, 1], 0.3).unwrap();
        for (pattern, state) in &branches {
            let kind = super::super::classify_bell(state, 0, 1).unwrap();
            let expected = if pattern.flip_count() % 2 == 0 {
                BellKind::PhiPlus
            } else {
                BellKind::PsiPlus
            };
            assert_eq!(kind, expected, "pattern {:#b}", pattern.flips);
        }
    }
}
