//! Analysis toolkit for long-range entanglement distribution over repeater
//! networks.
//!
//! The crate has five layers:
//!
//! * [`analytic`] — closed-form fidelity recursions, iteration bounds, and
//!   memory/operation cost formulas for two noise-suppression schemes:
//!   repeated two-pair purification and concatenated three-qubit repetition
//!   coding.
//! * [`statevec`] — an exact state-vector simulator for the few-qubit
//!   circuits behind those formulas. Every probability it reports comes from
//!   exhaustive branch enumeration, never sampling, so the simulator serves
//!   as an independent oracle for the analytic layer.
//! * [`network`] — repeater-graph modelling: a text format with validation,
//!   deterministic shortest-path routing between all terminal pairs,
//!   congestion (induced capacity) measures, a randomized-restart heuristic
//!   and exhaustive optimizer for capacity minimization, and entanglement
//!   swapping schedules.
//! * [`gridsim`] — a seeded Monte Carlo of traffic on a sparse k×k repeater
//!   grid that ties routing congestion to the per-repeater resource formulas.
//! * [`verify`] — the oracle-equivalence suite that replays the closed-form
//!   expressions against the circuit simulator on a fixed probability grid.

pub mod analytic;
pub mod gridsim;
pub mod network;
pub mod statevec;
pub mod verify;

pub use analytic::{
    AnalyticError, BellMixture, EccBellFidelity, Fidelity, FidelityTrajectory, ResourceProfile,
    Scheme,
};
pub use gridsim::{GridError, GridRunReport, GridScenario, GridSummary, ScenarioRunner};
pub use network::{
    BruteForceLimits, ConstraintViolation, NetworkError, NetworkGraph, PathSet, Role, SwapProtocol,
    SwapSchedule, SwapStep, ValidationReport,
};
pub use statevec::{BellKind, ErrorPattern, ExperimentResult, Gate, PureState, SimError};
pub use verify::{CheckOutcome, FormulaSet};
