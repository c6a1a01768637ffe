//! Amplitude amplification with independently chosen phases.
//!
//! The amplification iterate studied here is `Q = -A S_0(phi) A^-1 S_chi(varphi)`:
//! `S_chi` multiplies marked (good) basis states by `e^{i varphi}`, `S_0`
//! multiplies the all-zeros state by `e^{i phi}`, and `A` is the state
//! preparation operator. `Q` preserves the plane spanned by the good and bad
//! components of `A|0>`, so most questions reduce to a 2x2 unitary.
//!
//! The crate covers five things:
//!
//! * the closed-form 2x2 iterate matrix and its diagonal structure
//!   ([`build_q_matrix`], [`decompose_equal_diagonal`]);
//! * solving the phase-matching condition that turns the iterate into a
//!   phased plane rotation ([`solve_phi_good`] and friends in [`phase`]);
//! * synthesizing an arbitrary plane rotation from repeated iterates
//!   ([`plan_rotation`]);
//! * scheduling search that succeeds with certainty ([`schedule_exact`],
//!   including a full three-register statevector run);
//! * numerically verifying robustness bounds for imperfectly known
//!   success probability ([`bounds`]).
//!
//! A small dense statevector simulator ([`simulator`]) cross-checks the 2x2
//! closed forms against the full-register dynamics.

pub mod bounds;
pub mod error;
pub mod exact;
pub mod model;
pub mod phase;
pub mod rotation;
pub mod simulator;
pub mod unitary;

pub use bounds::{
    check_failure_bound, check_norm_chain, check_overlap_bound, check_phase_tolerance, summarize,
    sweep, BoundCheck, BoundReport, NormChainReport, PhiGoodRule, SweepGrid, SweepSummary,
};
pub use error::{Error, Result};
pub use exact::{
    prepare_init_subspace, prepare_init_uncorrected, run_exact_registers, run_exact_subspace,
    run_exact_subspace_uncorrected, schedule_exact, ExactSchedule, RegisterOutcome,
};
pub use model::{normalize_angle, AlgorithmModel, PhasePair};
pub use phase::{
    is_phase_matched, phase_from_rotation_angle, rotation_angle_from_phase, solve_phi_good,
    solve_success_prob,
};
pub use rotation::{apply_rotation_plan, effective_operator, plan_rotation, RotationPlan};
pub use simulator::{
    apply_oracle_phase, apply_q, apply_zero_phase, restricted_matrix, Algorithm, RestrictedQ,
    SimConfig, StateVector,
};
pub use unitary::{
    build_q_matrix, decompose_equal_diagonal, diagonal_gap, PhasedRotation, SubspaceState,
    Unitary2,
};

/// Tolerance for identities that cost one or two floating-point operations.
pub const TOL_ALGEBRAIC: f64 = 1e-12;

/// Tolerance for multi-step pipelines: matrix powers, conjugations, simulator runs.
pub const TOL_PIPELINE: f64 = 1e-10;

/// Tolerance for inverse-trigonometric round trips.
pub const TOL_ROUNDTRIP: f64 = 1e-9;
