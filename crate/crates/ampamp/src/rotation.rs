//! Synthesizing an arbitrary plane rotation from repeated matched iterates.
//!
//! A matched iterate is a rotation by some vartheta conjugated by fixed
//! phases, so m applications give R(m vartheta) up to the same conjugation
//! and a global phase. Any target angle x splits into m equal steps of
//! x/m once m is large enough for x/m to be a reachable per-step angle.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{AlgorithmModel, PhasePair};
use crate::phase::{is_phase_matched, phase_from_rotation_angle, rotation_angle_from_phase};
use crate::unitary::{build_q_matrix, decompose_equal_diagonal, SubspaceState, Unitary2};

/// Target angles below this are served by the empty plan.
const ZERO_TARGET_TOL: f64 = 1e-12;

/// Relative slack when checking whether the target is an exact multiple of
/// the full step 2 theta.
const EXACT_MULTIPLE_TOL: f64 = 1e-12;

/// Tolerance for plan/model consistency checks on application.
const PLAN_CONSISTENCY_TOL: f64 = 1e-9;

/// A recipe for effecting the plane rotation R(target_x).
///
/// The recipe applies the matched iterate `m` times, conjugates by
/// diag(1, e^{iu}) and strips the accumulated global phase e^{i m v};
/// see [`effective_operator`]. Built by [`plan_rotation`], consumed by
/// [`apply_rotation_plan`].
#[derive(Debug, Clone, PartialEq)]
pub struct RotationPlan {
    target_x: f64,
    m: u32,
    vartheta: f64,
    phases: PhasePair,
    u: f64,
    v: f64,
    grover_shortcut: bool,
}

impl RotationPlan {
    /// The rotation angle the plan realizes.
    pub fn target_x(&self) -> f64 {
        self.target_x
    }

    /// Number of iterate applications.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Rotation angle per application.
    pub fn vartheta(&self) -> f64 {
        self.vartheta
    }

    /// The matched phase pair the iterate uses.
    pub fn phases(&self) -> &PhasePair {
        &self.phases
    }

    /// Relative phase conjugating the rotation.
    pub fn u(&self) -> f64 {
        self.u
    }

    /// Global phase accrued per application.
    pub fn v(&self) -> f64 {
        self.v
    }

    /// True when the target was an exact multiple of the full step 2 theta
    /// and the plan uses plain sign-flip phases with no correction at all.
    pub fn grover_shortcut(&self) -> bool {
        self.grover_shortcut
    }
}

/// Chooses a step count and matched phases so that `m` equal steps sum to
/// the target angle `x`, for x in [0, 2 pi).
///
/// When x is an integer multiple of the full step 2 theta the sign-flip
/// iterate already lands exactly and the plan records that shortcut.
/// Otherwise the step count starts at the smallest integer strictly above
/// x / (2 theta) and, for strong couplings (a > 1/2), grows further until
/// the per-step angle x/m is reachable, i.e. x/m <= pi/2 with
/// sin(x/m) <= sin(2 theta).
pub fn plan_rotation(x: f64, model: &AlgorithmModel) -> Result<RotationPlan> {
    if !(0.0..2.0 * PI).contains(&x) {
        return Err(Error::InvalidParameter(format!(
            "rotation target {x} is outside [0, 2 pi)"
        )));
    }
    if x < ZERO_TARGET_TOL {
        return Ok(RotationPlan {
            target_x: x,
            m: 0,
            vartheta: 0.0,
            phases: PhasePair::grover(),
            u: 0.0,
            v: 0.0,
            grover_shortcut: false,
        });
    }

    let two_theta = 2.0 * model.theta();
    let ratio = x / two_theta;
    let k = ratio.round();
    if k >= 1.0 && (ratio - k).abs() <= EXACT_MULTIPLE_TOL * ratio.max(1.0) {
        return Ok(RotationPlan {
            target_x: x,
            m: k as u32,
            vartheta: two_theta,
            phases: PhasePair::grover(),
            u: 0.0,
            v: 0.0,
            grover_shortcut: true,
        });
    }

    let mut m = ratio.floor() as u32 + 1;
    let limit = model.sin_two_theta();
    // reachability: the decomposed per-step angle lives in [0, pi/2] and its
    // sine is capped by sin(2 theta); both can fail only for a > 1/2
    while {
        let step = x / f64::from(m);
        step > PI / 2.0 || step.sin() > limit
    } {
        m += 1;
    }

    let vartheta = x / f64::from(m);
    let phi_zero = phase_from_rotation_angle(vartheta, model)?;
    let phases = PhasePair::matched(phi_zero, model)?;
    let pr = decompose_equal_diagonal(&build_q_matrix(model, &phases))?;
    Ok(RotationPlan {
        target_x: x,
        m,
        vartheta,
        phases,
        u: pr.u,
        v: pr.v,
        grover_shortcut: false,
    })
}

/// The single 2x2 matrix the plan effects:
/// `e^{-i m v} diag(1, e^{-iu}) Q^m diag(1, e^{iu})`.
///
/// Equals R(target_x) up to numerical error whenever the plan belongs to
/// the model (the zero plan yields the identity).
pub fn effective_operator(plan: &RotationPlan, model: &AlgorithmModel) -> Unitary2 {
    if plan.m == 0 {
        return Unitary2::identity();
    }
    let q_m = build_q_matrix(model, &plan.phases).pow(plan.m);
    let strip = Complex64::from_polar(1.0, -f64::from(plan.m) * plan.v);
    Unitary2::good_phase(-plan.u)
        .mul(&q_m)
        .mul(&Unitary2::good_phase(plan.u))
        .scaled(strip)
}

/// Runs the plan on a plane state after checking it belongs to this model.
///
/// A plan built for one success probability silently rotates by the wrong
/// angle under another, so mismatches are an error, detected through the
/// diagonal gap and the per-step angle.
pub fn apply_rotation_plan(
    plan: &RotationPlan,
    model: &AlgorithmModel,
    state: &SubspaceState,
) -> Result<SubspaceState> {
    if plan.m > 0 {
        if plan.grover_shortcut {
            let achieved = f64::from(plan.m) * 2.0 * model.theta();
            if (achieved - plan.target_x).abs() > PLAN_CONSISTENCY_TOL * plan.target_x.max(1.0) {
                return Err(Error::MismatchedModel);
            }
        } else {
            if !is_phase_matched(&plan.phases, model) {
                return Err(Error::MismatchedModel);
            }
            let vt = rotation_angle_from_phase(plan.phases.phi_zero(), model);
            if (vt - plan.vartheta).abs() > PLAN_CONSISTENCY_TOL {
                return Err(Error::MismatchedModel);
            }
        }
    }
    Ok(effective_operator(plan, model).apply(state))
}
