//! Scheduling search that succeeds with certainty after a fixed number of
//! iterate applications.
//!
//! A matched iterate rotates the plane by a tunable angle vartheta. Pick the
//! smallest m with m vartheta >= pi/2 - theta, back the starting state off
//! to theta_init = pi/2 - m vartheta, and m steps land exactly on the good
//! axis. The starting state costs one extra register and a conditional swap
//! to prepare, which [`run_exact_registers`] simulates in full.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{normalize_angle, AlgorithmModel, PhasePair};
use crate::phase::{is_phase_matched, rotation_angle_from_phase};
use crate::simulator::{apply_q_buf, plane_basis, SimConfig};
use crate::unitary::{build_q_matrix, decompose_equal_diagonal, SubspaceState};

/// Zero-state phases this close to 0 are rejected as trivial.
const TRIVIAL_PHASE_TOL: f64 = 1e-12;

/// Tolerance for schedule/model consistency checks.
const SCHEDULE_CONSISTENCY_TOL: f64 = 1e-9;

/// Register runs refuse wider registers than this (joint space is 2^(2n+1)).
pub const REGISTER_QUBIT_LIMIT: u32 = 10;

/// Register runs refuse schedules longer than this.
pub const REGISTER_STEP_LIMIT: u32 = 1_000_000;

/// Reduced-state purity is only evaluated up to this register width; above
/// it the O(8^n) contraction dominates everything else.
const PURITY_QUBIT_LIMIT: u32 = 8;

/// A full recipe for certain search at a chosen zero-state phase.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSchedule {
    phases: PhasePair,
    vartheta: f64,
    m: u32,
    theta_init: f64,
    u: f64,
    v: f64,
}

impl ExactSchedule {
    /// The matched phase pair driving every step.
    pub fn phases(&self) -> &PhasePair {
        &self.phases
    }

    /// Rotation angle per step.
    pub fn vartheta(&self) -> f64 {
        self.vartheta
    }

    /// Number of iterate applications.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Plane angle of the starting state, in (-theta, theta].
    pub fn theta_init(&self) -> f64 {
        self.theta_init
    }

    /// Relative phase of the iterate's rotation form.
    pub fn u(&self) -> f64 {
        self.u
    }

    /// Global phase of the iterate's rotation form.
    pub fn v(&self) -> f64 {
        self.v
    }
}

fn ceil_guarded(r: f64) -> u32 {
    // absolute+relative slack so exact integers do not round up a full step
    let guard = 1e-12 * r.abs().max(1.0);
    (r - guard).ceil().max(0.0) as u32
}

/// Picks the step count and starting angle that make the final good
/// probability exactly 1 for this zero-state phase.
///
/// The phase 0 (mod 2 pi) is rejected: it rotates by nothing. Everything
/// else works, including phases where a single unmatched iterate could
/// never reach certainty.
pub fn schedule_exact(phi_zero: f64, model: &AlgorithmModel) -> Result<ExactSchedule> {
    let phi = normalize_angle(phi_zero);
    if phi.abs() < TRIVIAL_PHASE_TOL {
        return Err(Error::TrivialAngles);
    }
    let phases = PhasePair::matched(phi, model)?;
    let vartheta = rotation_angle_from_phase(phi, model);
    // vartheta > 0 because phi != 0 and 0 < a < 1
    let m = ceil_guarded((PI / 2.0 - model.theta()) / vartheta).max(1);
    let theta_init = PI / 2.0 - f64::from(m) * vartheta;
    let pr = decompose_equal_diagonal(&build_q_matrix(model, &phases))?;
    Ok(ExactSchedule {
        phases,
        vartheta,
        m,
        theta_init,
        u: pr.u,
        v: pr.v,
    })
}

/// The starting plane state of the schedule, phase correction included:
/// the good amplitude is sin(theta_init), the bad amplitude carries
/// e^{-iu} cos(theta_init) to cancel the conjugating phase of the steps.
pub fn prepare_init_subspace(schedule: &ExactSchedule) -> SubspaceState {
    SubspaceState::new(
        Complex64::new(schedule.theta_init.sin(), 0.0),
        Complex64::from_polar(schedule.theta_init.cos(), -schedule.u),
    )
}

/// The same starting angle without the phase correction, for measuring how
/// much the correction buys.
pub fn prepare_init_uncorrected(schedule: &ExactSchedule) -> SubspaceState {
    SubspaceState::new(
        Complex64::new(schedule.theta_init.sin(), 0.0),
        Complex64::new(schedule.theta_init.cos(), 0.0),
    )
}

/// Final good probability of the schedule in the 2x2 model; 1 up to
/// roundoff by construction.
pub fn run_exact_subspace(schedule: &ExactSchedule, model: &AlgorithmModel) -> f64 {
    let q_m = build_q_matrix(model, &schedule.phases).pow(schedule.m);
    q_m.apply(&prepare_init_subspace(schedule)).p_good()
}

/// Final good probability when the starting state skips the phase
/// correction; strictly below 1 away from the sign-flip phases.
pub fn run_exact_subspace_uncorrected(schedule: &ExactSchedule, model: &AlgorithmModel) -> f64 {
    let q_m = build_q_matrix(model, &schedule.phases).pow(schedule.m);
    q_m.apply(&prepare_init_uncorrected(schedule)).p_good()
}

/// What the full three-register run measured.
#[derive(Debug, Clone, PartialEq)]
pub struct RegisterOutcome {
    /// Probability that the working register holds a marked state at the end.
    pub p_good: f64,
    /// Purity of the working register's reduced density matrix; 1 means the
    /// register disentangled from the rest. `None` above 8 qubits, where the
    /// contraction would dominate the run.
    pub purity: Option<f64>,
    /// Largest deviation of the joint norm from 1 seen during the run.
    pub norm_drift: f64,
}

/// Runs the schedule on the full three-register construction.
///
/// The joint space is (working register) x (holding register) x (flag
/// qubit). The start superposes the corrected plane state against a
/// stashed good state, weighted so the working-register marginal is
/// preparable; the iterate acts on the working register alone; a final
/// swap conditioned on the flag merges the stash back. The good
/// probability of the working register comes out 1 to roundoff, and the
/// register disentangles (purity 1).
pub fn run_exact_registers(
    config: &SimConfig,
    schedule: &ExactSchedule,
) -> Result<RegisterOutcome> {
    if config.n() > REGISTER_QUBIT_LIMIT {
        return Err(Error::DimensionLimit {
            n: config.n(),
            max: REGISTER_QUBIT_LIMIT,
        });
    }
    if schedule.m > REGISTER_STEP_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "schedule needs {} steps; register runs cap at {}",
            schedule.m, REGISTER_STEP_LIMIT
        )));
    }
    let model = config.model()?;
    if !is_phase_matched(&schedule.phases, &model) {
        return Err(Error::MismatchedModel);
    }
    let vt = rotation_angle_from_phase(schedule.phases.phi_zero(), &model);
    if (vt - schedule.vartheta).abs() > SCHEDULE_CONSISTENCY_TOL {
        return Err(Error::MismatchedModel);
    }

    let dim = config.dim();
    let (bad, good) = plane_basis(config)?;

    // working-register start: the corrected plane state at theta_init
    let sin_i = schedule.theta_init.sin();
    let cos_i = schedule.theta_init.cos();
    let bad_phase = Complex64::from_polar(1.0, -schedule.u);
    let mut init = vec![Complex64::new(0.0, 0.0); dim];
    for i in 0..dim {
        init[i] = good[i] * sin_i + bad[i] * bad_phase * cos_i;
    }

    // |theta_init| <= theta, so cos(theta)/cos(theta_init) <= 1
    let alpha = model.theta().cos() / cos_i;
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();

    let idx = |i1: usize, i2: usize, i3: usize| (i1 * dim + i2) * 2 + i3;
    let mut joint = vec![Complex64::new(0.0, 0.0); dim * dim * 2];
    for i1 in 0..dim {
        joint[idx(i1, 0, 0)] = init[i1] * alpha;
    }
    for i2 in 0..dim {
        joint[idx(0, i2, 1)] += good[i2] * beta;
    }

    let norm_of = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut norm_drift = (norm_of(&joint) - 1.0).abs();

    // iterate on the working register: gather a strided slice per (i2, i3)
    let mut slice = vec![Complex64::new(0.0, 0.0); dim];
    for _ in 0..schedule.m {
        for i2 in 0..dim {
            for i3 in 0..2 {
                for i1 in 0..dim {
                    slice[i1] = joint[idx(i1, i2, i3)];
                }
                apply_q_buf(&mut slice, config, &schedule.phases);
                for i1 in 0..dim {
                    joint[idx(i1, i2, i3)] = slice[i1];
                }
            }
        }
        norm_drift = norm_drift.max((norm_of(&joint) - 1.0).abs());
    }

    // swap working and holding registers where the flag is set
    for i1 in 0..dim {
        for i2 in (i1 + 1)..dim {
            joint.swap(idx(i1, i2, 1), idx(i2, i1, 1));
        }
    }
    norm_drift = norm_drift.max((norm_of(&joint) - 1.0).abs());

    let mut p_good = 0.0;
    for &i1 in config.marked() {
        for i2 in 0..dim {
            for i3 in 0..2 {
                p_good += joint[idx(i1, i2, i3)].norm_sqr();
            }
        }
    }

    let purity = (config.n() <= PURITY_QUBIT_LIMIT).then(|| {
        // tr(rho^2) for rho = partial trace over holding register and flag
        let mut total = 0.0;
        for i1 in 0..dim {
            for j1 in 0..dim {
                let mut entry = Complex64::new(0.0, 0.0);
                for i2 in 0..dim {
                    for i3 in 0..2 {
                        entry += joint[idx(i1, i2, i3)] * joint[idx(j1, i2, i3)].conj();
                    }
                }
                total += entry.norm_sqr();
            }
        }
        total
    });

    Ok(RegisterOutcome {
        p_good,
        purity,
        norm_drift,
    })
}
