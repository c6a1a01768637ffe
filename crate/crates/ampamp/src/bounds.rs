//! Numerical verification of robustness bounds for imperfectly known
//! success probability.
//!
//! The scenario: the success probability `a` is small and only approximately
//! known, the experimenter runs the iterate with equal phases (or any
//! slightly-off oracle phase) instead of the exactly matched pair, and wants
//! guarantees anyway. Each checker measures the true quantity through the
//! 2x2 dynamics and compares it against the claimed closed-form bound;
//! [`sweep`] does that over parameter grids and reports per-point rows.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{normalize_angle, AlgorithmModel, PhasePair};
use crate::phase::{rotation_angle_from_phase, solve_phi_good};
use crate::unitary::{build_q_matrix, SubspaceState};

/// Which robustness bound a report row refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCheck {
    /// Lower bound on the final overlap with the good state when both
    /// phases equal phi_zero: overlap >= 1 - a (2 + 4 pi^2 m).
    Overlap,
    /// Chain bounding the distance between the equal-phase iterate and the
    /// matched iterate, per step and after m steps.
    NormChain,
    /// Upper bound on the failure probability of the equal-phase run:
    /// p_bad <= 4 pi^3 a / vartheta + 44 a.
    Failure,
    /// Failure bound 4a + epsilon for a mismatched oracle phase within the
    /// tolerance window delta_max.
    PhaseTolerance,
}

impl BoundCheck {
    /// Stable lowercase token used in CSV output and CLI flags.
    pub fn token(&self) -> &'static str {
        match self {
            BoundCheck::Overlap => "overlap",
            BoundCheck::NormChain => "norm-chain",
            BoundCheck::Failure => "failure",
            BoundCheck::PhaseTolerance => "phase-tolerance",
        }
    }
}

impl fmt::Display for BoundCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for BoundCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "overlap" => Ok(BoundCheck::Overlap),
            "norm-chain" => Ok(BoundCheck::NormChain),
            "failure" => Ok(BoundCheck::Failure),
            "phase-tolerance" => Ok(BoundCheck::PhaseTolerance),
            other => Err(Error::InvalidParameter(format!(
                "unknown check '{other}'; expected overlap, norm-chain, failure or phase-tolerance"
            ))),
        }
    }
}

/// One measured-versus-claimed comparison at a single parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// Which bound was checked.
    pub check: BoundCheck,
    /// Success probability at this point.
    pub a: f64,
    /// Zero-state phase at this point.
    pub phi_zero: f64,
    /// Oracle phase the run actually used.
    pub phi_good_used: f64,
    /// The exactly matched oracle phase, for reference.
    pub phi_good_matched: f64,
    /// Step count the bound's recipe prescribes.
    pub m: u32,
    /// The measured quantity (overlap, failure probability, or norm).
    pub measured: f64,
    /// The claimed closed-form bound.
    pub bound: f64,
    /// Whether the measurement respects the bound.
    pub satisfied: bool,
    /// True when the bound claims nothing (negative overlap floor, or a
    /// probability ceiling above 1), so `satisfied` carries no information.
    pub vacuous: bool,
    /// False when the point sits outside the bound's stated hypotheses;
    /// the row is then reported but asserts nothing.
    pub applicable: bool,
}

impl BoundReport {
    /// Row status for summaries and CSV: not_applicable, violated, vacuous
    /// or satisfied, in that precedence order.
    pub fn status(&self) -> &'static str {
        if !self.applicable {
            "not_applicable"
        } else if !self.satisfied {
            "violated"
        } else if self.vacuous {
            "vacuous"
        } else {
            "satisfied"
        }
    }
}

/// Step count used by the small-`a` bounds: the integer nearest to
/// pi / (2 vartheta), i.e. ceil(pi / (2 vartheta) - 1/2), at least 1.
fn step_count(vartheta: f64) -> u32 {
    let r = PI / (2.0 * vartheta) - 0.5;
    let guard = 1e-12 * r.abs().max(1.0);
    ((r - guard).ceil().max(1.0)) as u32
}

fn matched_reference(phi: f64, model: &AlgorithmModel) -> f64 {
    // phi = pi pairs with pi; elsewhere the tangent solver applies
    PhasePair::matched(phi, model)
        .map(|p| p.phi_good())
        .unwrap_or(f64::NAN)
}

/// Runs m equal-phase steps from `A|0>` and returns the final plane state.
fn equal_phase_run(model: &AlgorithmModel, phi: f64, m: u32) -> SubspaceState {
    let pair = PhasePair::new(phi, phi);
    build_q_matrix(model, &pair)
        .pow(m)
        .apply(&SubspaceState::initial(model))
}

/// Checks the equal-phase overlap lower bound
/// `|<good|final>| >= 1 - a (2 + 4 pi^2 m)` for phi_zero in (0, pi].
///
/// The recipe fixes m = round(pi / (2 vartheta)); the bound is vacuous
/// (negative) unless `a m` is small. At phi_zero = pi the run is the plain
/// sign-flip iterate and the overlap equals sin((2m+1) theta) exactly.
pub fn check_overlap_bound(model: &AlgorithmModel, phi_zero: f64) -> Result<BoundReport> {
    let phi = normalize_angle(phi_zero);
    if phi.is_nan() || phi <= 0.0 {
        return Err(Error::ExcludedPhase(phi_zero));
    }
    let a = model.a();
    let vartheta = rotation_angle_from_phase(phi, model);
    let m = step_count(vartheta);
    let measured = equal_phase_run(model, phi, m).good.norm();
    let bound = 1.0 - a * (2.0 + 4.0 * PI * PI * f64::from(m));
    Ok(BoundReport {
        check: BoundCheck::Overlap,
        a,
        phi_zero: phi,
        phi_good_used: phi,
        phi_good_matched: matched_reference(phi, model),
        m,
        measured,
        bound,
        satisfied: measured >= bound,
        vacuous: bound < 0.0,
        applicable: true,
    })
}

/// Checks the equal-phase failure probability upper bound
/// `p_bad <= 4 pi^3 a / vartheta + 44 a` for theta <= phi_zero < pi.
///
/// Vacuous when the right side exceeds 1. The hypothesis theta <= phi_zero
/// keeps the mismatch delta below the per-step rotation.
pub fn check_failure_bound(model: &AlgorithmModel, phi_zero: f64) -> Result<BoundReport> {
    let phi = normalize_angle(phi_zero);
    if !(phi >= model.theta() && phi < PI) {
        return Err(Error::ExcludedPhase(phi_zero));
    }
    let a = model.a();
    let vartheta = rotation_angle_from_phase(phi, model);
    let m = step_count(vartheta);
    let measured = equal_phase_run(model, phi, m).bad.norm_sqr();
    let bound = 4.0 * PI.powi(3) * a / vartheta + 44.0 * a;
    Ok(BoundReport {
        check: BoundCheck::Failure,
        a,
        phi_zero: phi,
        phi_good_used: phi,
        phi_good_matched: matched_reference(phi, model),
        m,
        measured,
        bound,
        satisfied: measured <= bound,
        vacuous: bound > 1.0,
        applicable: true,
    })
}

/// Everything the operator-norm chain measures at one point.
///
/// The chain compares the equal-phase iterate Q' = Q(phi, phi) with the
/// matched iterate Q = Q(phi, phi_good_matched): first the phase mismatch
/// delta, then the single-step distance (which has the exact closed form
/// |1 - e^{i delta}|), then the m-step distance.
#[derive(Debug, Clone, PartialEq)]
pub struct NormChainReport {
    /// Success probability.
    pub a: f64,
    /// Zero-state phase.
    pub phi_zero: f64,
    /// Matched oracle phase.
    pub phi_good_matched: f64,
    /// |phi_zero - phi_good_matched|.
    pub delta: f64,
    /// Claimed mismatch cap 2 pi a.
    pub delta_bound: f64,
    /// Measured operator norm of Q' - Q.
    pub op_norm: f64,
    /// Closed form |1 - e^{i delta}| the single-step norm must equal.
    pub op_norm_identity: f64,
    /// |op_norm - op_norm_identity|.
    pub identity_error: f64,
    /// Stated single-step cap 4 pi^2 a.
    pub op_norm_bound: f64,
    /// Tighter single-step cap 2 pi a, reported alongside the stated one;
    /// the measured norm stays under this too at every grid point.
    pub op_norm_bound_tight: f64,
    /// Step count for the power comparison.
    pub m: u32,
    /// Measured operator norm of Q'^m - Q^m.
    pub power_norm: f64,
    /// Stated m-step cap 4 pi^2 a m.
    pub power_bound: f64,
    /// All three stated inequalities hold and the identity matches to 1e-12.
    pub satisfied: bool,
}

impl NormChainReport {
    /// Flattens the chain into a sweep row; `measured`/`bound` carry the
    /// m-step comparison, the most aggregate link of the chain.
    pub fn to_bound_report(&self) -> BoundReport {
        BoundReport {
            check: BoundCheck::NormChain,
            a: self.a,
            phi_zero: self.phi_zero,
            phi_good_used: self.phi_zero,
            phi_good_matched: self.phi_good_matched,
            m: self.m,
            measured: self.power_norm,
            bound: self.power_bound,
            satisfied: self.satisfied,
            vacuous: false,
            applicable: true,
        }
    }
}

/// Tolerance for the single-step norm identity.
const NORM_IDENTITY_TOL: f64 = 1e-12;

/// Measures the operator-norm chain at one point, phi_zero in (0, pi).
pub fn check_norm_chain(model: &AlgorithmModel, phi_zero: f64) -> Result<NormChainReport> {
    let phi = normalize_angle(phi_zero);
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::ExcludedPhase(phi_zero));
    }
    let a = model.a();
    let matched = solve_phi_good(phi, model)?;
    let delta = (phi - matched).abs();
    let delta_bound = 2.0 * PI * a;

    let q_equal = build_q_matrix(model, &PhasePair::new(phi, phi));
    let q_matched = build_q_matrix(model, &PhasePair::new(phi, matched));
    let op_norm = q_equal.operator_norm_diff(&q_matched);
    let op_norm_identity = 2.0 * (delta / 2.0).sin().abs(); // |1 - e^{i delta}|
    let identity_error = (op_norm - op_norm_identity).abs();
    let op_norm_bound = 4.0 * PI * PI * a;
    let op_norm_bound_tight = 2.0 * PI * a;

    let vartheta = rotation_angle_from_phase(phi, model);
    let m = step_count(vartheta);
    let power_norm = q_equal.pow(m).operator_norm_diff(&q_matched.pow(m));
    let power_bound = op_norm_bound * f64::from(m);

    let satisfied = delta <= delta_bound
        && identity_error <= NORM_IDENTITY_TOL
        && op_norm <= op_norm_bound
        && power_norm <= power_bound;

    Ok(NormChainReport {
        a,
        phi_zero: phi,
        phi_good_matched: matched,
        delta,
        delta_bound,
        op_norm,
        op_norm_identity,
        identity_error,
        op_norm_bound,
        op_norm_bound_tight,
        m,
        power_norm,
        power_bound,
        satisfied,
    })
}

/// Checks the mismatched-oracle-phase failure bound `p_bad <= 4a + epsilon`.
///
/// The bound only claims anything when the mismatch delta = |phi_good_used -
/// phi_good_matched| stays within the tolerance window
/// `delta_max = epsilon sqrt(3) / (2 pi^2 (sqrt(3) + pi)) * phi_zero * sqrt(a)`;
/// outside the window the row comes back `applicable = false` (the failure
/// probability is still measured and reported). Requires phi_zero in
/// (0, pi), |phi_good_used| < pi and epsilon > 0.
pub fn check_phase_tolerance(
    model: &AlgorithmModel,
    phi_zero: f64,
    phi_good_used: f64,
    epsilon: f64,
) -> Result<BoundReport> {
    let phi = normalize_angle(phi_zero);
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::ExcludedPhase(phi_zero));
    }
    let used = normalize_angle(phi_good_used);
    if used.is_nan() || used.abs() >= PI {
        return Err(Error::ExcludedPhase(phi_good_used));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let a = model.a();
    let matched = solve_phi_good(phi, model)?;
    let delta = (used - matched).abs();
    let delta_max =
        epsilon * 3.0f64.sqrt() / (2.0 * PI * PI * (3.0f64.sqrt() + PI)) * phi * a.sqrt();
    let applicable = delta <= delta_max;

    let vartheta = rotation_angle_from_phase(phi, model);
    let m = step_count(vartheta);
    let final_state = build_q_matrix(model, &PhasePair::new(phi, used))
        .pow(m)
        .apply(&SubspaceState::initial(model));
    let measured = final_state.bad.norm_sqr();
    let bound = 4.0 * a + epsilon;

    Ok(BoundReport {
        check: BoundCheck::PhaseTolerance,
        a,
        phi_zero: phi,
        phi_good_used: used,
        phi_good_matched: matched,
        m,
        measured,
        bound,
        satisfied: measured <= bound,
        vacuous: bound > 1.0,
        applicable,
    })
}

/// How a sweep chooses the oracle phase at each point (only the
/// phase-tolerance check uses it; the others fix their own phases).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhiGoodRule {
    /// Run with phi_good = phi_zero, the natural equal-phase choice.
    EqualToPhiZero,
    /// Run with the exactly matched phase (delta = 0, always applicable).
    Matched,
    /// Run with one fixed oracle phase everywhere.
    Fixed(f64),
}

/// A rectangular parameter grid for one check.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    /// Which bound to check at every point.
    pub check: BoundCheck,
    /// Success probabilities, outer loop.
    pub a_values: Vec<f64>,
    /// Zero-state phases, inner loop.
    pub phi_values: Vec<f64>,
    /// Oracle-phase rule for the phase-tolerance check.
    pub phi_good: PhiGoodRule,
    /// Epsilon for the phase-tolerance check.
    pub epsilon: f64,
}

/// The five default zero-state phases, spread over (0, pi).
fn default_phis() -> Vec<f64> {
    vec![
        PI / 6.0,
        PI / 4.0,
        PI / 2.0,
        2.0 * PI / 3.0,
        5.0 * PI / 6.0,
    ]
}

fn dyadic(exponents: impl Iterator<Item = i32>) -> Vec<f64> {
    exponents.map(|k| (2.0f64).powi(-k)).collect()
}

impl SweepGrid {
    /// The default grid for a check: a = 2^-1 .. 2^-10 against five phases.
    ///
    /// The phase-tolerance check instead defaults to the deep grid, because
    /// its applicability window needs genuinely small a (the equal-phase
    /// mismatch shrinks like a while the window shrinks like sqrt(a)).
    pub fn default_for(check: BoundCheck) -> Self {
        let a_values = match check {
            BoundCheck::PhaseTolerance => dyadic((8..=24).step_by(2)),
            _ => dyadic(1..=10),
        };
        Self {
            check,
            a_values,
            phi_values: default_phis(),
            phi_good: PhiGoodRule::EqualToPhiZero,
            epsilon: 0.1,
        }
    }

    /// Deeper grid, a = 2^-8 .. 2^-24 in factor-4 steps: small enough that
    /// the overlap and failure bounds stop being vacuous.
    pub fn deep(check: BoundCheck) -> Self {
        Self {
            check,
            a_values: dyadic((8..=24).step_by(2)),
            phi_values: default_phis(),
            phi_good: PhiGoodRule::EqualToPhiZero,
            epsilon: 0.1,
        }
    }
}

/// Counts of row statuses for one sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSummary {
    /// Total rows.
    pub rows: usize,
    /// Non-vacuous, applicable, bound held.
    pub satisfied: usize,
    /// Bound failed at an applicable point.
    pub violated: usize,
    /// Bound claimed nothing.
    pub vacuous: usize,
    /// Point outside the bound's hypotheses.
    pub not_applicable: usize,
}

/// Tallies row statuses.
pub fn summarize(rows: &[BoundReport]) -> SweepSummary {
    let mut s = SweepSummary {
        rows: rows.len(),
        satisfied: 0,
        violated: 0,
        vacuous: 0,
        not_applicable: 0,
    };
    for r in rows {
        match r.status() {
            "satisfied" => s.satisfied += 1,
            "violated" => s.violated += 1,
            "vacuous" => s.vacuous += 1,
            _ => s.not_applicable += 1,
        }
    }
    s
}

/// Runs one check over the whole grid, a-major then phi, one row per point.
///
/// Points that violate a check's hypotheses (for example theta > phi_zero
/// for the failure bound) become `applicable = false` rows with NaN
/// measurements rather than errors, so a single sweep can cover parameter
/// corners. Degenerate scalar parameters still error, as does an empty grid.
pub fn sweep(grid: &SweepGrid) -> Result<Vec<BoundReport>> {
    if grid.a_values.is_empty() || grid.phi_values.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut rows = Vec::with_capacity(grid.a_values.len() * grid.phi_values.len());
    for &a in &grid.a_values {
        let model = AlgorithmModel::from_success_probability(a)?;
        for &phi in &grid.phi_values {
            let row = match grid.check {
                BoundCheck::Overlap => check_overlap_bound(&model, phi),
                BoundCheck::Failure => check_failure_bound(&model, phi),
                BoundCheck::NormChain => check_norm_chain(&model, phi).map(|r| r.to_bound_report()),
                BoundCheck::PhaseTolerance => {
                    let used = match grid.phi_good {
                        PhiGoodRule::EqualToPhiZero => phi,
                        PhiGoodRule::Matched => solve_phi_good(phi, &model)?,
                        PhiGoodRule::Fixed(v) => v,
                    };
                    check_phase_tolerance(&model, phi, used, grid.epsilon)
                }
            };
            match row {
                Ok(r) => rows.push(r),
                Err(Error::ExcludedPhase(_)) => rows.push(BoundReport {
                    check: grid.check,
                    a,
                    phi_zero: normalize_angle(phi),
                    phi_good_used: f64::NAN,
                    phi_good_matched: f64::NAN,
                    m: 0,
                    measured: f64::NAN,
                    bound: f64::NAN,
                    satisfied: true,
                    vacuous: false,
                    applicable: false,
                }),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(a: f64) -> AlgorithmModel {
        AlgorithmModel::from_success_probability(a).unwrap()
    }

    #[test]
    fn overlap_at_sign_flip_phase_matches_the_closed_form() {
        // equal phases at pi are the plain iterate: overlap after m steps
        // is exactly sin((2m+1) theta)
        let m = model(0.01);
        let report = check_overlap_bound(&m, PI).unwrap();
        assert_eq!(report.m, 8);
        let closed = ((2.0 * f64::from(report.m) + 1.0) * m.theta()).sin();
        assert!((report.measured - closed).abs() < 1e-12);
        assert!(report.satisfied);
        // small a still leaves 4 pi^2 m large: the floor is negative here
        assert!(report.vacuous);
        assert!(report.bound < 0.0);
    }

    #[test]
    fn overlap_rejects_nonpositive_phases() {
        let m = model(0.1);
        assert!(matches!(
            check_overlap_bound(&m, 0.0),
            Err(Error::ExcludedPhase(_))
        ));
        assert!(matches!(
            check_overlap_bound(&m, -0.4),
            Err(Error::ExcludedPhase(_))
        ));
    }

    #[test]
    fn overlap_bound_is_real_and_holds_at_tiny_a() {
        let m = model((2.0f64).powi(-14));
        let report = check_overlap_bound(&m, PI / 2.0).unwrap();
        assert!(!report.vacuous, "bound = {}", report.bound);
        assert!(report.satisfied);
        assert!(report.measured >= report.bound);
    }

    #[test]
    fn failure_bound_example_point() {
        let m = model(1e-4);
        let report = check_failure_bound(&m, PI / 2.0).unwrap();
        assert!(!report.vacuous, "bound = {}", report.bound);
        assert!(report.satisfied);
        assert!(report.measured < 0.05, "p_bad = {}", report.measured);
        assert!(report.measured <= report.bound);
    }

    #[test]
    fn failure_bound_requires_theta_below_phi() {
        // a = 1/2 puts theta = pi/4 above phi = pi/6
        let m = model(0.5);
        assert!(matches!(
            check_failure_bound(&m, PI / 6.0),
            Err(Error::ExcludedPhase(_))
        ));
        // and phi = pi is excluded outright
        assert!(matches!(
            check_failure_bound(&m, PI),
            Err(Error::ExcludedPhase(_))
        ));
    }

    #[test]
    fn failure_bound_large_a_point_is_vacuous_but_clean() {
        let m = model(0.25);
        let report = check_failure_bound(&m, PI / 3.0).unwrap();
        assert!(report.vacuous);
        assert!(report.satisfied);
    }

    #[test]
    fn norm_chain_identity_and_caps() {
        for a in [0.25, 0.01, 1e-4] {
            let m = model(a);
            for phi in [PI / 6.0, PI / 2.0, 5.0 * PI / 6.0] {
                let r = check_norm_chain(&m, phi).unwrap();
                assert!(r.identity_error < 1e-12, "a = {a}, phi = {phi}");
                assert!(r.delta <= r.delta_bound);
                assert!(r.op_norm <= r.op_norm_bound);
                assert!(r.op_norm <= r.op_norm_bound_tight, "tight cap failed");
                assert!(r.power_norm <= r.power_bound);
                assert!(r.satisfied);
            }
        }
    }

    #[test]
    fn norm_chain_rejects_the_pole() {
        let m = model(0.1);
        assert!(check_norm_chain(&m, PI).is_err());
        assert!(check_norm_chain(&m, 0.0).is_err());
    }

    #[test]
    fn phase_tolerance_window_is_tight_at_moderate_a() {
        // equal phases at a = 1e-3 miss the matched phase by ~2a, but the
        // window is only ~0.018 eps phi sqrt(a): the point is out of scope
        let m = model(1e-3);
        let phi = PI / 2.0;
        let r = check_phase_tolerance(&m, phi, phi, 0.1).unwrap();
        assert!(!r.applicable);
        let delta = (r.phi_good_used - r.phi_good_matched).abs();
        let delta_max = 0.1 * 3.0f64.sqrt() / (2.0 * PI * PI * (3.0f64.sqrt() + PI))
            * phi
            * m.a().sqrt();
        assert!(delta > delta_max);
        assert_eq!(r.status(), "not_applicable");
    }

    #[test]
    fn phase_tolerance_applicable_at_tiny_a() {
        let m = model((2.0f64).powi(-20));
        let phi = PI / 2.0;
        let r = check_phase_tolerance(&m, phi, phi, 0.1).unwrap();
        assert!(r.applicable);
        assert!(r.satisfied);
        assert!(r.measured <= r.bound);
        assert_eq!(r.status(), "satisfied");
    }

    #[test]
    fn phase_tolerance_matched_phase_is_always_applicable() {
        let m = model(0.3);
        let matched = solve_phi_good(1.0, &m).unwrap();
        let r = check_phase_tolerance(&m, 1.0, matched, 0.05).unwrap();
        assert!(r.applicable);
        assert!((r.phi_good_used - r.phi_good_matched).abs() < 1e-15);
    }

    #[test]
    fn phase_tolerance_validation() {
        let m = model(0.1);
        assert!(check_phase_tolerance(&m, PI, 0.5, 0.1).is_err());
        assert!(check_phase_tolerance(&m, 1.0, PI, 0.1).is_err());
        assert!(check_phase_tolerance(&m, 1.0, 0.5, 0.0).is_err());
        assert!(check_phase_tolerance(&m, 1.0, 0.5, -0.1).is_err());
    }

    #[test]
    fn sweep_rejects_empty_grids() {
        let mut grid = SweepGrid::default_for(BoundCheck::Overlap);
        grid.a_values.clear();
        assert!(matches!(sweep(&grid), Err(Error::EmptyGrid)));
        let mut grid2 = SweepGrid::default_for(BoundCheck::Overlap);
        grid2.phi_values.clear();
        assert!(matches!(sweep(&grid2), Err(Error::EmptyGrid)));
    }

    #[test]
    fn default_sweep_shape_and_determinism() {
        let grid = SweepGrid::default_for(BoundCheck::Failure);
        let rows = sweep(&grid).unwrap();
        assert_eq!(rows.len(), 50); // 10 a-values x 5 phases
        let again = sweep(&grid).unwrap();
        // Debug formatting compares NaN rows as text, which == cannot
        assert_eq!(format!("{rows:?}"), format!("{again:?}"));
        let s = summarize(&rows);
        assert_eq!(
            s.rows,
            s.satisfied + s.violated + s.vacuous + s.not_applicable
        );
        assert_eq!(s.violated, 0);
        // theta > phi corners surface as not-applicable rows, not errors
        assert!(s.not_applicable > 0);
        assert!(rows.iter().all(|r| r.applicable || r.measured.is_nan()));
    }

    #[test]
    fn deep_sweep_has_real_coverage() {
        let rows = sweep(&SweepGrid::deep(BoundCheck::Overlap)).unwrap();
        let s = summarize(&rows);
        assert_eq!(s.rows, 45); // 9 a-values x 5 phases
        assert_eq!(s.violated, 0);
        assert!(s.satisfied >= 20, "only {} non-vacuous points", s.satisfied);
    }

    #[test]
    fn phase_tolerance_default_grid_has_applicable_points() {
        let rows = sweep(&SweepGrid::default_for(BoundCheck::PhaseTolerance)).unwrap();
        let s = summarize(&rows);
        assert_eq!(s.violated, 0);
        assert!(s.satisfied >= 10, "only {} applicable points", s.satisfied);
        assert!(s.not_applicable > 0, "window should exclude larger a");
    }

    #[test]
    fn matched_rule_turns_every_point_applicable() {
        let mut grid = SweepGrid::default_for(BoundCheck::PhaseTolerance);
        grid.phi_good = PhiGoodRule::Matched;
        let rows = sweep(&grid).unwrap();
        assert!(rows.iter().all(|r| r.applicable));
        assert!(rows.iter().all(|r| r.satisfied));
    }
}
