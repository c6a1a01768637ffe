//! The phase-matching condition: choosing the oracle phase so the iterate
//! becomes a phased plane rotation, and moving between phases and per-step
//! rotation angles.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{normalize_angle, AlgorithmModel, PhasePair};
use crate::unitary::{build_q_matrix, diagonal_gap};

/// Distance from the excluded phase below which the tangent solver refuses.
const EXCLUDED_PHASE_TOL: f64 = 1e-12;

/// Diagonal gap below which a pair counts as matched.
const MATCHED_GAP_TOL: f64 = 1e-10;

/// Good-state phase that equalizes the iterate's diagonal for a given
/// zero-state phase: tan(phi_good/2) = tan(phi_zero/2) (1 - 2a).
///
/// Solved on the principal branch, so the result lies in (-pi, pi). The
/// zero-state phase pi is excluded here because the tangent blows up; the
/// pair (pi, pi) is still matched and is handled by [`PhasePair::matched`]
/// and [`is_phase_matched`].
pub fn solve_phi_good(phi_zero: f64, model: &AlgorithmModel) -> Result<f64> {
    let phi = normalize_angle(phi_zero);
    if (phi - PI).abs() < EXCLUDED_PHASE_TOL || (phi + PI).abs() < EXCLUDED_PHASE_TOL {
        return Err(Error::ExcludedPhase(phi_zero));
    }
    Ok(2.0 * ((phi / 2.0).tan() * (1.0 - 2.0 * model.a())).atan())
}

/// Success probability for which a given pair of phases is matched:
/// a = (1 - tan(phi_good/2) / tan(phi_zero/2)) / 2.
///
/// Inverse of [`solve_phi_good`] in the `a` direction. Zero-state phases 0
/// and pi are excluded (tangent zero or pole). The returned value solves the
/// matching equation but only defines a model when it lands in (0, 1); it
/// falls outside for pairs no success probability can match.
pub fn solve_success_prob(phases: &PhasePair) -> Result<f64> {
    let phi = phases.phi_zero();
    if phi.abs() < EXCLUDED_PHASE_TOL || (phi - PI).abs() < EXCLUDED_PHASE_TOL {
        return Err(Error::ExcludedPhase(phi));
    }
    Ok((1.0 - (phases.phi_good() / 2.0).tan() / (phi / 2.0).tan()) / 2.0)
}

/// Per-step rotation angle of the matched iterate:
/// vartheta = asin(|sin(phi_zero/2)| sin(2 theta)), in [0, pi/2].
pub fn rotation_angle_from_phase(phi_zero: f64, model: &AlgorithmModel) -> f64 {
    ((phi_zero / 2.0).sin() * model.sin_two_theta()).abs().asin()
}

/// Zero-state phase in [0, pi] whose matched iterate rotates by `vartheta`
/// per step: inverse of [`rotation_angle_from_phase`].
///
/// Errors when |sin(vartheta)| exceeds sin(2 theta), the largest per-step
/// rotation this success probability can produce.
pub fn phase_from_rotation_angle(vartheta: f64, model: &AlgorithmModel) -> Result<f64> {
    let s = vartheta.sin().abs();
    let limit = model.sin_two_theta();
    if s > limit * (1.0 + 1e-12) {
        return Err(Error::UnreachableRotation { vartheta, limit });
    }
    Ok(2.0 * (s / limit).min(1.0).asin())
}

/// True when the pair turns the iterate into a phased plane rotation,
/// measured directly from the diagonal gap of the built matrix.
///
/// Unlike the tangent solver this has no excluded phase, so it recognizes
/// (pi, pi) and every solver output alike.
pub fn is_phase_matched(phases: &PhasePair, model: &AlgorithmModel) -> bool {
    diagonal_gap(&build_q_matrix(model, phases)) < MATCHED_GAP_TOL
}

impl PhasePair {
    /// A zero-state phase together with its diagonal-equalizing partner.
    ///
    /// Delegates to [`solve_phi_good`] away from pi and returns the
    /// sign-flip pair (pi, pi) at pi, so every phi_zero except 0 mod 2 pi
    /// yields a usable matched pair.
    pub fn matched(phi_zero: f64, model: &AlgorithmModel) -> Result<Self> {
        let phi = normalize_angle(phi_zero);
        if (phi - PI).abs() < EXCLUDED_PHASE_TOL {
            return Ok(Self::grover());
        }
        Ok(Self::new(phi, solve_phi_good(phi, model)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_probability_needs_no_oracle_phase() {
        // at a = 1/2 the tangent factor vanishes for every phi_zero
        let model = AlgorithmModel::from_success_probability(0.5).unwrap();
        for phi in [0.3, 1.0, 2.5, -1.7] {
            assert_eq!(solve_phi_good(phi, &model).unwrap(), 0.0);
        }
    }

    #[test]
    fn solver_refuses_the_pole() {
        let model = AlgorithmModel::from_success_probability(0.25).unwrap();
        assert!(matches!(
            solve_phi_good(PI, &model),
            Err(Error::ExcludedPhase(_))
        ));
        assert!(matches!(
            solve_phi_good(-PI, &model),
            Err(Error::ExcludedPhase(_))
        ));
        // nearby values still work
        assert!(solve_phi_good(PI - 1e-6, &model).is_ok());
    }

    #[test]
    fn solved_pairs_equalize_the_diagonal() {
        for a in [0.03, 0.25, 0.5, 0.77] {
            let model = AlgorithmModel::from_success_probability(a).unwrap();
            for phi in [0.2, 1.0, PI / 2.0, 2.8, -2.2] {
                let pair = PhasePair::matched(phi, &model).unwrap();
                let gap = diagonal_gap(&build_q_matrix(&model, &pair));
                assert!(gap < 1e-14, "a = {a}, phi = {phi}, gap = {gap:e}");
                assert!(is_phase_matched(&pair, &model));
            }
        }
    }

    #[test]
    fn perturbed_pairs_are_not_matched() {
        let model = AlgorithmModel::from_success_probability(0.25).unwrap();
        let pair = PhasePair::matched(1.0, &model).unwrap();
        let off = PhasePair::new(pair.phi_zero(), pair.phi_good() + 1e-3);
        assert!(!is_phase_matched(&off, &model));
    }

    #[test]
    fn matched_pair_at_pi_is_the_sign_flip_pair() {
        let model = AlgorithmModel::from_success_probability(0.1).unwrap();
        let pair = PhasePair::matched(PI, &model).unwrap();
        assert_eq!(pair, PhasePair::grover());
        assert!(is_phase_matched(&pair, &model));
    }

    #[test]
    fn success_probability_round_trip() {
        for a in [0.07, 0.25, 0.6, 0.93] {
            let model = AlgorithmModel::from_success_probability(a).unwrap();
            for phi in [0.4, 1.3, 2.9] {
                let pair = PhasePair::matched(phi, &model).unwrap();
                let back = solve_success_prob(&pair).unwrap();
                assert!((back - a).abs() < 1e-12, "a = {a}, phi = {phi}");
            }
        }
    }

    #[test]
    fn success_probability_solver_excludes_degenerate_phases() {
        let pair = PhasePair::new(0.0, 0.3);
        assert!(matches!(
            solve_success_prob(&pair),
            Err(Error::ExcludedPhase(_))
        ));
        let pole = PhasePair::new(PI, 0.3);
        assert!(matches!(
            solve_success_prob(&pole),
            Err(Error::ExcludedPhase(_))
        ));
    }

    #[test]
    fn rotation_angle_round_trip() {
        for a in [0.1, 0.25, 0.49] {
            let model = AlgorithmModel::from_success_probability(a).unwrap();
            for phi in [0.3, 1.5, 2.7, PI] {
                let vt = rotation_angle_from_phase(phi, &model);
                let back = phase_from_rotation_angle(vt, &model).unwrap();
                assert!((back - phi).abs() < 1e-9, "a = {a}, phi = {phi}");
            }
        }
    }

    #[test]
    fn rotation_angle_caps_at_the_coupling_strength() {
        let model = AlgorithmModel::from_success_probability(0.25).unwrap();
        // sin(2 theta) = sqrt(3)/2; asking for more must fail
        let too_big = (3.0f64).sqrt() / 2.0 + 1e-6;
        assert!(matches!(
            phase_from_rotation_angle(too_big.asin(), &model),
            Err(Error::UnreachableRotation { .. })
        ));
        // the cap itself maps to phi = pi
        let at_cap = phase_from_rotation_angle(model.sin_two_theta().asin(), &model).unwrap();
        assert!((at_cap - PI).abs() < 1e-6);
    }

    #[test]
    fn sign_flip_phase_gives_full_step() {
        // phi_zero = pi rotates by 2 theta per step, the classic value
        let model = AlgorithmModel::from_success_probability(0.25).unwrap();
        let vt = rotation_angle_from_phase(PI, &model);
        assert!((vt - 2.0 * model.theta()).abs() < 1e-15);
    }
}
