//! Scalar description of an amplification problem: one success probability
//! and one pair of phases.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Wraps an angle to its principal value in (-pi, pi].
pub fn normalize_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Success profile of the preparation operator `A`.
///
/// Stores the probability `a` that measuring `A|0>` yields a marked state,
/// together with the angle `theta = asin(sqrt(a))` of `A|0>` against the
/// bad axis of the invariant plane. Constructors reject degenerate values,
/// so every instance owns a genuine two-dimensional plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmModel {
    a: f64,
    theta: f64,
}

impl AlgorithmModel {
    /// Builds the model from the one-shot success probability, 0 < a < 1.
    pub fn from_success_probability(a: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::DegenerateSubspace(a));
        }
        Ok(Self {
            a,
            theta: a.sqrt().asin(),
        })
    }

    /// Builds the model from the plane angle theta, 0 < theta < pi/2.
    pub fn from_theta(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < PI / 2.0) {
            return Err(Error::DegenerateSubspace(theta.sin() * theta.sin()));
        }
        let s = theta.sin();
        Ok(Self { a: s * s, theta })
    }

    /// One-shot success probability.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Angle of `A|0>` from the bad axis, in (0, pi/2).
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// sin(2 theta) = 2 sqrt(a (1-a)), the good/bad coupling strength.
    pub fn sin_two_theta(&self) -> f64 {
        (2.0 * self.theta).sin()
    }
}

/// The two freely choosable phases of one amplification iterate.
///
/// `phi_zero` multiplies the all-zeros state inside `A S_0 A^-1`;
/// `phi_good` multiplies every marked basis state in the oracle `S_chi`.
/// Both are stored as principal values in (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePair {
    phi_zero: f64,
    phi_good: f64,
}

impl PhasePair {
    /// Stores the pair, normalizing each phase to (-pi, pi].
    pub fn new(phi_zero: f64, phi_good: f64) -> Self {
        Self {
            phi_zero: normalize_angle(phi_zero),
            phi_good: normalize_angle(phi_good),
        }
    }

    /// The classic sign-flip iterate: both phases equal to pi.
    pub fn grover() -> Self {
        Self {
            phi_zero: PI,
            phi_good: PI,
        }
    }

    /// Phase applied to the all-zeros state.
    pub fn phi_zero(&self) -> f64 {
        self.phi_zero
    }

    /// Phase applied to marked states.
    pub fn phi_good(&self) -> f64 {
        self.phi_good
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_angle_principal_interval() {
        assert_eq!(normalize_angle(0.0), 0.0);
        assert_eq!(normalize_angle(PI), PI);
        // -pi maps to the +pi endpoint
        assert_eq!(normalize_angle(-PI), PI);
        assert!((normalize_angle(3.0 * PI) - PI).abs() < 1e-15);
        assert!((normalize_angle(-0.5) + 0.5).abs() < 1e-15);
        assert!((normalize_angle(2.0 * PI + 0.25) - 0.25).abs() < 1e-15);
        let w = normalize_angle(-7.5 * PI);
        assert!(w > -PI && w <= PI);
        assert!((w - 0.5 * PI).abs() < 1e-14);
    }

    #[test]
    fn model_rejects_degenerate_probabilities() {
        for bad in [0.0, 1.0, -0.25, 1.5, f64::NAN] {
            assert!(matches!(
                AlgorithmModel::from_success_probability(bad),
                Err(Error::DegenerateSubspace(_))
            ));
        }
    }

    #[test]
    fn model_round_trips_theta_and_a() {
        let m = AlgorithmModel::from_success_probability(0.25).unwrap();
        assert!((m.theta() - (PI / 6.0)).abs() < 1e-15); // asin(1/2)
        assert!((m.sin_two_theta() - (3.0f64).sqrt() / 2.0).abs() < 1e-15);

        let m2 = AlgorithmModel::from_theta(m.theta()).unwrap();
        assert!((m2.a() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn model_rejects_degenerate_theta() {
        for bad in [0.0, PI / 2.0, -0.1, 2.0] {
            assert!(AlgorithmModel::from_theta(bad).is_err());
        }
    }

    #[test]
    fn phase_pair_normalizes_on_entry() {
        let p = PhasePair::new(3.0 * PI, -2.0 * PI - 0.5);
        assert!((p.phi_zero() - PI).abs() < 1e-15);
        assert!((p.phi_good() + 0.5).abs() < 1e-14);
        let g = PhasePair::grover();
        assert_eq!(g.phi_zero(), PI);
        assert_eq!(g.phi_good(), PI);
    }
}
