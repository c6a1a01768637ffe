//! The 2x2 unitary that one amplification iterate induces on the invariant
//! plane, plus its rotation-with-phases normal form.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{normalize_angle, AlgorithmModel, PhasePair};

/// Amplitudes of a plane state, split by marked membership.
///
/// `good` multiplies the normalized projection of `A|0>` onto the marked
/// states, `bad` the normalized projection onto the rest. Keeping the two
/// components named avoids any dependence on an index convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubspaceState {
    /// Amplitude on the normalized good component.
    pub good: Complex64,
    /// Amplitude on the normalized bad component.
    pub bad: Complex64,
}

impl SubspaceState {
    /// State with the given amplitudes.
    pub fn new(good: Complex64, bad: Complex64) -> Self {
        Self { good, bad }
    }

    /// Coordinates of `A|0>` itself: angle theta up from the bad axis.
    pub fn initial(model: &AlgorithmModel) -> Self {
        Self {
            good: Complex64::new(model.theta().sin(), 0.0),
            bad: Complex64::new(model.theta().cos(), 0.0),
        }
    }

    /// Squared two-norm; 1 for any physical state.
    pub fn norm_sqr(&self) -> f64 {
        self.good.norm_sqr() + self.bad.norm_sqr()
    }

    /// Probability of measuring a marked state.
    pub fn p_good(&self) -> f64 {
        self.good.norm_sqr()
    }
}

/// Dense 2x2 complex matrix acting on the invariant plane.
///
/// Coordinate order is (bad, good): index 0 addresses the bad axis, index 1
/// the good axis, so `m10` is the amplitude the operator feeds from bad into
/// good. [`SubspaceState`] hides this ordering from callers; it only matters
/// when reading entries directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    /// bad -> bad entry.
    pub m00: Complex64,
    /// good -> bad entry.
    pub m01: Complex64,
    /// bad -> good entry.
    pub m10: Complex64,
    /// good -> good entry.
    pub m11: Complex64,
}

impl Unitary2 {
    /// Identity.
    pub fn identity() -> Self {
        Self {
            m00: Complex64::new(1.0, 0.0),
            m01: Complex64::new(0.0, 0.0),
            m10: Complex64::new(0.0, 0.0),
            m11: Complex64::new(1.0, 0.0),
        }
    }

    /// Matrix from explicit entries, row-major.
    pub fn from_entries(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Self { m00, m01, m10, m11 }
    }

    /// Plane rotation by `angle`, advancing states from the bad axis toward
    /// the good axis: (cos t, sin t) columns become (cos(t+angle), sin(t+angle)).
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            m00: Complex64::new(c, 0.0),
            m01: Complex64::new(-s, 0.0),
            m10: Complex64::new(s, 0.0),
            m11: Complex64::new(c, 0.0),
        }
    }

    /// diag(1, e^{iu}): phases the good axis, leaves the bad axis alone.
    pub fn good_phase(u: f64) -> Self {
        Self {
            m00: Complex64::new(1.0, 0.0),
            m01: Complex64::new(0.0, 0.0),
            m10: Complex64::new(0.0, 0.0),
            m11: Complex64::from_polar(1.0, u),
        }
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            m00: self.m00 * rhs.m00 + self.m01 * rhs.m10,
            m01: self.m00 * rhs.m01 + self.m01 * rhs.m11,
            m10: self.m10 * rhs.m00 + self.m11 * rhs.m10,
            m11: self.m10 * rhs.m01 + self.m11 * rhs.m11,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            m00: self.m00.conj(),
            m01: self.m10.conj(),
            m10: self.m01.conj(),
            m11: self.m11.conj(),
        }
    }

    /// Every entry multiplied by a scalar.
    pub fn scaled(&self, z: Complex64) -> Self {
        Self {
            m00: self.m00 * z,
            m01: self.m01 * z,
            m10: self.m10 * z,
            m11: self.m11 * z,
        }
    }

    /// `self` raised to the `m`-th power by binary exponentiation.
    pub fn pow(&self, m: u32) -> Self {
        let mut result = Self::identity();
        let mut base = *self;
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Applies the matrix to a raw (bad, good) coordinate pair.
    pub fn apply_raw(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m00 * v[0] + self.m01 * v[1],
            self.m10 * v[0] + self.m11 * v[1],
        ]
    }

    /// Applies the matrix to a plane state.
    pub fn apply(&self, s: &SubspaceState) -> SubspaceState {
        let [bad, good] = self.apply_raw([s.bad, s.good]);
        SubspaceState { good, bad }
    }

    /// Largest entrywise deviation of `self^H self` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let g = self.adjoint().mul(self);
        let one = Complex64::new(1.0, 0.0);
        (g.m00 - one)
            .norm()
            .max((g.m11 - one).norm())
            .max(g.m01.norm())
            .max(g.m10.norm())
    }

    /// Largest entrywise absolute difference from `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        (self.m00 - other.m00)
            .norm()
            .max((self.m01 - other.m01).norm())
            .max((self.m10 - other.m10).norm())
            .max((self.m11 - other.m11).norm())
    }

    /// Largest singular value, from the closed-form eigenvalues of the
    /// 2x2 Gram matrix.
    pub fn operator_norm(&self) -> f64 {
        let g = self.adjoint().mul(self);
        // g is Hermitian PSD: g00, g11 real, g10 = conj(g01)
        let t = g.m00.re + g.m11.re;
        let d = g.m00.re * g.m11.re - g.m01.norm_sqr();
        let disc = (t * t - 4.0 * d).max(0.0).sqrt();
        (0.5 * (t + disc)).max(0.0).sqrt()
    }

    /// Operator norm of `self - other`.
    pub fn operator_norm_diff(&self, other: &Self) -> f64 {
        Self {
            m00: self.m00 - other.m00,
            m01: self.m01 - other.m01,
            m10: self.m10 - other.m10,
            m11: self.m11 - other.m11,
        }
        .operator_norm()
    }
}

/// Closed-form matrix of one amplification iterate on the invariant plane.
///
/// With a = success probability, e = e^{i phi_zero}, f = e^{i phi_good} and
/// s = sqrt(a(1-a)), the iterate acts on (bad, good) coordinates as
///
/// ```text
/// [ -((1-e) a + e)      (1-e) s f      ]
/// [  (1-e) s            ((1-e) a - 1) f ]
/// ```
///
/// Unitary by construction; both phase pairs (pi, pi) recover the plain
/// plane rotation by 2 theta.
pub fn build_q_matrix(model: &AlgorithmModel, phases: &PhasePair) -> Unitary2 {
    let a = model.a();
    let s = (a * (1.0 - a)).sqrt();
    let e = Complex64::from_polar(1.0, phases.phi_zero());
    let f = Complex64::from_polar(1.0, phases.phi_good());
    let one = Complex64::new(1.0, 0.0);
    let g = one - e;
    Unitary2 {
        m00: -(g * a + e),
        m01: g * s * f,
        m10: g * s,
        m11: (g * a - one) * f,
    }
}

/// |m00 - m11|: zero exactly when the matrix is a phased plane rotation.
pub fn diagonal_gap(m: &Unitary2) -> f64 {
    (m.m00 - m.m11).norm()
}

/// Equal-diagonal plane unitaries factor as a rotation conjugated by a
/// relative phase, times a global phase:
/// `e^{iv} diag(1, e^{iu}) R(vartheta) diag(1, e^{-iu})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasedRotation {
    /// Rotation angle per application, in [0, pi/2].
    pub vartheta: f64,
    /// Relative phase between the axes, in (-pi, pi]; 0 when the rotation
    /// part vanishes.
    pub u: f64,
    /// Global phase, in (-pi, pi].
    pub v: f64,
}

impl PhasedRotation {
    /// Multiplies the factors back out.
    pub fn recompose(&self) -> Unitary2 {
        let phase = Complex64::from_polar(1.0, self.v);
        Unitary2::good_phase(self.u)
            .mul(&Unitary2::rotation(self.vartheta))
            .mul(&Unitary2::good_phase(-self.u))
            .scaled(phase)
    }
}

/// Diagonal gap below which a matrix is accepted as phase-matched.
const EQUAL_DIAGONAL_TOL: f64 = 1e-9;

/// Magnitude below which an entry is treated as exactly zero when reading
/// off phases.
const ZERO_ENTRY_TOL: f64 = 1e-12;

/// Splits an equal-diagonal plane unitary into its [`PhasedRotation`] factors.
///
/// Requires `diagonal_gap(m) < 1e-9`. The angle comes out of the entry
/// magnitudes, the phases out of the entry arguments; when the diagonal
/// vanishes the global phase is recovered from both off-diagonal arguments
/// instead (the two candidate factorizations recompose identically).
pub fn decompose_equal_diagonal(m: &Unitary2) -> Result<PhasedRotation> {
    let gap = diagonal_gap(m);
    if gap.is_nan() || gap >= EQUAL_DIAGONAL_TOL {
        return Err(Error::NotEqualDiagonal(gap));
    }
    let ct = m.m00.norm();
    let st = m.m10.norm();
    let vartheta = st.atan2(ct);
    let v = if ct < ZERO_ENTRY_TOL {
        ((-m.m01).arg() + m.m10.arg()) / 2.0
    } else {
        m.m00.arg()
    };
    let u = if st < ZERO_ENTRY_TOL {
        0.0
    } else {
        normalize_angle(m.m10.arg() - v)
    };
    Ok(PhasedRotation {
        vartheta,
        u,
        v: normalize_angle(v),
    })
}
