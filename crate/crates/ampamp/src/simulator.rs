//! Dense statevector simulator for the amplification iterate.
//!
//! Small and direct: a state is a `Vec<Complex64>` over the computational
//! basis, the preparation operator is either the Walsh-Hadamard transform
//! (applied as butterfly passes, never materialized) or an explicit matrix,
//! and one iterate application is four passes plus a sign. Used to validate
//! the 2x2 closed forms against the full dynamics.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{AlgorithmModel, PhasePair};
use crate::unitary::Unitary2;

/// Hard cap on register width for plain statevector work (16 M amplitudes).
pub const SIMULATOR_QUBIT_LIMIT: u32 = 20;

/// Tighter cap when the preparation operator is an explicit matrix, which
/// costs O(4^n) per application and O(8^n) to validate.
pub const MATRIX_QUBIT_LIMIT: u32 = 8;

/// The state preparation operator `A`.
#[derive(Debug, Clone)]
pub enum Algorithm {
    /// Hadamard on every qubit; `A = A^-1`, applied in n butterfly passes.
    WalshHadamard,
    /// Arbitrary unitary, dense row-major storage, checked on construction.
    Matrix(Vec<Complex64>),
}

/// One search instance: register width, marked basis states, and the
/// preparation operator.
#[derive(Debug, Clone)]
pub struct SimConfig {
    n: u32,
    dim: usize,
    marked: Vec<usize>,
    algorithm: Algorithm,
}

impl SimConfig {
    /// Instance whose preparation operator is the Walsh-Hadamard transform.
    pub fn walsh_hadamard(n: u32, marked: &[usize]) -> Result<Self> {
        Self::new(n, marked, Algorithm::WalshHadamard, SIMULATOR_QUBIT_LIMIT)
    }

    /// Instance with an explicit 2^n x 2^n preparation matrix, row-major.
    ///
    /// Rejects matrices that are not unitary within 1e-10 entrywise.
    pub fn with_matrix(n: u32, marked: &[usize], matrix: Vec<Complex64>) -> Result<Self> {
        let config = Self::new(n, marked, Algorithm::Matrix(matrix), MATRIX_QUBIT_LIMIT)?;
        let dim = config.dim;
        let mat = match &config.algorithm {
            Algorithm::Matrix(m) => m,
            Algorithm::WalshHadamard => unreachable!(),
        };
        if mat.len() != dim * dim {
            return Err(Error::InvalidParameter(format!(
                "matrix has {} entries, expected {}",
                mat.len(),
                dim * dim
            )));
        }
        let mut defect = 0.0f64;
        for i in 0..dim {
            for j in i..dim {
                let mut dot = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    dot += mat[k * dim + i].conj() * mat[k * dim + j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((dot - target).norm());
            }
        }
        if defect > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "preparation matrix is not unitary (defect {defect:e})"
            )));
        }
        Ok(config)
    }

    fn new(n: u32, marked: &[usize], algorithm: Algorithm, cap: u32) -> Result<Self> {
        if n == 0 || n > cap {
            return Err(Error::DimensionLimit { n, max: cap });
        }
        let dim = 1usize << n;
        let mut sorted: Vec<usize> = marked.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.last().is_some_and(|&i| i >= dim) {
            return Err(Error::InvalidParameter(format!(
                "marked index {} out of range for dimension {dim}",
                sorted.last().unwrap()
            )));
        }
        if sorted.is_empty() || sorted.len() == dim {
            return Err(Error::InvalidMarkedSet {
                marked: sorted.len(),
                dim,
            });
        }
        Ok(Self {
            n,
            dim,
            marked: sorted,
            algorithm,
        })
    }

    /// Register width in qubits.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Hilbert-space dimension 2^n.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Marked basis states, sorted and deduplicated.
    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    /// Membership test against the sorted marked set.
    pub fn is_marked(&self, index: usize) -> bool {
        self.marked.binary_search(&index).is_ok()
    }

    /// Scalar model induced by this instance: `a` is the marked weight of
    /// `A|0>` (exactly `t/2^n` under Walsh-Hadamard).
    pub fn model(&self) -> Result<AlgorithmModel> {
        let psi = self.prepare_initial();
        let a: f64 = self
            .marked
            .iter()
            .map(|&i| psi.amps[i].norm_sqr())
            .sum();
        AlgorithmModel::from_success_probability(a)
    }

    /// `A|0>` as a fresh state.
    pub fn prepare_initial(&self) -> StateVector {
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim];
        amps[0] = Complex64::new(1.0, 0.0);
        self.apply_a(&mut amps);
        StateVector { amps }
    }

    pub(crate) fn apply_a(&self, buf: &mut [Complex64]) {
        match &self.algorithm {
            Algorithm::WalshHadamard => walsh_hadamard(buf),
            Algorithm::Matrix(m) => matrix_apply(m, self.dim, buf, false),
        }
    }

    pub(crate) fn apply_a_inverse(&self, buf: &mut [Complex64]) {
        match &self.algorithm {
            Algorithm::WalshHadamard => walsh_hadamard(buf),
            Algorithm::Matrix(m) => matrix_apply(m, self.dim, buf, true),
        }
    }
}

/// Normalized complex amplitudes over the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros basis state of the given dimension.
    pub fn zero_state(dim: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[0] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    /// Wraps explicit amplitudes; the norm must be 1 within 1e-9.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let state = Self { amps };
        if (state.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "state norm {} is not 1",
                state.norm()
            )));
        }
        Ok(state)
    }

    /// Read-only view of the amplitudes.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Two-norm.
    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Inner product `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    /// Probability of measuring a marked state of the instance.
    pub fn p_good(&self, config: &SimConfig) -> f64 {
        assert_eq!(self.dim(), config.dim(), "dimension mismatch");
        config
            .marked()
            .iter()
            .map(|&i| self.amps[i].norm_sqr())
            .sum()
    }
}

/// In-place Walsh-Hadamard transform; length must be a power of two.
/// Self-inverse, n butterfly passes with 1/sqrt(2) scaling.
pub(crate) fn walsh_hadamard(buf: &mut [Complex64]) {
    debug_assert!(buf.len().is_power_of_two());
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    let mut h = 1;
    while h < buf.len() {
        let mut i = 0;
        while i < buf.len() {
            for j in i..i + h {
                let x = buf[j];
                let y = buf[j + h];
                buf[j] = (x + y) * inv;
                buf[j + h] = (x - y) * inv;
            }
            i += 2 * h;
        }
        h <<= 1;
    }
}

/// Dense matrix-vector product, `adjoint` selecting U or U^H.
fn matrix_apply(mat: &[Complex64], dim: usize, buf: &mut [Complex64], adjoint: bool) {
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &x) in buf.iter().enumerate() {
            let entry = if adjoint {
                mat[j * dim + i].conj()
            } else {
                mat[i * dim + j]
            };
            acc += entry * x;
        }
        *slot = acc;
    }
    buf.copy_from_slice(&out);
}

/// Multiplies every marked amplitude by e^{i phi_good} (the oracle `S_chi`).
pub fn apply_oracle_phase(state: &mut StateVector, config: &SimConfig, phi_good: f64) {
    assert_eq!(state.dim(), config.dim(), "dimension mismatch");
    apply_oracle_phase_buf(&mut state.amps, config, phi_good);
}

/// Multiplies the all-zeros amplitude by e^{i phi_zero} (the reflection seed `S_0`).
pub fn apply_zero_phase(state: &mut StateVector, phi_zero: f64) {
    apply_zero_phase_buf(&mut state.amps, phi_zero);
}

/// One full iterate `Q = -A S_0(phi_zero) A^-1 S_chi(phi_good)`, in place.
pub fn apply_q(state: &mut StateVector, config: &SimConfig, phases: &PhasePair) {
    assert_eq!(state.dim(), config.dim(), "dimension mismatch");
    apply_q_buf(&mut state.amps, config, phases);
}

pub(crate) fn apply_oracle_phase_buf(buf: &mut [Complex64], config: &SimConfig, phi_good: f64) {
    let phase = Complex64::from_polar(1.0, phi_good);
    for &i in config.marked() {
        buf[i] *= phase;
    }
}

pub(crate) fn apply_zero_phase_buf(buf: &mut [Complex64], phi_zero: f64) {
    buf[0] *= Complex64::from_polar(1.0, phi_zero);
}

pub(crate) fn apply_q_buf(buf: &mut [Complex64], config: &SimConfig, phases: &PhasePair) {
    apply_oracle_phase_buf(buf, config, phases.phi_good());
    config.apply_a_inverse(buf);
    apply_zero_phase_buf(buf, phases.phi_zero());
    config.apply_a(buf);
    for z in buf.iter_mut() {
        *z = -*z;
    }
}

/// The iterate's matrix on the plane spanned by the good and bad components
/// of `A|0>`, measured through the full simulator.
#[derive(Debug, Clone)]
pub struct RestrictedQ {
    /// 2x2 matrix in the (bad, good) ordering of [`Unitary2`].
    pub matrix: Unitary2,
    /// Largest norm of the component of an iterated basis vector falling
    /// outside the plane. Zero in exact arithmetic; callers assert their
    /// own tolerance (1e-12 holds throughout the test suite).
    pub leakage: f64,
}

/// Projects one full iterate onto the invariant plane of the instance.
///
/// Builds the normalized good and bad components of `A|0>`, pushes each
/// through the iterate, and reads off inner products. The result equals
/// [`crate::build_q_matrix`] for the instance's model up to simulator
/// roundoff; the leakage field quantifies how invariant the plane really
/// was.
pub fn restricted_matrix(config: &SimConfig, phases: &PhasePair) -> Result<RestrictedQ> {
    let (bad, good) = plane_basis(config)?;

    let mut q_bad = bad.clone();
    apply_q_buf(&mut q_bad, config, phases);
    let mut q_good = good.clone();
    apply_q_buf(&mut q_good, config, phases);

    // (bad, good) ordering: row 0 reads with <bad|, row 1 with <good|
    let m00 = dot(&bad, &q_bad);
    let m10 = dot(&good, &q_bad);
    let m01 = dot(&bad, &q_good);
    let m11 = dot(&good, &q_good);

    let leak_bad = residual_norm(&q_bad, &bad, &good, m00, m10);
    let leak_good = residual_norm(&q_good, &bad, &good, m01, m11);

    Ok(RestrictedQ {
        matrix: Unitary2::from_entries(m00, m01, m10, m11),
        leakage: leak_bad.max(leak_good),
    })
}

/// Normalized (bad, good) components of `A|0>`, the plane's orthonormal
/// basis. Errors when either component vanishes.
pub(crate) fn plane_basis(config: &SimConfig) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    config.model()?; // rejects degenerate instances before any work
    let psi = config.prepare_initial();
    let dim = config.dim();
    let mut good = vec![Complex64::new(0.0, 0.0); dim];
    let mut bad = vec![Complex64::new(0.0, 0.0); dim];
    for i in 0..dim {
        if config.is_marked(i) {
            good[i] = psi.amps[i];
        } else {
            bad[i] = psi.amps[i];
        }
    }
    normalize(&mut good);
    normalize(&mut bad);
    Ok((bad, good))
}

fn normalize(buf: &mut [Complex64]) {
    let norm = buf.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in buf.iter_mut() {
        *z /= norm;
    }
}

fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn residual_norm(
    v: &[Complex64],
    bad: &[Complex64],
    good: &[Complex64],
    coef_bad: Complex64,
    coef_good: Complex64,
) -> f64 {
    v.iter()
        .zip(bad.iter().zip(good))
        .map(|(&vi, (&bi, &gi))| (vi - coef_bad * bi - coef_good * gi).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::build_q_matrix;
    use std::f64::consts::PI;

    #[test]
    fn walsh_hadamard_is_self_inverse_and_uniform() {
        let config = SimConfig::walsh_hadamard(3, &[5]).unwrap();
        let psi = config.prepare_initial();
        let expect = 1.0 / (8.0f64).sqrt();
        for z in psi.amplitudes() {
            assert!((z.re - expect).abs() < 1e-15);
            assert!(z.im == 0.0);
        }
        let mut back = psi.amplitudes().to_vec();
        walsh_hadamard(&mut back);
        assert!((back[0].re - 1.0).abs() < 1e-15);
        for z in &back[1..] {
            assert!(z.norm() < 1e-15);
        }
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            SimConfig::walsh_hadamard(0, &[0]),
            Err(Error::DimensionLimit { .. })
        ));
        assert!(matches!(
            SimConfig::walsh_hadamard(2, &[]),
            Err(Error::InvalidMarkedSet { .. })
        ));
        assert!(matches!(
            SimConfig::walsh_hadamard(2, &[0, 1, 2, 3]),
            Err(Error::InvalidMarkedSet { .. })
        ));
        assert!(SimConfig::walsh_hadamard(2, &[4]).is_err());
        // duplicates collapse
        let c = SimConfig::walsh_hadamard(2, &[3, 3, 1]).unwrap();
        assert_eq!(c.marked(), &[1, 3]);
        assert!(c.is_marked(3) && !c.is_marked(0));
    }

    #[test]
    fn uniform_model_counts_marked_states() {
        let config = SimConfig::walsh_hadamard(4, &[2, 7, 11]).unwrap();
        let model = config.model().unwrap();
        assert!((model.a() - 3.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn iterate_preserves_norm() {
        let config = SimConfig::walsh_hadamard(4, &[3, 9]).unwrap();
        let mut state = config.prepare_initial();
        for _ in 0..25 {
            apply_q(&mut state, &config, &PhasePair::new(1.2, -0.8));
        }
        assert!((state.norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn single_grover_iterate_on_two_qubits_is_certain() {
        // n = 2, one marked state, sign-flip phases: one step reaches 1
        let config = SimConfig::walsh_hadamard(2, &[3]).unwrap();
        let mut state = config.prepare_initial();
        apply_q(&mut state, &config, &PhasePair::grover());
        assert!((state.p_good(&config) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn restriction_matches_the_closed_form() {
        let config = SimConfig::walsh_hadamard(3, &[1, 6]).unwrap();
        let phases = PhasePair::new(PI / 3.0, 1.1);
        let restricted = restricted_matrix(&config, &phases).unwrap();
        let model = config.model().unwrap();
        assert!((model.a() - 0.25).abs() < 1e-15);
        let closed = build_q_matrix(&model, &phases);
        assert!(restricted.matrix.max_diff(&closed) < 1e-12);
        assert!(restricted.leakage < 1e-12);
    }

    #[test]
    fn oracle_and_zero_phase_act_where_claimed() {
        let config = SimConfig::walsh_hadamard(2, &[2]).unwrap();
        let mut state = StateVector::zero_state(4);
        apply_zero_phase(&mut state, PI / 2.0);
        assert!((state.amplitudes()[0] - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        let mut uniform = config.prepare_initial();
        apply_oracle_phase(&mut uniform, &config, PI);
        assert!(uniform.amplitudes()[2].re < 0.0);
        assert!(uniform.amplitudes()[1].re > 0.0);
    }

    #[test]
    fn explicit_matrix_agrees_with_walsh_hadamard() {
        // build the 4x4 Walsh-Hadamard matrix explicitly and compare runs
        let dim = 4;
        let mut mat = vec![Complex64::new(0.0, 0.0); dim * dim];
        for col in 0..dim {
            let mut basis = vec![Complex64::new(0.0, 0.0); dim];
            basis[col] = Complex64::new(1.0, 0.0);
            walsh_hadamard(&mut basis);
            for row in 0..dim {
                mat[row * dim + col] = basis[row];
            }
        }
        let wh = SimConfig::walsh_hadamard(2, &[1]).unwrap();
        let mx = SimConfig::with_matrix(2, &[1], mat).unwrap();
        let phases = PhasePair::new(0.9, -1.4);
        let mut s1 = wh.prepare_initial();
        let mut s2 = mx.prepare_initial();
        apply_q(&mut s1, &wh, &phases);
        apply_q(&mut s2, &mx, &phases);
        for (x, y) in s1.amplitudes().iter().zip(s2.amplitudes()) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn non_unitary_matrix_is_rejected() {
        let mat = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        assert!(SimConfig::with_matrix(1, &[1], mat).is_err());
    }
}
