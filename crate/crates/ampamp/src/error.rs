//! Error type shared across the library.

use thiserror::Error;

/// Failure modes for library operations.
///
/// Everything here is a caller-visible condition; internal numerical
/// contracts (unitarity, leakage) are exposed as measured values instead
/// so callers can assert them at whatever tolerance they need.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Success probability must lie strictly inside (0, 1) for the good/bad
    /// plane to be two-dimensional.
    #[error("success probability {0} leaves no two-dimensional invariant plane (need 0 < a < 1)")]
    DegenerateSubspace(f64),

    /// The requested operation excludes this phase value.
    #[error("phase {0} rad is outside the domain of this operation")]
    ExcludedPhase(f64),

    /// Requested per-step rotation angle cannot be produced at this success
    /// probability; |sin(vartheta)| may not exceed sin(2 theta).
    #[error("per-step angle {vartheta} rad is unreachable; |sin| is capped at {limit}")]
    UnreachableRotation {
        /// The angle that was asked for.
        vartheta: f64,
        /// sin(2 theta) for the model in use.
        limit: f64,
    },

    /// The matrix handed to the decomposition has unequal diagonal entries,
    /// so it is not a phased plane rotation.
    #[error("diagonal entries differ by {0:e}; solve the phase-matching condition first")]
    NotEqualDiagonal(f64),

    /// A rotation plan was applied to a model it was not built for.
    #[error("rotation plan does not belong to the supplied model")]
    MismatchedModel,

    /// A zero phase on the zero state makes the iterate act trivially on the
    /// plane, so no step count reaches certainty.
    #[error("zero-state phase 0 gives a trivial iterate; exact search needs a nonzero phase")]
    TrivialAngles,

    /// Register-space simulation is deliberately capped.
    #[error("n = {n} qubits exceeds the simulation limit of {max}")]
    DimensionLimit {
        /// Requested register width.
        n: u32,
        /// Hard cap for this operation.
        max: u32,
    },

    /// The marked set must be a nonempty proper subset of the basis.
    #[error("marked set with {marked} of {dim} basis states does not define a search problem")]
    InvalidMarkedSet {
        /// Number of distinct marked states supplied.
        marked: usize,
        /// Hilbert-space dimension.
        dim: usize,
    },

    /// Parameter sweeps refuse empty grids rather than report an empty success.
    #[error("sweep grid is empty")]
    EmptyGrid,

    /// Catch-all for scalar parameter validation.
    #[error("{0}")]
    InvalidParameter(String),
}

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
