//! Error types shared across the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building or transforming operators,
/// states, morphisms, and lattice data.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian within {tol:e} (deviation {deviation:e})")]
    NotHermitian { tol: f64, deviation: f64 },

    #[error("operator is numerically zero (largest singular value {sigma_max:e})")]
    ZeroOperator { sigma_max: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid convex weights: {reason}")]
    BadWeights { reason: String },

    #[error("twist element annihilates the state (omega(A*A) = {norm:e})")]
    NullTwist { norm: f64 },

    #[error("invalid density matrix: {reason}")]
    InvalidState { reason: String },

    #[error("invalid observable quadruple: {reason}")]
    InvalidQuadruple { reason: String },

    #[error("input is not a projection within {tol:e} (deviation {deviation:e})")]
    NotProjection { tol: f64, deviation: f64 },

    #[error("projections commute within tolerance (commutator norm {commutator_norm:e}); construction degenerates")]
    CommutingProjections { commutator_norm: f64 },

    #[error("observables are not dichotomic (max |A^2 - 1| deviation {deviation:e})")]
    NotDichotomic { deviation: f64 },

    #[error("invalid monomorphism: {reason}")]
    InvalidMorphism { reason: String },

    #[error("invalid lattice model: {reason}")]
    InvalidModel { reason: String },

    #[error("massless lattice field unsupported (mass {mass} must be > 0)")]
    MasslessUnsupported { mass: f64 },

    #[error("invalid smearing function: {reason}")]
    InvalidSmearing { reason: String },

    #[error("smearing support outside its wedge: {reason}")]
    SupportViolation { reason: String },

    #[error("covariance violates the uncertainty relation (min eigenvalue of sigma + i*Omega is {min_eigenvalue:e})")]
    UncertaintyViolation { min_eigenvalue: f64 },

    #[error("per-mode dimension {dim} is odd; parity pairing is incomplete")]
    OddDimension { dim: usize },
}
