//! Exact constructions of nonnegative matrices with prescribed spectra and
//! Jordan structure, with certificates checked in rational arithmetic.
//!
//! The pipeline pieces:
//!
//! * [`structure`]: irreducibility, Frobenius normal form, Perron vectors.
//! * [`rowsum`]: similarity to a nonnegative constant-row-sum matrix.
//! * [`perturb`]: rank-one Perron shifts `B + e q^T`.
//! * [`bonding`]: gluing two realizations through a shared eigenvalue.
//! * [`family5`]: the trace-zero degree-5 families and their realizations.
//! * [`jcfcert`]: Weyr/Segre computation and certificate verification.

pub mod bonding;
pub mod family5;
pub mod io;
pub mod jcfcert;
pub mod linalg;
pub mod matrix;
pub mod obstruction;
pub mod perturb;
pub mod poly;
pub mod rowsum;
pub mod sample;
pub mod scalar;
pub mod spectrum;
pub mod structure;

pub use matrix::{FloatMatrix, Matrix, RationalMatrix};
pub use poly::Polynomial;
pub use scalar::{parse_rational, Rational, Scalar};
pub use spectrum::{JordanSpec, Spectrum};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("entry ({row}, {col}) = {value} has no rational form with denominator <= {max_den}")]
    Reconstruction {
        row: usize,
        col: usize,
        value: f64,
        max_den: u64,
    },
    #[error("power iteration did not converge: {0}")]
    Iteration(String),
    #[error("spectral dominance violated: {0}")]
    SpectralDominance(String),
    #[error(
        "Perron root is not simple: {0}; a simple Perron root cannot be dropped \
         (the matrix [[1,0],[1,1]] has no similar nonnegative constant-row-sum form)"
    )]
    PerronNotSimple(String),
    #[error("mode error: {0}")]
    Mode(String),
    #[error("coupling error: {0}")]
    Coupling(String),
    #[error("eigenvalue collision: {0}")]
    Collision(String),
    #[error("nonnegativity lost at entry ({row}, {col}) = {value}")]
    NonnegativityLoss { row: usize, col: usize, value: String },
    #[error("corner mismatch: A[n,n] = {found}, expected {expected}")]
    CornerMismatch { found: String, expected: String },
    #[error("normalization error: u^T v = {0}, expected 1")]
    Normalization(String),
    #[error("construction unavailable: {0}")]
    ConstructionUnavailable(String),
    #[error("spectrum mismatch: {0}")]
    SpectrumMismatch(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
