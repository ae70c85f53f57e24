use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("lattice enumeration needs more than {budget} points (cutoff {cutoff:.6e})")]
    EnumerationBudget { budget: u64, cutoff: f64 },

    #[error("Bessel J_{order}({x}) is outside the supported accuracy range (order <= {max_order}, x <= {max_x})")]
    BesselRange {
        order: f64,
        x: f64,
        max_order: f64,
        max_x: f64,
    },

    #[error("no sign change found for zero #{k} of J_{order} within the search budget")]
    RootNotFound { order: f64, k: usize },

    #[error("need {needed} certified eigenvalues, spectrum certifies only {available}")]
    InsufficientPrefix { needed: usize, available: usize },

    #[error("degenerate gap at k={k}: lambda_{next} equals lambda_{index}")]
    DegenerateGap { k: usize, index: usize, next: usize },

    #[error("bound requires a Euclidean domain, got {0}")]
    NonEuclideanDomain(String),

    #[error("projective bound requires a projective ambient with a field dimension")]
    MissingFieldDim,

    #[error("hyperbolic ambient requires dimension >= 2")]
    HyperbolicDimension,

    #[error("Yang-type hypothesis fails at prefix index {index} (lhs {lhs:.6e} > rhs {rhs:.6e})")]
    YangHypothesis { index: usize, lhs: f64, rhs: f64 },

    #[error("negative discriminant {discriminant:.6e} at k={k}: Yang hypothesis fails on this prefix")]
    NegativeDiscriminant { k: usize, discriminant: f64 },

    #[error("argument {z} exceeds the certified range (largest certified eigenvalue {limit})")]
    OutOfCertifiedRange { z: f64, limit: f64 },

    #[error("heat-trace tail cannot be certified at t={t}; smallest usable t is about {min_t:.6e}")]
    TailCertification { t: f64, min_t: f64 },

    #[error("Riesz iteration mismatch: direct {direct:.15e} vs iterated {iterated:.15e}")]
    IterationMismatch { direct: f64, iterated: f64 },

    #[error("implication chain broken at k={k}: Yang-1 satisfied but {failed} is not")]
    ImplicationViolated { k: usize, failed: String },

    #[error("line {line}: malformed record: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("line {line}: eigenvalues are unsorted ({value} after {previous})")]
    Unsorted { line: usize, value: f64, previous: f64 },

    #[error("line {line}: multiplicity must be positive")]
    NonpositiveMultiplicity { line: usize },

    #[error("missing or malformed domain header: {0}")]
    MissingHeader(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
