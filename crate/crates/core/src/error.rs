use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the lattice, polytope, cone and triangulation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive part")]
    ZeroVector,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("polytope is not a slice polytope (some vertex has x1 != 1)")]
    NotSlice,

    #[error("dilation factor must be positive, got {0}")]
    NonPositiveDilation(i64),

    #[error("cone is not simplicial")]
    NotSimplicial,

    #[error("cone is not pointed")]
    NotPointed,

    #[error("cone is not full-dimensional")]
    NotFullDimensional,

    #[error("malformed parameter sequence: {0}")]
    MalformedSequence(String),

    #[error("row {row} is zero")]
    ZeroRow { row: usize },

    #[error("row {row} negative at vertex ({})", fmt_vertex(.vertex))]
    Inadmissible { row: usize, vertex: Vec<BigInt> },

    #[error("functional is negative on the base polytope")]
    NegativeFunctional,

    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("polytope is not Fano")]
    NotFano,

    #[error("polytope is not H_d-compatible")]
    NotCompatible,

    #[error("not a simplex: {0}")]
    NotSimplex(String),

    #[error("delta vector entry {index} is not an integer: {value}")]
    NonIntegralDelta { index: usize, value: String },

    #[error("Ehrhart interpolation disagrees with lattice-point count at nu = {nu}")]
    InterpolationMismatch { nu: u64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

fn fmt_vertex(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub type Result<T> = std::result::Result<T, Error>;
