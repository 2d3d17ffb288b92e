use thiserror::Error;

use crate::hadamard::HadamardAxiom;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected order {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("index {index} out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid tolerance {0}: must be positive and finite")]
    InvalidTolerance(f64),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("entry {index} has modulus {modulus}, expected 1")]
    NotUnitModulus { index: usize, modulus: f64 },

    #[error("matrix is not unitary (max deviation of A^dagger A from I is {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("not a Hadamard matrix: {axiom} violated at ({row}, {col}), deviation {deviation:e}")]
    NotHadamard {
        axiom: HadamardAxiom,
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("not a Latin square: {0}")]
    NotLatin(String),

    #[error("row {row} of the square is not an orthonormal basis (Q_{row} not unitary, deviation {deviation:e})")]
    QlsRowBasis { row: usize, deviation: f64 },

    #[error("column {column} of the square is not an orthonormal basis: <Q_{p}{column}, Q_{q}{column}> deviates by {deviation:e}")]
    QlsColumnBasis {
        column: usize,
        p: usize,
        q: usize,
        deviation: f64,
    },

    #[error("expected {expected} elements, found {found}")]
    WrongCount { expected: usize, found: usize },

    #[error("element {index} is not unitary (deviation {deviation:e})")]
    ElementNotUnitary { index: usize, deviation: f64 },

    #[error("elements {first} and {second} violate trace orthogonality: Tr(A^dagger B) = {re} + {im}i, expected {expected}")]
    NotOrthogonal {
        first: usize,
        second: usize,
        re: f64,
        im: f64,
        expected: f64,
    },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("group order {order} is not n^2 = {expected}")]
    GroupOrder { order: usize, expected: usize },

    #[error("image of the identity is not the identity matrix")]
    IdentityImage,

    #[error("rho({g}) rho({h}) is not proportional to rho({g}{h})")]
    Cocycle { g: usize, h: usize },

    #[error("Tr(rho({element})) = {modulus:e} in modulus, expected 0 for a non-identity element")]
    NonzeroTrace { element: usize, modulus: f64 },

    #[error("matrix is not monomial: {0}")]
    NotMonomial(String),

    #[error("family does not contain the identity (up to a phase)")]
    MissingIdentity,

    #[error("invalid threshold {theta}: must exceed eps = {eps}")]
    InvalidThreshold { theta: f64, eps: f64 },

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
