use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rank must be at least {min}, got {got}")]
    RankTooSmall { got: usize, min: usize },

    #[error("{what}: expected {expected}, got {got}")]
    Shape {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{which} multiplier matrix is not unimodular (det = {det})")]
    NotUnimodular { which: &'static str, det: i64 },

    #[error("{which} multiplier matrix has a negative entry at ({row}, {col})")]
    NegativeEntry {
        which: &'static str,
        row: usize,
        col: usize,
    },

    #[error("structure constant n_({k},{j}) is invalid: {reason}")]
    StructureConstant { k: usize, j: usize, reason: String },

    #[error("unknown catalog cone '{0}'")]
    UnknownCone(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("gamma function pole at z = {0}")]
    Pole(Complex64),

    #[error("argument {z} lies within {distance:e} of a gamma pole")]
    NearPole { z: Complex64, distance: f64 },

    #[error("completion condition not satisfied: structure constants must be even with p and q divisible by 4")]
    ConditionNotSatisfied,

    #[error("chart '{0}' has no inner product declaration")]
    MissingInnerProduct(String),

    #[error("unsupported cone for this operation: {0}")]
    UnsupportedCone(String),

    #[error("s = {s:?} is outside the convergence region (need Re s_j > {bound:?} + {margin})")]
    OutsideConvergence {
        s: Vec<Complex64>,
        bound: Vec<f64>,
        margin: f64,
    },

    #[error("quadrature did not converge: estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    QuadratureNonConvergence { estimate: f64, tolerance: f64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
