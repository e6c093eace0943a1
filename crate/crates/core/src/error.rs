use thiserror::Error;

use crate::linalg::LinalgError;
use crate::scalar::{FieldDesc, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("structure constant e{i}·e{j} has a nonzero e{k} component of the wrong parity")]
    Grading { i: usize, j: usize, k: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    Index { index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("field mismatch: {0} vs {1}")]
    Field(FieldDesc, FieldDesc),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("linear map is not homogeneous of the declared parity (entry {row},{col})")]
    MapParity { row: usize, col: usize },
    #[error("algebra has no unit")]
    NotUnital,
    #[error("algebra is not {0}")]
    Requirement(&'static str),
    #[error("Leibniz rule fails on basis pair ({i}, {j})")]
    Leibniz { i: usize, j: usize },
    #[error("superinvolution law fails: {0}")]
    Superinvolution(String),
    #[error("construction needs characteristic {expected}, got {got}")]
    Characteristic { expected: u64, got: u64 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("bracket and algebra do not match")]
    BracketMismatch,
    #[error("free super-polynomial exceeds degree bound {0}")]
    DegreeBound(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
