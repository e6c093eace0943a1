//! Exact computations with finite-dimensional superalgebras: Kantor doubles,
//! Cheng–Kac and hermitian Jordan superalgebras, and their δ-derivations.

pub mod analysis;
pub mod constructions;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod superalgebra;

pub use error::{Error, Result};
pub use scalar::{FieldDesc, Scalar};
