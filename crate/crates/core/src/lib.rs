//! Exact computations with internal categories in comonoids of vector spaces.

pub mod bicomod;
pub mod cofun;
pub mod coring;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod intcat;
pub mod klbicat;
pub mod kleisli;
pub mod matrix;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod task;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
