//! Executable functional analysis in finite dimensions.
//!
//! Norms and their axioms, operator norms with certificates, equivalence
//! constants, truncated ℓ^p sequences with tail bounds, a constructive
//! Hahn–Banach extension, the ℓ^q / (ℓ^p)′ pairing with norming witnesses,
//! and bilinear forms with the tensor-product linearization.

pub mod bilinear;
pub mod commands;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod hahn_banach;
pub mod lp;
pub mod matrix;
pub mod norm;
pub mod operators;
pub mod optim;
pub mod oracle;
pub mod report;
pub mod sampling;
pub mod space;
pub mod suite;
pub mod tensor;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use norm::{Exponent, NormSpec};
pub use space::{Field, Scalar, Vector};
