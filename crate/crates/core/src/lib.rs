//! Exact computational toolkit for matroid configurations: configuration
//! polynomials and forms, their Jacobian and minor ideals, matroid handle
//! machinery, and a small Gröbner engine to decide the resulting ideal
//! identities without floating point.

pub mod catalog;
pub mod config;
pub mod error;
pub mod families;
pub mod field;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod poly;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
