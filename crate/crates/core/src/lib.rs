//! Exact verification of q-series identities by truncated Laurent expansion.
pub mod arith;
pub mod catalog;
pub mod error;
pub mod hyperphi;
mod kernel;
pub mod numerics;
pub mod qproducts;
pub mod series;
pub mod sum;
pub mod wz;

pub use catalog::{Catalog, IdentityEntry, LambertKind, Status, VerificationReport};
pub use error::{Error, Result};
pub use hyperphi::PhiSpec;
pub use qproducts::{PochIndex, PochSpec, QMonomial, QProduct};
pub use series::{Comparison, ExponentQ, LaurentSeries, Mismatch, RealEval};
pub use sum::{TermRatio, TermSum};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
