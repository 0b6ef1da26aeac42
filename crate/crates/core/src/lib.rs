//! Exact construction and numerical study of generalized Vorob'ev–Yablonski
//! polynomials, the rational solutions of the second Painlevé hierarchy.

pub mod error;
pub mod exact;
pub mod diffalg;
pub mod symfunc;
pub mod vy;
pub mod asymptotics;
pub mod roots;

pub use asymptotics::BigComplex;
pub use error::{Error, Result};
pub use exact::{ExactScalar, Partition, XPolynomial, XRationalFunction};
pub use symfunc::{Times, TimesSpec};
