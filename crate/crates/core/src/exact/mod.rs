//! Exact arithmetic over the Gaussian rationals.

mod det;
mod partition;
mod poly;
mod ratfunc;
mod scalar;

pub use det::{det_cofactor, det_fraction_free, ExactRing};
pub use partition::Partition;
pub use poly::XPolynomial;
pub use ratfunc::{rf_log_derivative, rf_log_second_derivative, XRationalFunction};
pub use scalar::ExactScalar;

use rug::Integer;

pub fn factorial(n: u32) -> Integer {
    Integer::factorial(n).into()
}

pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(n).binomial(k)
}
