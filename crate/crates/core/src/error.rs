use thiserror::Error;

/// Errors produced by the exact and numerical layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("log of zero")]
    LogOfZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: nonzero remainder of degree {remainder_degree}")]
    InexactDivision { remainder_degree: isize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("Lenard integration failed at order {0}")]
    LenardIntegration(usize),
    #[error("truncation below determinant degree (need {needed}, got {got})")]
    Truncation { needed: usize, got: usize },
    #[error("degenerate a")]
    DegenerateA,
    #[error("pole/branch point")]
    PoleOrBranchPoint,
    #[error("branch tracking lost at x = {x}")]
    BranchTrackingLost { x: String },
    #[error("no convergence after {iterations} iterations (last correction {correction:e})")]
    NoConvergence {
        iterations: usize,
        correction: f64,
        best_iterate: Vec<rug::Complex>,
    },
    #[error("quadrature did not converge (estimate {estimate}, error {error})")]
    Quadrature { estimate: String, error: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
