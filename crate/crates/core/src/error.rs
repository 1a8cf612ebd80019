use thiserror::Error;

use crate::units::{Dimension, System};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid quantum numbers (n={n}, l={l}, m={m}): require n >= 1, 0 <= l < n, |m| <= l")]
    InvalidQuantumNumbers { n: u32, l: u32, m: i32 },

    #[error("{0}")]
    SingularCase(String),

    #[error("unit mismatch: {lhs_dim:?}/{lhs_sys:?} vs {rhs_dim:?}/{rhs_sys:?}")]
    UnitMismatch {
        lhs_dim: Dimension,
        lhs_sys: System,
        rhs_dim: Dimension,
        rhs_sys: System,
    },

    #[error("expected a {expected:?} quantity, got {found:?}")]
    WrongDimension {
        expected: Dimension,
        found: Dimension,
    },

    #[error("matrix is not symmetric: |m[{row}][{col}] - m[{col}][{row}]| = {asymmetry:e}")]
    NotSymmetric {
        row: usize,
        col: usize,
        asymmetry: f64,
    },

    #[error("matrix shape mismatch: basis has {basis} states, entries are {rows}x{cols}")]
    ShapeMismatch {
        basis: usize,
        rows: usize,
        cols: usize,
    },

    #[error("quadrature did not reach tolerance: estimate {estimate:e}, error {error:e} after {subdivisions} subdivisions")]
    QuadratureNotConverged {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error(
        "grid resolution insufficient: discretization floor {floor:e} vs residual {residual:e}"
    )]
    GridResolution { floor: f64, residual: f64 },

    #[error("unsupported matrix element: {0}")]
    UnsupportedElement(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
