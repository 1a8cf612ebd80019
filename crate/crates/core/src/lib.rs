//! Hydrogen energy shifts and the Stark effect under a minimum-length
//! deformation of the Heisenberg algebra,
//! `[X_i, P_j] = i [delta_ij (1 + beta P^2) + beta' P_i P_j]`.
//!
//! Internally everything is in atomic units (`hbar = m_e = e = a0 = 1`,
//! energies in hartree, `beta`, `beta'` in `a0^2`); [`units::Quantity`]
//! carries the dimension and unit system of every reported value.

pub mod error;
pub mod hydrogen;
pub mod ml_corrections;
pub mod oracle;
pub mod parallel;
pub mod quadrature;
pub mod report;
pub mod spectrum;
pub mod stark;
pub mod units;

pub use error::{Error, Result};
pub use hydrogen::QuantumNumbers;
pub use parallel::Execution;
pub use report::{EnergyUnit, ReportRow, RowKind, ScanParam, ScanSpec, Scenario};
pub use stark::FieldSpec;
pub use units::{DeformationParams, Dimension, PhenomenologyParams, Quantity, System};
