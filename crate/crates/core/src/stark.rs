//! Stark effect on hydrogen, with and without the minimum-length deformation.
//!
//! The field points along `+z`; the electron's potential energy is
//! `V = e |E| z` (electron charge `-e`), so the n = 2 coupling is
//! `<2,1,0|V|2,0,0> = -3 e a0 |E|` with the phase convention of
//! [`crate::hydrogen`].
//!
//! Quadratic (n = 1) results are lower *bounds* on the shift, obtained by
//! replacing every `E_1 - E_n` by `E_1 - E_2` in the second-order sum. Linear
//! (n = 2) results are first-order degenerate shifts.
//!
//! Under the deformation the position operator becomes
//! `Z = z + (2b - b')/4 (z p^2 + p^2 z)`. The closed forms used here are
//! `<1s|Z^2|1s> = a0^2 + (2b - b')/2` and
//! `|<2,1,0|Z|2,0,0>| = 3 a0 - (2b - b')/(8 a0)`. The oracle module evaluates
//! both independently.
//!
//! The two estimators are
//!
//! * `sigma = -(4/3) a0 |E|^2 dx^2 (3 eta - 1)`, the gap between the
//!   deformed and ordinary quadratic bounds;
//! * `chi = -(e / 8 a0) |E| dx^2 (3 eta - 1)`, the change in the magnitude of
//!   the linear splitting. `chi` is linear in `|E|`, as the eigenvalues it is
//!   derived from are.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen::{z_matrix_element, QuantumNumbers};
use crate::ml_corrections::vml_matrix_n2;
use crate::spectrum::PerturbationMatrix;
use crate::units::{
    constants, linear_energy_si, quadratic_energy_si, DeformationParams, Dimension,
    PhenomenologyParams, Quantity, System,
};

pub use crate::spectrum::{diagonalize, EigenDecomposition, EigenPair};

/// Uniform field magnitude along `+z`, in V/m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    magnitude: f64,
}

impl FieldSpec {
    pub fn new(magnitude: f64) -> Result<Self> {
        if !(magnitude.is_finite() && magnitude >= 0.0) {
            return Err(Error::invalid(
                "field",
                format!("magnitude must be finite and >= 0 V/m, got {magnitude}"),
            ));
        }
        Ok(Self { magnitude })
    }

    /// V/m.
    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn quantity(&self) -> Quantity {
        Quantity::si(self.magnitude, Dimension::Field)
    }

    pub fn atomic(&self) -> f64 {
        self.magnitude / constants().atomic_field()
    }
}

fn n2_basis() -> Vec<QuantumNumbers> {
    QuantumNumbers::shell(2).expect("n = 2")
}

fn pol_volume(value_a0_cubed: f64) -> Quantity {
    Quantity::atomic(value_a0_cubed, Dimension::PolarizabilityVolume)
}

/// Lower bound `-(8/3) a0^3 |E|^2` on the n = 1 shift, in joules.
pub fn quadratic_shift_bound(f: FieldSpec) -> Quantity {
    quadratic_energy_si(pol_volume(-8.0 / 3.0), f.quantity()).expect("dimensions fixed")
}

/// Upper bound `16 a0^3 / 3` on the ground-state polarizability volume.
pub fn polarizability_bound() -> Quantity {
    pol_volume(16.0 / 3.0)
}

/// `<1s| Z^2 |1s> = a0^2 + (2b - b')/2`.
pub fn z_sq_expectation_ml(d: DeformationParams) -> Quantity {
    Quantity::atomic(1.0 + 0.5 * d.b_squared(), Dimension::LengthSquared)
}

/// Lower bound `-(8/3) a0 <1s|Z^2|1s> |E|^2` on the deformed n = 1 shift, in joules.
pub fn quadratic_shift_bound_ml(f: FieldSpec, d: DeformationParams) -> Quantity {
    let coeff = -(8.0 / 3.0) * z_sq_expectation_ml(d).value;
    quadratic_energy_si(pol_volume(coeff), f.quantity()).expect("dimensions fixed")
}

fn coupling_matrix(f: FieldSpec, dipole: Quantity) -> PerturbationMatrix {
    let mut m = PerturbationMatrix::zeros(n2_basis(), System::Si);
    let v = linear_energy_si(dipole, f.quantity()).expect("dimensions fixed");
    m.set_symmetric(0, 1, v.value);
    m
}

fn unperturbed_dipole() -> Quantity {
    let basis = n2_basis();
    z_matrix_element(basis[1], basis[0]).expect("valid states")
}

/// Deformed `<2,1,0|Z|2,0,0>`: magnitude `3 a0 - (2b - b')/(8 a0)`, with the
/// sign of the undeformed element.
pub fn ml_dipole_element(d: DeformationParams) -> Quantity {
    let z = unperturbed_dipole();
    let magnitude = z.value.abs() - d.b_squared() / 8.0;
    Quantity::atomic(z.value.signum() * magnitude, Dimension::Length)
}

/// Ordinary Stark perturbation on n = 2 in the basis
/// `|2,0,0>, |2,1,0>, |2,1,1>, |2,1,-1>`, in joules.
pub fn stark_matrix_n2(f: FieldSpec) -> PerturbationMatrix {
    coupling_matrix(f, unperturbed_dipole())
}

/// Deformed Stark perturbation `e|E| Z` on n = 2, in joules.
pub fn stark_matrix_n2_ml(f: FieldSpec, d: DeformationParams) -> PerturbationMatrix {
    coupling_matrix(f, ml_dipole_element(d))
}

/// `-(4/3) a0 |E|^2 dx^2 (3 eta - 1)`, in joules.
pub fn sigma_correction(f: FieldSpec, p: PhenomenologyParams) -> Quantity {
    let a0 = constants().bohr_radius;
    let coeff = -(4.0 / 3.0) * a0 * p.delta_x_min.powi(2) * p.asymmetry();
    quadratic_energy_si(
        Quantity::si(coeff, Dimension::PolarizabilityVolume),
        f.quantity(),
    )
    .expect("dimensions fixed")
}

/// `-(e / 8 a0) |E| dx^2 (3 eta - 1)`, in joules.
pub fn chi_correction(f: FieldSpec, p: PhenomenologyParams) -> Quantity {
    let a0 = constants().bohr_radius;
    let length = -p.delta_x_min.powi(2) * p.asymmetry() / (8.0 * a0);
    linear_energy_si(Quantity::si(length, Dimension::Length), f.quantity())
        .expect("dimensions fixed")
}

/// Frobenius norm of `[V_ML, V_ML^S]` on the n = 2 level, in hartree^2.
///
/// Nonzero exactly when the field is on and the 2s and 2p entries of `V_ML`
/// differ: then no basis diagonalizes both perturbations at once.
pub fn simultaneity_check(f: FieldSpec, d: DeformationParams) -> f64 {
    let level = vml_matrix_n2(d);
    let stark = stark_matrix_n2_ml(f, d).to_system(System::Atomic);
    let c = level.commutator(&stark).expect("same basis and system");
    c.iter().map(|v| v * v).sum::<f64>().sqrt()
}
