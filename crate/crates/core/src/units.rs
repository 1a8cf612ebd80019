//! Physical constants, tagged quantities and the two parameterizations of
//! the deformed algebra.
//!
//! Internally everything is computed in Hartree atomic units
//! (`hbar = m_e = e = a0 = 1`, Coulomb energy `e^2/r`). SI values only
//! appear at the API boundary, through [`Quantity::to_system`] and the two
//! field-energy helpers [`quadratic_energy_si`] and [`linear_energy_si`].
//!
//! The closed forms for Stark energies are written in Gaussian style, with
//! `e^2` standing for `q^2 / 4 pi eps0`. Once the field is expressed in V/m,
//! a quadratic expression `c * L^3 * |E|^2` is an energy only after a single
//! factor of `4 pi eps0`; a linear one `c * e * L * |E|` needs no factor. This
//! is the convention that turns the n = 1 and n = 2 Stark estimates into
//! joules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 recommended values (NIST SP 961, May 2019).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Elementary charge, C (exact since the 2019 SI redefinition).
    pub electron_charge: f64,
    /// Bohr radius, m.
    pub bohr_radius: f64,
    /// 4 pi eps0, C^2 N^-1 m^-2.
    pub vacuum_permittivity_factor: f64,
    /// Electron mass, kg.
    pub electron_mass: f64,
    /// Hartree energy, J.
    pub hartree: f64,
    /// Reduced Planck constant, J s.
    pub reduced_planck: f64,
}

const CODATA_2018: PhysicalConstants = PhysicalConstants {
    electron_charge: 1.602_176_634e-19,
    bohr_radius: 5.291_772_109_03e-11,
    // 4 pi * 8.8541878128e-12
    vacuum_permittivity_factor: 1.112_650_055_45e-10,
    electron_mass: 9.109_383_701_5e-31,
    hartree: 4.359_744_722_207_1e-18,
    reduced_planck: 1.054_571_817e-34,
};

/// The frozen constant set used by every conversion in the crate.
pub const fn constants() -> PhysicalConstants {
    CODATA_2018
}

impl PhysicalConstants {
    /// Atomic unit of electric field, `E_h / (e a0)`, in V/m.
    pub fn atomic_field(&self) -> f64 {
        self.hartree / (self.electron_charge * self.bohr_radius)
    }

    /// Joules per electronvolt.
    pub fn electron_volt(&self) -> f64 {
        self.electron_charge
    }

    /// SI value of one atomic unit of `dim`.
    pub fn atomic_unit(&self, dim: Dimension) -> f64 {
        match dim {
            Dimension::Energy => self.hartree,
            Dimension::Length => self.bohr_radius,
            Dimension::LengthSquared => self.bohr_radius * self.bohr_radius,
            Dimension::Field => self.atomic_field(),
            Dimension::Charge => self.electron_charge,
            Dimension::PolarizabilityVolume => self.bohr_radius.powi(3),
            Dimension::Dimensionless => 1.0,
        }
    }
}

/// Experimental-minus-theoretical Lamb shift of 1s hydrogen, J.
pub const LAMB_SHIFT_EXCESS_1S_J: f64 = 7.024e-29;
/// Experimental-minus-theoretical 2s-2p Lamb shift, J.
pub const LAMB_SHIFT_EXCESS_2S_2P_J: f64 = 7.951e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dimension {
    Energy,
    Length,
    LengthSquared,
    Field,
    Charge,
    PolarizabilityVolume,
    Dimensionless,
}

impl Dimension {
    pub const ALL: [Dimension; 7] = [
        Dimension::Energy,
        Dimension::Length,
        Dimension::LengthSquared,
        Dimension::Field,
        Dimension::Charge,
        Dimension::PolarizabilityVolume,
        Dimension::Dimensionless,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum System {
    #[serde(rename = "SI")]
    Si,
    #[serde(rename = "atomic")]
    Atomic,
}

impl System {
    pub const ALL: [System; 2] = [System::Si, System::Atomic];
}

/// A real value tagged with its dimension and unit system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Dimension,
    pub system: System,
}

impl Quantity {
    pub const fn new(value: f64, dimension: Dimension, system: System) -> Self {
        Self {
            value,
            dimension,
            system,
        }
    }

    pub const fn atomic(value: f64, dimension: Dimension) -> Self {
        Self::new(value, dimension, System::Atomic)
    }

    pub const fn si(value: f64, dimension: Dimension) -> Self {
        Self::new(value, dimension, System::Si)
    }

    pub fn zero_like(&self) -> Self {
        Self {
            value: 0.0,
            ..*self
        }
    }

    fn check_compatible(&self, rhs: &Quantity) -> Result<()> {
        if self.dimension != rhs.dimension || self.system != rhs.system {
            return Err(Error::UnitMismatch {
                lhs_dim: self.dimension,
                lhs_sys: self.system,
                rhs_dim: rhs.dimension,
                rhs_sys: rhs.system,
            });
        }
        Ok(())
    }

    pub fn try_add(self, rhs: Quantity) -> Result<Quantity> {
        self.check_compatible(&rhs)?;
        Ok(Quantity {
            value: self.value + rhs.value,
            ..self
        })
    }

    pub fn try_sub(self, rhs: Quantity) -> Result<Quantity> {
        self.check_compatible(&rhs)?;
        Ok(Quantity {
            value: self.value - rhs.value,
            ..self
        })
    }

    /// Dimensionless ratio of two like quantities.
    pub fn ratio(self, rhs: Quantity) -> Result<f64> {
        self.check_compatible(&rhs)?;
        Ok(self.value / rhs.value)
    }

    pub fn scale(self, factor: f64) -> Quantity {
        Quantity {
            value: self.value * factor,
            ..self
        }
    }

    pub fn expect(self, dimension: Dimension) -> Result<Quantity> {
        if self.dimension != dimension {
            return Err(Error::WrongDimension {
                expected: dimension,
                found: self.dimension,
            });
        }
        Ok(self)
    }

    pub fn to_system(self, system: System) -> Quantity {
        if self.system == system {
            return self;
        }
        let unit = constants().atomic_unit(self.dimension);
        let value = match system {
            System::Si => self.value * unit,
            System::Atomic => self.value / unit,
        };
        Quantity {
            value,
            dimension: self.dimension,
            system,
        }
    }

    pub fn to_si(self) -> Quantity {
        self.to_system(System::Si)
    }

    pub fn to_atomic(self) -> Quantity {
        self.to_system(System::Atomic)
    }

    /// Energy in electronvolts.
    pub fn in_ev(self) -> Result<f64> {
        let e = self.expect(Dimension::Energy)?.to_si();
        Ok(e.value / constants().electron_volt())
    }

    pub fn unit_str(&self) -> &'static str {
        unit_str(self.dimension, self.system)
    }
}

pub fn unit_str(dimension: Dimension, system: System) -> &'static str {
    match (system, dimension) {
        (System::Si, Dimension::Energy) => "J",
        (System::Si, Dimension::Length) => "m",
        (System::Si, Dimension::LengthSquared) => "m^2",
        (System::Si, Dimension::Field) => "V/m",
        (System::Si, Dimension::Charge) => "C",
        (System::Si, Dimension::PolarizabilityVolume) => "m^3",
        (System::Atomic, Dimension::Energy) => "hartree",
        (System::Atomic, Dimension::Length) => "a0",
        (System::Atomic, Dimension::LengthSquared) => "a0^2",
        (System::Atomic, Dimension::Field) => "Eh/(e a0)",
        (System::Atomic, Dimension::Charge) => "e",
        (System::Atomic, Dimension::PolarizabilityVolume) => "a0^3",
        (_, Dimension::Dimensionless) => "1",
    }
}

/// Deformation parameters `(beta, beta')` of the algebra
/// `[X_i, P_j] = i (delta_ij (1 + beta P^2) + beta' P_i P_j)`.
///
/// Both carry dimension length^2 with `hbar = 1` and are stored in `a0^2`.
/// Construction enforces `b^2 = 2 beta - beta' >= 0`, which is the same as
/// `eta >= 1/3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationParams {
    beta: f64,
    beta_prime: f64,
}

impl DeformationParams {
    pub const UNDEFORMED: DeformationParams = DeformationParams {
        beta: 0.0,
        beta_prime: 0.0,
    };

    /// `beta`, `beta'` in units of `a0^2`.
    pub fn new(beta: f64, beta_prime: f64) -> Result<Self> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::invalid(
                "beta",
                format!("must be finite and >= 0, got {beta}"),
            ));
        }
        if !(beta_prime.is_finite() && beta_prime >= 0.0) {
            return Err(Error::invalid(
                "beta_prime",
                format!("must be finite and >= 0, got {beta_prime}"),
            ));
        }
        let b_sq = 2.0 * beta - beta_prime;
        // Allow rounding slack so that eta = 1/3 round-trips.
        if b_sq < -4.0 * f64::EPSILON * (beta + beta_prime) {
            return Err(Error::invalid(
                "beta_prime",
                format!("2*beta - beta' must be >= 0, got {b_sq:e}"),
            ));
        }
        Ok(Self { beta, beta_prime })
    }

    /// `beta`, `beta'` in m^2.
    pub fn from_si(beta_m2: f64, beta_prime_m2: f64) -> Result<Self> {
        let a0_sq = constants().bohr_radius.powi(2);
        Self::new(beta_m2 / a0_sq, beta_prime_m2 / a0_sq)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn beta_prime(&self) -> f64 {
        self.beta_prime
    }

    pub fn beta_si(&self) -> f64 {
        self.beta * constants().bohr_radius.powi(2)
    }

    pub fn beta_prime_si(&self) -> f64 {
        self.beta_prime * constants().bohr_radius.powi(2)
    }

    /// `2 beta - beta'`, clamped at zero.
    pub fn b_squared(&self) -> f64 {
        (2.0 * self.beta - self.beta_prime).max(0.0)
    }

    /// Regularization length `b = sqrt(2 beta - beta')`, in `a0`.
    pub fn b(&self) -> f64 {
        self.b_squared().sqrt()
    }

    /// Minimum position uncertainty `sqrt(beta + beta')`, in `a0`.
    pub fn delta_x_min(&self) -> f64 {
        (self.beta + self.beta_prime).sqrt()
    }

    pub fn is_undeformed(&self) -> bool {
        self.beta == 0.0 && self.beta_prime == 0.0
    }

    /// Both parameters multiplied by `t >= 0`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.beta * t, self.beta_prime * t)
    }
}

/// The `(delta_x_min, eta)` parameterization, with `delta_x_min` in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhenomenologyParams {
    pub delta_x_min: f64,
    pub eta: f64,
}

impl PhenomenologyParams {
    pub fn new(delta_x_min: f64, eta: f64) -> Result<Self> {
        let p = Self { delta_x_min, eta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta_x_min.is_finite() && self.delta_x_min >= 0.0) {
            return Err(Error::invalid(
                "delta_x_min",
                format!("must be finite and >= 0, got {}", self.delta_x_min),
            ));
        }
        if !(self.eta >= 1.0 / 3.0 && self.eta <= 1.0) {
            return Err(Error::invalid(
                "eta",
                format!("must lie in [1/3, 1], got {}", self.eta),
            ));
        }
        Ok(())
    }

    /// `delta_x_min` in `a0`.
    pub fn delta_x_min_atomic(&self) -> f64 {
        self.delta_x_min / constants().bohr_radius
    }

    /// `3 eta - 1`, the factor that multiplies `delta_x^2` in `2 beta - beta'`.
    pub fn asymmetry(&self) -> f64 {
        3.0 * self.eta - 1.0
    }
}

/// `beta = eta dx^2`, `beta' = (1 - eta) dx^2`.
pub fn from_phenomenology(p: PhenomenologyParams) -> Result<DeformationParams> {
    p.validate()?;
    let dx_sq = p.delta_x_min_atomic().powi(2);
    DeformationParams::new(p.eta * dx_sq, (1.0 - p.eta) * dx_sq)
}

/// `dx = sqrt(beta + beta')`, `eta = beta / (beta + beta')`.
pub fn to_phenomenology(d: DeformationParams) -> Result<PhenomenologyParams> {
    let total = d.beta + d.beta_prime;
    if total <= 0.0 {
        return Err(Error::invalid(
            "deformation",
            "eta is undefined for beta = beta' = 0",
        ));
    }
    let eta = (d.beta / total).clamp(1.0 / 3.0, 1.0);
    Ok(PhenomenologyParams {
        delta_x_min: total.sqrt() * constants().bohr_radius,
        eta,
    })
}

/// Energy of a quadratic field expression `coefficient * |E|^2`, where the
/// coefficient is a length^3 (either system) and the field is in any system.
///
/// Returns `4 pi eps0 * coefficient[m^3] * |E|[V/m]^2` in joules.
pub fn quadratic_energy_si(coefficient: Quantity, field: Quantity) -> Result<Quantity> {
    let c = coefficient.expect(Dimension::PolarizabilityVolume)?.to_si();
    let f = field.expect(Dimension::Field)?.to_si();
    let k = constants().vacuum_permittivity_factor;
    Ok(Quantity::si(
        k * c.value * f.value * f.value,
        Dimension::Energy,
    ))
}

/// Energy of a linear field expression `e * length * |E|`, in joules.
pub fn linear_energy_si(length: Quantity, field: Quantity) -> Result<Quantity> {
    let l = length.expect(Dimension::Length)?.to_si();
    let f = field.expect(Dimension::Field)?.to_si();
    let e = constants().electron_charge;
    Ok(Quantity::si(e * l.value * f.value, Dimension::Energy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn constants_are_codata_2018() {
        let c = constants();
        assert_relative_eq!(c.bohr_radius, 5.29177e-11, max_relative = 1e-5);
        assert_relative_eq!(c.electron_charge, 1.60218e-19, max_relative = 1e-5);
        for v in [
            c.electron_charge,
            c.bohr_radius,
            c.vacuum_permittivity_factor,
            c.electron_mass,
            c.hartree,
            c.reduced_planck,
        ] {
            assert!(v > 0.0);
        }
    }

    #[test]
    fn hartree_is_coulomb_energy_at_bohr_radius() {
        let c = constants();
        let coulomb = c.electron_charge.powi(2) / (c.vacuum_permittivity_factor * c.bohr_radius);
        assert_relative_eq!(c.hartree / coulomb, 1.0, max_relative = 1e-6);
        // and hbar^2 / (m a0^2) is the same energy
        let kinetic = c.reduced_planck.powi(2) / (c.electron_mass * c.bohr_radius.powi(2));
        assert_relative_eq!(c.hartree / kinetic, 1.0, max_relative = 1e-6);
    }

    #[test]
    fn eta_one_puts_everything_in_beta() {
        let p = PhenomenologyParams::new(2.86e-17, 1.0).unwrap();
        let d = from_phenomenology(p).unwrap();
        assert_eq!(d.beta_prime(), 0.0);
        assert_relative_eq!(d.beta_si(), 8.1796e-34, max_relative = 1e-12);
    }

    #[test]
    fn eta_one_third_kills_regularizer() {
        let p = PhenomenologyParams::new(1e-15, 1.0 / 3.0).unwrap();
        let d = from_phenomenology(p).unwrap();
        assert!(d.b() < 1e-12 * d.delta_x_min());
        let d = DeformationParams::new(0.3, 0.6).unwrap();
        let p = to_phenomenology(d).unwrap();
        assert_relative_eq!(p.eta, 1.0 / 3.0, max_relative = 1e-15);
        assert_eq!(d.b(), 0.0);
    }

    #[test]
    fn rejects_out_of_range_inputs() {
        assert!(PhenomenologyParams::new(1e-17, 0.3).is_err());
        assert!(PhenomenologyParams::new(1e-17, 1.01).is_err());
        assert!(PhenomenologyParams::new(-1e-17, 0.5).is_err());
        assert!(PhenomenologyParams::new(f64::NAN, 0.5).is_err());
        assert!(DeformationParams::new(-1.0, 0.0).is_err());
        assert!(DeformationParams::new(1.0, 2.5).is_err());
        assert!(to_phenomenology(DeformationParams::UNDEFORMED).is_err());
    }

    #[test]
    fn beta_only_gives_eta_one() {
        let p = to_phenomenology(DeformationParams::new(0.25, 0.0).unwrap()).unwrap();
        assert_eq!(p.eta, 1.0);
        assert_relative_eq!(p.delta_x_min_atomic(), 0.5, max_relative = 1e-14);
    }

    #[test]
    fn quantity_arithmetic_rejects_every_mismatch() {
        for &d1 in &Dimension::ALL {
            for &s1 in &System::ALL {
                for &d2 in &Dimension::ALL {
                    for &s2 in &System::ALL {
                        let a = Quantity::new(1.0, d1, s1);
                        let b = Quantity::new(2.0, d2, s2);
                        let same = d1 == d2 && s1 == s2;
                        assert_eq!(a.try_add(b).is_ok(), same, "{d1:?}/{s1:?} + {d2:?}/{s2:?}");
                        assert_eq!(a.try_sub(b).is_ok(), same);
                        assert_eq!(a.ratio(b).is_ok(), same);
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_ordinary_bound_in_joules() {
        let a0_cubed = Quantity::atomic(-8.0 / 3.0, Dimension::PolarizabilityVolume);
        let field = Quantity::si(1e7, Dimension::Field);
        let e = quadratic_energy_si(a0_cubed, field).unwrap();
        assert_eq!(e.dimension, Dimension::Energy);
        assert_relative_eq!(e.value, -4.390e-27, max_relative = 2e-3);
        let zero = quadratic_energy_si(a0_cubed, field.zero_like()).unwrap();
        assert_eq!(zero.value, 0.0);
        assert!(quadratic_energy_si(field, field).is_err());
    }

    #[test]
    fn quadratic_sigma_coefficient_in_joules() {
        let c = constants();
        let dx = 2.86e-17;
        let coeff = Quantity::si(
            -(4.0 / 3.0) * c.bohr_radius * dx * dx * 2.0,
            Dimension::PolarizabilityVolume,
        );
        let e = quadratic_energy_si(coeff, Quantity::si(1e7, Dimension::Field)).unwrap();
        assert_relative_eq!(e.value, -1.283e-39, max_relative = 5e-3);
    }

    #[test]
    fn si_factor_matches_atomic_route() {
        // hartree * (E / E_au)^2 == 4 pi eps0 a0^3 E^2
        let field = Quantity::si(3.3e8, Dimension::Field);
        let via_atomic = field.to_atomic().value.powi(2) * constants().hartree;
        let via_si = quadratic_energy_si(
            Quantity::atomic(1.0, Dimension::PolarizabilityVolume),
            field,
        )
        .unwrap();
        assert_relative_eq!(via_si.value, via_atomic, max_relative = 1e-9);
    }

    #[test]
    fn conversion_round_trips() {
        for &d in &Dimension::ALL {
            let q = Quantity::si(1.234e-5, d);
            assert_relative_eq!(q.to_atomic().to_si().value, q.value, max_relative = 1e-14);
        }
        let one_hartree = Quantity::atomic(1.0, Dimension::Energy);
        assert_relative_eq!(one_hartree.in_ev().unwrap(), 27.211386, max_relative = 1e-6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn phenomenology_round_trip(dx in 1e-20f64..1e-9, eta in (1.0f64 / 3.0)..=1.0) {
            let p = PhenomenologyParams::new(dx, eta).unwrap();
            let d = from_phenomenology(p).unwrap();
            let q = to_phenomenology(d).unwrap();
            prop_assert!((q.delta_x_min - dx).abs() <= 1e-12 * dx);
            prop_assert!((q.eta - eta).abs() <= 1e-12 * eta);
            // 2 beta - beta' = (3 eta - 1) dx^2
            let dx_au = p.delta_x_min_atomic();
            let lhs = 2.0 * d.beta() - d.beta_prime();
            let rhs = (3.0 * eta - 1.0) * dx_au * dx_au;
            prop_assert!((lhs - rhs).abs() <= 1e-12 * dx_au * dx_au);
        }

        #[test]
        fn b_increases_with_eta(dx in 1e-18f64..1e-10, e1 in (1.0f64 / 3.0)..=1.0, e2 in (1.0f64 / 3.0)..=1.0) {
            let (lo, hi) = if e1 < e2 { (e1, e2) } else { (e2, e1) };
            prop_assume!(hi - lo > 1e-9);
            let b_lo = from_phenomenology(PhenomenologyParams::new(dx, lo).unwrap()).unwrap().b();
            let b_hi = from_phenomenology(PhenomenologyParams::new(dx, hi).unwrap()).unwrap().b();
            prop_assert!(b_hi > b_lo);
        }
    }
}
