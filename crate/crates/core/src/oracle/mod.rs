//! Independent numerical evaluation of every closed form in the crate.
//!
//! Radial integrals use adaptive Gauss-Kronrod quadrature with forced
//! breakpoints at `r = b` (the regularization scale), on a geometric ladder up
//! to `a0`, and at multiples of `n^2 a0` where the orbitals peak. The action
//! of `p^2` on an eigenstate uses `p^2 psi = 2 (E_n + 1/r) psi`; where an
//! operator product couples different states, explicit analytic radial
//! derivatives are used instead.

pub mod commutator;
pub mod suite;

use crate::error::Result;
use crate::hydrogen::{cos_theta_element, energy_value, QuantumNumbers, RadialState};
use crate::quadrature::{integrate, QuadratureSpec};
use crate::stark::FieldSpec;
use crate::units::{DeformationParams, Dimension, Quantity};

pub use commutator::{
    commutator_residual, first_order_residual, scaling_exponent, CommutatorResidual, ResidualNorms,
    TestFunction,
};
pub use suite::{run_suite, Check, FaultInjection, Profile, SuiteReport};

fn breakpoints(n_max: u32, b: f64) -> Vec<f64> {
    let n2 = (n_max * n_max) as f64;
    let mut pts = vec![
        0.0,
        1.0,
        n2,
        2.0 * n2,
        4.0 * n2,
        8.0 * n2,
        80.0 * n_max as f64,
    ];
    if b > 0.0 && b < 1.0 {
        let mut r = b;
        while r < 1.0 {
            pts.push(r);
            r *= 4.0;
        }
    }
    pts
}

/// `int_0^inf f(r) dr` for an integrand built from orbitals with principal
/// quantum number at most `n_max`, with a forced subdivision at `r = b`.
pub fn integrate_radial<F: Fn(f64) -> f64>(
    f: F,
    n_max: u32,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    Ok(integrate(f, &breakpoints(n_max, b), spec)?.value)
}

/// `int_0^inf g(r) R_nl(r)^2 r^2 dr`.
pub fn radial_integral<F: Fn(f64) -> f64>(
    integrand: F,
    qn: QuantumNumbers,
    spec: &QuadratureSpec,
) -> Result<f64> {
    radial_integral_near(integrand, qn, 0.0, spec)
}

/// As [`radial_integral`], with an extra subdivision ladder starting at `r = b`.
pub fn radial_integral_near<F: Fn(f64) -> f64>(
    integrand: F,
    qn: QuantumNumbers,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let state = RadialState::new(qn);
    integrate_radial(
        |r| {
            let rr = state.value(r);
            integrand(r) * rr * rr * r * r
        },
        qn.n(),
        b,
        spec,
    )
}

/// `1/r - 1/sqrt(r^2 + b^2)`, written without cancellation.
pub fn coulomb_difference(r: f64, b: f64) -> f64 {
    let s = r.hypot(b);
    b * b / (r * s * (s + r))
}

/// `<psi| V_reg |psi>` for an s state, with
/// `V_reg = b' p^4/2 + (2b-b')/4 (r^-1 p^2 + p^2 r^-1) + 1/r - 1/sqrt(r^2+b^2)`.
fn s_shift_numeric(
    qn: QuantumNumbers,
    d: DeformationParams,
    spec: &QuadratureSpec,
) -> Result<Quantity> {
    let e = energy_value(qn.n());
    // p^2 psi = 2 (E + 1/r) psi
    let p2 = |r: f64| 2.0 * (e + 1.0 / r);
    let p4 = radial_integral(|r| p2(r).powi(2), qn, spec)?;
    let sym = radial_integral(|r| 2.0 * p2(r) / r, qn, spec)?;
    let b = d.b();
    let coulomb = if b > 0.0 {
        radial_integral_near(|r| coulomb_difference(r, b), qn, b, spec)?
    } else {
        0.0
    };
    let c = d.b_squared() / 4.0;
    let value = 0.5 * d.beta_prime() * p4 + c * sym + coulomb;
    Ok(Quantity::atomic(value, Dimension::Energy))
}

/// Exact first-order `<1s| V_reg |1s>` by quadrature, in hartree.
pub fn shift_1s_numeric(d: DeformationParams, spec: &QuadratureSpec) -> Result<Quantity> {
    s_shift_numeric(QuantumNumbers::new(1, 0, 0)?, d, spec)
}

/// Exact first-order `<2s| V_reg |2s>` by quadrature, in hartree.
pub fn shift_2s_numeric(d: DeformationParams, spec: &QuadratureSpec) -> Result<Quantity> {
    s_shift_numeric(QuantumNumbers::new(2, 0, 0)?, d, spec)
}

/// `<1s| 1/r - 1/sqrt(r^2+b^2) |1s>` or the 2s analogue, by quadrature.
pub fn regularized_coulomb_numeric(
    qn: QuantumNumbers,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    radial_integral_near(|r| coulomb_difference(r, b), qn, b, spec)
}

/// `<psi| V |psi>` for `l >= 1` with
/// `V = b' p^4/2 + (2b-b')/4 (r^-1 p^2 + p^2 r^-1 + 2 r^-3)`,
/// using explicit radial derivatives for `p^2 psi`.
pub fn shift_general_numeric(
    qn: QuantumNumbers,
    d: DeformationParams,
    spec: &QuadratureSpec,
) -> Result<Quantity> {
    let state = RadialState::new(qn);
    let n = qn.n();
    let p4 = integrate_radial(|r| (state.laplacian(r) * r).powi(2), n, 0.0, spec)?;
    let sym = integrate_radial(
        |r| -2.0 * state.value(r) * state.laplacian(r) * r,
        n,
        0.0,
        spec,
    )?;
    let inv_r3 = radial_integral(|r| r.powi(-3), qn, spec)?;
    let c = d.b_squared() / 4.0;
    let value = 0.5 * d.beta_prime() * p4 + c * (sym + 2.0 * inv_r3);
    Ok(Quantity::atomic(value, Dimension::Energy))
}

/// `<a| z |b>` in `a0`: radial integral by quadrature times the angular factor.
pub fn z_element_numeric(
    a: QuantumNumbers,
    b: QuantumNumbers,
    spec: &QuadratureSpec,
) -> Result<Quantity> {
    let ang = if a.m() == b.m() {
        cos_theta_element(a.l(), b.l(), b.m())
    } else {
        0.0
    };
    let (ra, rb) = (RadialState::new(a), RadialState::new(b));
    let radial = integrate_radial(
        |r| ra.value(r) * rb.value(r) * r.powi(3),
        a.n().max(b.n()),
        0.0,
        spec,
    )?;
    Ok(Quantity::atomic(ang * radial, Dimension::Length))
}

/// Zeroth-order value and first-order deformation correction, kept apart so
/// the correction can be compared on its own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expansion {
    pub zeroth: Quantity,
    pub correction: Quantity,
}

impl Expansion {
    pub fn total(&self) -> Quantity {
        self.zeroth
            .try_add(self.correction)
            .expect("same dimension")
    }
}

/// `<1s| Z^2 |1s>` to first order, `Z = z + (2b-b')/4 (z p^2 + p^2 z)`.
///
/// The correction is `c [ <z^2 psi|p^2 psi> + <psi|p^2 z^2 psi> + 2 <z psi|p^2|z psi> ]`,
/// with the last term as `||grad(z psi)||^2`.
pub fn z_sq_numeric(d: DeformationParams, spec: &QuadratureSpec) -> Result<Expansion> {
    let qn = QuantumNumbers::new(1, 0, 0)?;
    let s = RadialState::new(qn);
    let z2 = radial_integral(|r| r * r / 3.0, qn, spec)?;
    let cross = integrate_radial(
        |r| -s.value(r) * s.laplacian(r) * r.powi(4) / 3.0,
        1,
        0.0,
        spec,
    )?;
    let grad = integrate_radial(
        |r| {
            let (f, f1, _) = s.derivatives(r);
            (f * f + 2.0 / 3.0 * r * f * f1 + r * r / 3.0 * f1 * f1) * r * r
        },
        1,
        0.0,
        spec,
    )?;
    let c = d.b_squared() / 4.0;
    Ok(Expansion {
        zeroth: Quantity::atomic(z2, Dimension::LengthSquared),
        correction: Quantity::atomic(c * (2.0 * cross + 2.0 * grad), Dimension::LengthSquared),
    })
}

/// `e|E| <2,1,0| Z |2,0,0>` to first order, in hartree.
pub fn ml_stark_element_numeric(
    f: FieldSpec,
    d: DeformationParams,
    spec: &QuadratureSpec,
) -> Result<Expansion> {
    let s2 = RadialState::new(QuantumNumbers::new(2, 0, 0)?);
    let p2 = RadialState::new(QuantumNumbers::new(2, 1, 0)?);
    let ang = cos_theta_element(1, 0, 0);
    let z = integrate_radial(|r| p2.value(r) * s2.value(r) * r.powi(3), 2, 0.0, spec)?;
    // <210| z p^2 |200> and <p^2 210| z |200>
    let zp2 = integrate_radial(|r| -p2.value(r) * s2.laplacian(r) * r.powi(3), 2, 0.0, spec)?;
    let p2z = integrate_radial(|r| -p2.laplacian(r) * s2.value(r) * r.powi(3), 2, 0.0, spec)?;
    let field = f.atomic();
    let c = d.b_squared() / 4.0;
    Ok(Expansion {
        zeroth: Quantity::atomic(field * ang * z, Dimension::Energy),
        correction: Quantity::atomic(field * c * ang * (zp2 + p2z), Dimension::Energy),
    })
}
