//! First-order minimum-length corrections to hydrogen levels.
//!
//! Three closed forms are provided:
//!
//! * [`shift_general`]: the D-dimensional correction from the Hamiltonian
//!   with the `(D-1)/r^3` contact-like term. It diverges for `D = 3, l = 0`.
//! * [`shift_1s`], [`shift_2s`]: the s-state corrections from the
//!   regularized Hamiltonian, where `1/r` is replaced by
//!   `1/sqrt(r^2 + b^2)` with `b^2 = 2 beta - beta'`. These contain the
//!   non-analytic `b^2 ln b^2` term.
//!
//! At `b = 0` (eta = 1/3) the `x ln x` terms take their limit value 0.
//! All energies are in hartree with `beta`, `beta'` in `a0^2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen::{energy_value, r_power, QuantumNumbers};
use crate::spectrum::PerturbationMatrix;
use crate::units::{DeformationParams, Dimension, Quantity, System};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    GeneralD,
    Regularized1s,
    Regularized2s,
    VmlElement,
}

impl Formula {
    pub fn id(&self) -> &'static str {
        match self {
            Formula::GeneralD => "general_D",
            Formula::Regularized1s => "regularized_1s",
            Formula::Regularized2s => "regularized_2s",
            Formula::VmlElement => "vml_element",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftResult {
    pub value: Quantity,
    pub formula: Formula,
    pub state: QuantumNumbers,
    pub deformation: DeformationParams,
    pub dimension: u32,
    /// The `b = 0` limit branch was taken for the logarithmic terms.
    pub limit: bool,
}

impl ShiftResult {
    pub fn hartree(&self) -> f64 {
        self.value.value
    }

    pub fn provenance(&self) -> String {
        let mut id = self.formula.id().to_string();
        if self.formula == Formula::GeneralD {
            id.push_str(&format!("(D={})", self.dimension));
        }
        if self.limit {
            id.push_str(";limit b=0");
        }
        id
    }
}

fn energy(value: f64) -> Quantity {
    Quantity::atomic(value, Dimension::Energy)
}

/// `x ln(x / scale)` with its continuous extension to `x = 0`.
fn x_log_x(x: f64, scale: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (x / scale).ln()
    }
}

/// D-dimensional first-order correction
/// `(1/n^3) [ (D-1)(2b-b')/(4 l~(l~+1)(l~+1/2)) + (2b+b')/(l~+1/2) - (b+b')/n~ ]`
/// with `n~ = n + (D-3)/2`, `l~ = l + (D-3)/2`.
pub fn shift_general(
    qn: QuantumNumbers,
    dimension: u32,
    d: DeformationParams,
) -> Result<ShiftResult> {
    if dimension < 3 {
        return Err(Error::invalid(
            "D",
            format!("dimension must be >= 3, got {dimension}"),
        ));
    }
    if dimension == 3 && qn.l() == 0 {
        return Err(Error::SingularCase(format!(
            "the general correction is singular in D=3 and l=0 ({qn}); \
             use shift_1s / shift_2s for s states"
        )));
    }
    let shift = (dimension as f64 - 3.0) / 2.0;
    let n = qn.n() as f64;
    let n_bar = n + shift;
    let l_bar = qn.l() as f64 + shift;
    let (beta, beta_p) = (d.beta(), d.beta_prime());
    let contact = (dimension as f64 - 1.0) * (2.0 * beta - beta_p)
        / (4.0 * l_bar * (l_bar + 1.0) * (l_bar + 0.5));
    let value =
        (contact + (2.0 * beta + beta_p) / (l_bar + 0.5) - (beta + beta_p) / n_bar) / n.powi(3);
    Ok(ShiftResult {
        value: energy(value),
        formula: Formula::GeneralD,
        state: qn,
        deformation: d,
        dimension,
        limit: false,
    })
}

/// `3b + b' - (2b - b') [ ln((2b - b')/a0^2) + 2 gamma + 1 ]`.
pub fn shift_1s(d: DeformationParams) -> ShiftResult {
    let x = d.b_squared();
    let value = 3.0 * d.beta() + d.beta_prime() - x_log_x(x, 1.0) - x * (2.0 * EULER_GAMMA + 1.0);
    ShiftResult {
        value: energy(value),
        formula: Formula::Regularized1s,
        state: QuantumNumbers::new(1, 0, 0).expect("valid"),
        deformation: d,
        dimension: 3,
        limit: x == 0.0 && !d.is_undeformed(),
    }
}

/// `(1/8) { (7b + 3b')/2 - (2b - b') [ ln((2b - b')/4a0^2) + 2 gamma + 5/2 ] }`.
pub fn shift_2s(d: DeformationParams) -> ShiftResult {
    let x = d.b_squared();
    let value = ((7.0 * d.beta() + 3.0 * d.beta_prime()) / 2.0
        - x_log_x(x, 4.0)
        - x * (2.0 * EULER_GAMMA + 2.5))
        / 8.0;
    ShiftResult {
        value: energy(value),
        formula: Formula::Regularized2s,
        state: QuantumNumbers::new(2, 0, 0).expect("valid"),
        deformation: d,
        dimension: 3,
        limit: x == 0.0 && !d.is_undeformed(),
    }
}

/// Within-level element of `V_ML = beta' p^4/2m + (2b-b')/4 (r^-1 p^2 + p^2 r^-1 + 2 r^-3)`
/// for `l >= 1`, assembled from the `2 m beta' E_n^2` piece of `p^4` plus
/// closed-form radial moments, with `p^2 = 2(E_n + 1/r)` on eigenstates.
fn vml_element_l_positive(qn: QuantumNumbers, d: DeformationParams) -> f64 {
    let e = energy_value(qn.n());
    let inv_r = r_power(qn, -1);
    let inv_r2 = r_power(qn, -2);
    let inv_r3 = r_power(qn, -3);
    let c = (2.0 * d.beta() - d.beta_prime()) / 4.0;
    let kinetic = 2.0 * d.beta_prime() * e * e + 2.0 * d.beta_prime() * (2.0 * e * inv_r + inv_r2);
    let contact = c * (4.0 * (e * inv_r + inv_r2) + 2.0 * inv_r3);
    kinetic + contact
}

/// `<a| V_ML |b>` in hartree.
///
/// The element vanishes unless `l = l'` and `m = m'`. For s states it is the
/// regularized shift; for `l >= 1` it is the within-level expectation of the
/// unregularized perturbation. Elements between different `n` are not
/// provided.
pub fn vml_matrix_element(
    a: QuantumNumbers,
    b: QuantumNumbers,
    d: DeformationParams,
) -> Result<Quantity> {
    if a.l() != b.l() || a.m() != b.m() {
        return Ok(energy(0.0));
    }
    if a.n() != b.n() {
        return Err(Error::UnsupportedElement(format!(
            "{a} vs {b}: elements between different levels have no closed form here"
        )));
    }
    match (a.n(), a.l()) {
        (1, 0) => Ok(shift_1s(d).value),
        (2, 0) => Ok(shift_2s(d).value),
        (n, 0) => Err(Error::UnsupportedElement(format!(
            "|{n},0,0>: the regularized s-state correction is only known for n <= 2"
        ))),
        _ => Ok(energy(vml_element_l_positive(a, d))),
    }
}

/// `V_ML` on the n = 2 level in the basis `|2,0,0>, |2,1,0>, |2,1,1>, |2,1,-1>`.
pub fn vml_matrix_n2(d: DeformationParams) -> PerturbationMatrix {
    let basis = QuantumNumbers::shell(2).expect("n = 2");
    let mut m = PerturbationMatrix::zeros(basis.clone(), System::Atomic);
    m.set(0, 0, shift_2s(d).hartree());
    let p = shift_general(basis[1], 3, d)
        .expect("l = 1 is regular")
        .hartree();
    for i in 1..4 {
        m.set(i, i, p);
    }
    m
}
