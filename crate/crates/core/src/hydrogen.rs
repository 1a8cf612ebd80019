//! Unperturbed hydrogen: levels, radial functions and the expectation values
//! and dipole matrix elements the perturbative formulas are built from.
//!
//! All lengths are in `a0`, energies in hartree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{Dimension, Quantity};

/// Hydrogen state label `|n, l, m>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    n: u32,
    l: u32,
    m: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if n == 0 || l >= n || m.unsigned_abs() > l {
            return Err(Error::InvalidQuantumNumbers { n, l, m });
        }
        Ok(Self { n, l, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Every state with principal number `n`, ordered by `l`, then `m`
    /// as `0, 1, -1, 2, -2, ...`.
    pub fn shell(n: u32) -> Result<Vec<QuantumNumbers>> {
        if n == 0 {
            return Err(Error::InvalidQuantumNumbers { n, l: 0, m: 0 });
        }
        let mut out = Vec::with_capacity((n * n) as usize);
        for l in 0..n {
            out.push(Self { n, l, m: 0 });
            for m in 1..=l as i32 {
                out.push(Self { n, l, m });
                out.push(Self { n, l, m: -m });
            }
        }
        Ok(out)
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{}>", self.n, self.l, self.m)
    }
}

/// `E_n = -1 / (2 n^2)` hartree.
pub fn energy_level(n: u32) -> Result<Quantity> {
    if n == 0 {
        return Err(Error::invalid("n", "principal quantum number must be >= 1"));
    }
    let n = n as f64;
    Ok(Quantity::atomic(-0.5 / (n * n), Dimension::Energy))
}

pub(crate) fn energy_value(n: u32) -> f64 {
    let n = n as f64;
    -0.5 / (n * n)
}

/// Generalized Laguerre polynomial `L_k^alpha(x)` by the three-term forward
/// recurrence.
pub fn laguerre(k: u32, alpha: f64, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for j in 1..k {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn laguerre_derivatives(k: u32, alpha: f64, x: f64) -> (f64, f64, f64) {
    // d/dx L_k^a = -L_{k-1}^{a+1}
    let d1 = if k >= 1 {
        -laguerre(k - 1, alpha + 1.0, x)
    } else {
        0.0
    };
    let d2 = if k >= 2 {
        laguerre(k - 2, alpha + 2.0, x)
    } else {
        0.0
    };
    (laguerre(k, alpha, x), d1, d2)
}

/// Coefficients (ascending powers of x) of `L_k^alpha`, built with the same
/// recurrence on polynomials.
fn laguerre_coefficients(k: u32, alpha: f64) -> Vec<f64> {
    let mut prev = vec![1.0];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![1.0 + alpha, -1.0];
    for j in 1..k {
        let j = j as f64;
        let mut next = vec![0.0; cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i] += (2.0 * j + 1.0 + alpha) * c;
            next[i + 1] -= c;
        }
        for (i, p) in prev.iter().enumerate() {
            next[i] -= (j + alpha) * p;
        }
        for c in &mut next {
            *c /= j + 1.0;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized radial function
/// `R_nl(r) = N (2r/n)^l exp(-r/n) L_{n-l-1}^{2l+1}(2r/n)`, positive as
/// `r -> 0+`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    qn: QuantumNumbers,
    normalization: f64,
}

impl RadialState {
    pub fn new(qn: QuantumNumbers) -> Self {
        let n = qn.n as f64;
        // (n-l-1)! / (n+l)! as a product, no factorials
        let mut ratio = 1.0;
        for k in (qn.n - qn.l)..=(qn.n + qn.l) {
            ratio /= k as f64;
        }
        let normalization = ((2.0 / n).powi(3) * ratio / (2.0 * n)).sqrt();
        Self { qn, normalization }
    }

    pub fn quantum_numbers(&self) -> QuantumNumbers {
        self.qn
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    fn degree(&self) -> u32 {
        self.qn.n - self.qn.l - 1
    }

    fn alpha(&self) -> f64 {
        (2 * self.qn.l + 1) as f64
    }

    pub fn value(&self, r: f64) -> f64 {
        let n = self.qn.n as f64;
        let rho = 2.0 * r / n;
        self.normalization
            * rho.powi(self.qn.l as i32)
            * (-0.5 * rho).exp()
            * laguerre(self.degree(), self.alpha(), rho)
    }

    /// `(R, dR/dr, d^2R/dr^2)` from analytic derivatives of each factor.
    pub fn derivatives(&self, r: f64) -> (f64, f64, f64) {
        let n = self.qn.n as f64;
        let l = self.qn.l as i32;
        let rho = 2.0 * r / n;
        let (w, w1, w2) = laguerre_derivatives(self.degree(), self.alpha(), rho);
        let u = rho.powi(l);
        let u1 = if l >= 1 {
            l as f64 * rho.powi(l - 1)
        } else {
            0.0
        };
        let u2 = if l >= 2 {
            (l * (l - 1)) as f64 * rho.powi(l - 2)
        } else {
            0.0
        };
        let v = (-0.5 * rho).exp();
        let v1 = -0.5 * v;
        let v2 = 0.25 * v;
        let f = u * v * w;
        let f1 = u1 * v * w + u * v1 * w + u * v * w1;
        let f2 =
            u2 * v * w + u * v2 * w + u * v * w2 + 2.0 * (u1 * v1 * w + u1 * v * w1 + u * v1 * w1);
        let s = 2.0 / n;
        let k = self.normalization;
        (k * f, k * f1 * s, k * f2 * s * s)
    }

    /// Radial part of `nabla^2 (R Y_lm)`:
    /// `R'' + 2R'/r - l(l+1) R / r^2`, from explicit derivatives.
    pub fn laplacian(&self, r: f64) -> f64 {
        let (f, f1, f2) = self.derivatives(r);
        let l = self.qn.l as f64;
        f2 + 2.0 * f1 / r - l * (l + 1.0) * f / (r * r)
    }

    /// `R(r)` as `exp(-r/n) * sum_j c_j r^j`; returns `(c, 1/n)`.
    pub fn polynomial(&self) -> (Vec<f64>, f64) {
        let n = self.qn.n as f64;
        let s = 2.0 / n;
        let lag = laguerre_coefficients(self.degree(), self.alpha());
        let shift = self.qn.l as usize;
        let mut c = vec![0.0; lag.len() + shift];
        let mut pow = s.powi(shift as i32);
        for (i, a) in lag.iter().enumerate() {
            c[i + shift] = self.normalization * a * pow;
            pow *= s;
        }
        (c, 1.0 / n)
    }
}

/// `int_0^inf R_a(r) R_b(r) r^power dr`, evaluated exactly from the
/// polynomial forms. Negative powers are fine as long as every term stays
/// integrable at the origin.
pub fn radial_overlap_exact(a: &RadialState, b: &RadialState, power: i32) -> Result<f64> {
    let (ca, la) = a.polynomial();
    let (cb, lb) = b.polynomial();
    let lambda = la + lb;
    let mut prod = vec![0.0; ca.len() + cb.len() - 1];
    for (i, x) in ca.iter().enumerate() {
        for (j, y) in cb.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    let mut total = 0.0;
    for (i, c) in prod.iter().enumerate() {
        if *c == 0.0 {
            continue;
        }
        let j = i as i32 + power;
        if j < 0 {
            return Err(Error::SingularCase(format!(
                "radial integral of r^{j} diverges at the origin"
            )));
        }
        // j! / lambda^(j+1)
        let mut moment = 1.0 / lambda;
        for k in 1..=j {
            moment *= k as f64 / lambda;
        }
        total += c * moment;
    }
    Ok(total)
}

/// `<r^k>` in units of `a0^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialMoment {
    pub power: i32,
    pub value: f64,
}

impl RadialMoment {
    /// As a tagged quantity, for the powers the dimension enum covers.
    pub fn quantity(&self) -> Option<Quantity> {
        let dim = match self.power {
            1 => Dimension::Length,
            2 => Dimension::LengthSquared,
            _ => return None,
        };
        Some(Quantity::atomic(self.value, dim))
    }
}

/// Closed-form `<nlm| r^k |nlm>` for `k in {-3, -2, -1, 1, 2}`.
pub fn expectation_r_power(qn: QuantumNumbers, k: i32) -> Result<RadialMoment> {
    let n = qn.n as f64;
    let l = qn.l as f64;
    let ll = l * (l + 1.0);
    let value = match k {
        1 => (3.0 * n * n - ll) / 2.0,
        2 => n * n * (5.0 * n * n + 1.0 - 3.0 * ll) / 2.0,
        -1 => 1.0 / (n * n),
        -2 => 1.0 / (n.powi(3) * (l + 0.5)),
        -3 => {
            if qn.l == 0 {
                return Err(Error::SingularCase(
                    "<r^-3> diverges for l = 0 states".into(),
                ));
            }
            1.0 / (n.powi(3) * l * (l + 0.5) * (l + 1.0))
        }
        _ => {
            return Err(Error::invalid(
                "k",
                format!("only k in {{-3,-2,-1,1,2}} is supported, got {k}"),
            ))
        }
    };
    Ok(RadialMoment { power: k, value })
}

pub(crate) fn r_power(qn: QuantumNumbers, k: i32) -> f64 {
    expectation_r_power(qn, k)
        .map(|q| q.value)
        .expect("power in supported set")
}

/// `<l', m | cos(theta) | l, m>` for the real-normalized spherical harmonics.
pub fn cos_theta_element(l_prime: u32, l: u32, m: i32) -> f64 {
    let lf = l as f64;
    let m2 = (m * m) as f64;
    if l_prime == l + 1 {
        (((lf + 1.0).powi(2) - m2) / ((2.0 * lf + 1.0) * (2.0 * lf + 3.0))).sqrt()
    } else if l_prime + 1 == l {
        ((lf * lf - m2) / ((2.0 * lf - 1.0) * (2.0 * lf + 1.0))).sqrt()
    } else {
        0.0
    }
}

/// `<a| z |b>` in `a0`.
pub fn z_matrix_element(a: QuantumNumbers, b: QuantumNumbers) -> Result<Quantity> {
    let ang = if a.m == b.m {
        cos_theta_element(a.l, b.l, b.m)
    } else {
        0.0
    };
    if ang == 0.0 {
        return Ok(Quantity::atomic(0.0, Dimension::Length));
    }
    let radial = radial_overlap_exact(&RadialState::new(a), &RadialState::new(b), 3)?;
    Ok(Quantity::atomic(ang * radial, Dimension::Length))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn qn(n: u32, l: u32, m: i32) -> QuantumNumbers {
        QuantumNumbers::new(n, l, m).unwrap()
    }

    fn all_states(max_n: u32) -> Vec<QuantumNumbers> {
        (1..=max_n)
            .flat_map(|n| QuantumNumbers::shell(n).unwrap())
            .collect()
    }

    #[test]
    fn validates_labels() {
        assert!(QuantumNumbers::new(0, 0, 0).is_err());
        assert!(QuantumNumbers::new(2, 2, 0).is_err());
        assert!(QuantumNumbers::new(2, 1, 2).is_err());
        assert!(QuantumNumbers::new(2, 1, -1).is_ok());
        assert_eq!(QuantumNumbers::shell(2).unwrap().len(), 4);
        assert_eq!(QuantumNumbers::shell(3).unwrap().len(), 9);
    }

    #[test]
    fn levels() {
        assert_eq!(energy_level(1).unwrap().value, -0.5);
        assert_eq!(energy_level(2).unwrap().value, -0.125);
        let gap = energy_level(2)
            .unwrap()
            .try_sub(energy_level(1).unwrap())
            .unwrap();
        assert_eq!(gap.value, 3.0 / 8.0);
        assert!(energy_level(0).is_err());
    }

    #[test]
    fn laguerre_low_orders() {
        let x = 0.7;
        assert_relative_eq!(
            laguerre(2, 1.0, x),
            0.5 * (x * x - 6.0 * x + 6.0),
            epsilon = 1e-14
        );
        assert_relative_eq!(
            laguerre(2, 3.0, x),
            0.5 * (x * x - 10.0 * x + 20.0),
            epsilon = 1e-14
        );
        let c = laguerre_coefficients(3, 2.0);
        let direct: f64 = c
            .iter()
            .enumerate()
            .map(|(i, a)| a * x.powi(i as i32))
            .sum();
        assert_relative_eq!(direct, laguerre(3, 2.0, x), epsilon = 1e-13);
    }

    #[test]
    fn textbook_radial_functions() {
        let r = 1.3;
        assert_relative_eq!(
            RadialState::new(qn(1, 0, 0)).value(r),
            2.0 * (-r).exp(),
            epsilon = 1e-14
        );
        let r20 = (2.0 - r) * (-r / 2.0).exp() / (2.0 * 2f64.sqrt());
        assert_relative_eq!(RadialState::new(qn(2, 0, 0)).value(r), r20, epsilon = 1e-14);
        let r21 = r * (-r / 2.0).exp() / (2.0 * 6f64.sqrt());
        assert_relative_eq!(RadialState::new(qn(2, 1, 0)).value(r), r21, epsilon = 1e-14);
    }

    #[test]
    fn phase_is_positive_at_origin() {
        for s in all_states(4) {
            assert!(RadialState::new(s).value(1e-3) > 0.0, "{s}");
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-4;
        for s in all_states(4) {
            let st = RadialState::new(s);
            for &r in &[0.3, 1.7, 6.0] {
                let (_, d1, d2) = st.derivatives(r);
                let fd1 = (st.value(r + h) - st.value(r - h)) / (2.0 * h);
                let fd2 = (st.value(r + h) - 2.0 * st.value(r) + st.value(r - h)) / (h * h);
                assert_relative_eq!(d1, fd1, epsilon = 1e-7);
                assert_relative_eq!(d2, fd2, epsilon = 1e-5);
            }
        }
    }

    #[test]
    fn laplacian_satisfies_schrodinger_equation() {
        // -1/2 nabla^2 psi - psi / r = E_n psi
        for s in all_states(4) {
            let st = RadialState::new(s);
            let e = energy_value(s.n());
            for &r in &[0.05, 0.9, 3.1, 11.0] {
                let lhs = -0.5 * st.laplacian(r) - st.value(r) / r;
                assert_relative_eq!(lhs, e * st.value(r), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn exact_normalization() {
        for s in all_states(4) {
            let st = RadialState::new(s);
            assert_relative_eq!(
                radial_overlap_exact(&st, &st, 2).unwrap(),
                1.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn closed_forms_agree_with_exact_moments() {
        for s in all_states(4) {
            let st = RadialState::new(s);
            for k in [-2, -1, 1, 2] {
                let exact = radial_overlap_exact(&st, &st, 2 + k).unwrap();
                assert_relative_eq!(r_power(s, k), exact, max_relative = 1e-11);
            }
            if s.l() >= 1 {
                let exact = radial_overlap_exact(&st, &st, -1).unwrap();
                assert_relative_eq!(r_power(s, -3), exact, max_relative = 1e-11);
            }
        }
        assert_eq!(r_power(qn(1, 0, 0), -1), 1.0);
        assert_eq!(r_power(qn(1, 0, 0), 2), 3.0);
        assert!(expectation_r_power(qn(2, 0, 0), -3).is_err());
        assert!(expectation_r_power(qn(2, 0, 0), 3).is_err());
    }

    #[test]
    fn kramers_recurrence() {
        // (k+1)/n^2 <r^k> - (2k+1) <r^(k-1)> + k/4 ((2l+1)^2 - k^2) <r^(k-2)> = 0
        let moment = |s: QuantumNumbers, k: i32| if k == 0 { 1.0 } else { r_power(s, k) };
        for s in all_states(3) {
            let n2 = (s.n() * s.n()) as f64;
            let l = s.l() as f64;
            let ks: &[i32] = if s.l() >= 1 {
                &[-1, 0, 1, 2]
            } else {
                &[0, 1, 2]
            };
            for &k in ks {
                let kf = k as f64;
                let lhs = (kf + 1.0) / n2 * moment(s, k) - (2.0 * kf + 1.0) * moment(s, k - 1)
                    + kf / 4.0 * ((2.0 * l + 1.0).powi(2) - kf * kf) * moment(s, k - 2);
                assert!(lhs.abs() < 1e-10, "{s} k={k}: {lhs}");
            }
        }
    }

    #[test]
    fn dipole_elements_of_n2() {
        let z = |a, b| z_matrix_element(a, b).unwrap().value;
        assert_relative_eq!(z(qn(2, 1, 0), qn(2, 0, 0)), -3.0, epsilon = 1e-12);
        assert_relative_eq!(z(qn(2, 0, 0), qn(2, 1, 0)), -3.0, epsilon = 1e-12);
        assert_eq!(z(qn(2, 1, 1), qn(2, 0, 0)), 0.0);
        assert_eq!(z(qn(2, 1, -1), qn(2, 0, 0)), 0.0);
        assert_eq!(z(qn(1, 0, 0), qn(1, 0, 0)), 0.0);
        // <2p0|z|1s> = 128 sqrt(2) / 243
        assert_relative_eq!(
            z(qn(2, 1, 0), qn(1, 0, 0)),
            128.0 * 2f64.sqrt() / 243.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn dipole_selection_rules() {
        let states = all_states(3);
        for &a in &states {
            for &b in &states {
                let v = z_matrix_element(a, b).unwrap().value;
                if (a.l() + b.l()) % 2 == 0 || a.m() != b.m() {
                    assert_eq!(v, 0.0, "{a} {b}");
                }
                let w = z_matrix_element(b, a).unwrap().value;
                assert_relative_eq!(v, w, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn ground_state_dipole_sum_is_bounded_by_z_squared() {
        // Bessel's inequality: the bound-state part of the z^2 sum rule stays below <z^2> = 1
        let ground = qn(1, 0, 0);
        let mut partial = 0.0;
        let mut last = 0.0;
        for n in 2..=12 {
            let e = z_matrix_element(qn(n, 1, 0), ground).unwrap().value;
            partial += e * e;
            assert!(partial > last);
            last = partial;
        }
        assert!(partial < r_power(ground, 2) / 3.0);
        assert!(partial > 0.55);
    }
}
