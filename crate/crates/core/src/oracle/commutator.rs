//! Finite-difference check that the first-order representation
//! `X_i = x_i + (2b-b')/4 (x_i p^2 + p^2 x_i)`, `P_i = p_i (1 + b' p^2/2)`
//! satisfies the deformed algebra up to second-order terms.
//!
//! Work is done in the momentum representation on real probe functions,
//! where `x_i = i d/dp_i`. Writing `X_i = i Xt_i` with
//! `Xt_i = d_i + a (d_i p^2 + p^2 d_i)`, `a = (2b-b')/4`, the two relations
//! reduce to the real identities
//!
//! * `[Xt_i, P_j] = delta_ij (1 + b P^2) + b' P_i P_j`
//! * `[Xt_i, Xt_j] = (2b-b') (P_i Xt_j - P_j Xt_i)`
//!
//! whose residuals are `O(b^2)`. Derivatives use the centered 5-point
//! stencil; the discretization floor is estimated by repeating the
//! evaluation at half the step.

use crate::error::{Error, Result};
use crate::units::DeformationParams;

type P3 = [f64; 3];

/// `poly(p) * exp(-|p|^2 / (2 w^2))` with `poly = sum c_k p_x^a p_y^b p_z^c`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    terms: Vec<(f64, [u32; 3])>,
    width: f64,
}

impl TestFunction {
    pub fn new(terms: Vec<(f64, [u32; 3])>, width: f64) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::invalid("width", "Gaussian width must be positive"));
        }
        if terms.is_empty() {
            return Err(Error::invalid("terms", "probe polynomial is empty"));
        }
        Ok(Self { terms, width })
    }

    /// The three fixed probes of the verification suite.
    pub fn probes() -> [TestFunction; 3] {
        [
            TestFunction::new(vec![(1.0, [0, 0, 0])], 1.0).expect("valid"),
            TestFunction::new(
                vec![(1.0, [0, 0, 0]), (1.0, [1, 0, 0]), (0.5, [0, 1, 1])],
                1.0,
            )
            .expect("valid"),
            TestFunction::new(
                vec![(1.0, [2, 0, 0]), (-1.0, [0, 0, 1]), (0.3, [1, 1, 1])],
                0.8,
            )
            .expect("valid"),
        ]
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn eval(&self, p: P3) -> f64 {
        let poly: f64 = self
            .terms
            .iter()
            .map(|(c, e)| {
                c * p[0].powi(e[0] as i32) * p[1].powi(e[1] as i32) * p[2].powi(e[2] as i32)
            })
            .sum();
        let r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        poly * (-0.5 * r2 / (self.width * self.width)).exp()
    }
}

fn p_sq(p: P3) -> f64 {
    p[0] * p[0] + p[1] * p[1] + p[2] * p[2]
}

fn shifted(p: P3, axis: usize, dx: f64) -> P3 {
    let mut q = p;
    q[axis] += dx;
    q
}

fn d_axis(g: &dyn Fn(P3) -> f64, p: P3, axis: usize, h: f64) -> f64 {
    let f = |k: f64| g(shifted(p, axis, k * h));
    (f(-2.0) - 8.0 * f(-1.0) + 8.0 * f(1.0) - f(2.0)) / (12.0 * h)
}

struct Ops {
    a: f64,
    beta: f64,
    beta_prime: f64,
    h: f64,
}

impl Ops {
    fn big_p(&self, p: P3, j: usize) -> f64 {
        p[j] * (1.0 + 0.5 * self.beta_prime * p_sq(p))
    }

    /// `Xt_i g = d_i g + a (d_i (p^2 g) + p^2 d_i g)`
    fn xt(&self, g: &dyn Fn(P3) -> f64, p: P3, i: usize) -> f64 {
        let p2g = |q: P3| p_sq(q) * g(q);
        let dg = d_axis(g, p, i, self.h);
        dg + self.a * (d_axis(&p2g, p, i, self.h) + p_sq(p) * dg)
    }

    fn xp_residual(&self, g: &dyn Fn(P3) -> f64, p: P3, i: usize, j: usize) -> f64 {
        let pg = |q: P3| self.big_p(q, j) * g(q);
        let comm = self.xt(&pg, p, i) - self.big_p(p, j) * self.xt(g, p, i);
        let pp: f64 = (0..3).map(|k| self.big_p(p, k).powi(2)).sum();
        let delta = if i == j { 1.0 + self.beta * pp } else { 0.0 };
        comm - (delta + self.beta_prime * self.big_p(p, i) * self.big_p(p, j)) * g(p)
    }

    fn xx_residual(&self, g: &dyn Fn(P3) -> f64, p: P3, i: usize, j: usize) -> f64 {
        let xj = |q: P3| self.xt(g, q, j);
        let xi = |q: P3| self.xt(g, q, i);
        let comm = self.xt(&xj, p, i) - self.xt(&xi, p, j);
        let rhs = 4.0 * self.a * (self.big_p(p, i) * xj(p) - self.big_p(p, j) * xi(p));
        comm - rhs
    }
}

/// Residual norm at step `h/2` and the discretization floor
/// `(16/15) ||r_h - r_{h/2}||`, a bound on the stencil error of either step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualNorms {
    pub residual: f64,
    pub floor: f64,
}

impl ResidualNorms {
    pub fn above_floor(&self) -> f64 {
        self.residual - self.floor
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorResidual {
    /// `[X_i, P_j]` relation.
    pub first_order: ResidualNorms,
    /// `[X_i, X_j]` relation.
    pub second_order: ResidualNorms,
}

/// Points per axis of the norm grid, which spans `+-7` probe widths.
const NORM_POINTS: usize = 28;

fn grid_norms(
    probe: &TestFunction,
    eval: impl Fn(&dyn Fn(P3) -> f64, P3, f64) -> f64,
    h: f64,
) -> ResidualNorms {
    let g = |p: P3| probe.eval(p);
    let half = 7.0 * probe.width();
    let step = 2.0 * half / NORM_POINTS as f64;
    let coord = |k: usize| -half + (k as f64 + 0.5) * step;
    let (mut fine, mut diff) = (0.0, 0.0);
    for a in 0..NORM_POINTS {
        for b in 0..NORM_POINTS {
            for c in 0..NORM_POINTS {
                let p = [coord(a), coord(b), coord(c)];
                let coarse = eval(&g, p, h);
                let finer = eval(&g, p, 0.5 * h);
                fine += finer * finer;
                diff += (coarse - finer).powi(2);
            }
        }
    }
    let vol = step.powi(3);
    ResidualNorms {
        residual: (fine * vol).sqrt(),
        floor: 16.0 / 15.0 * (diff * vol).sqrt(),
    }
}

fn validate(i: usize, j: usize, probe: &TestFunction, grid_step: f64) -> Result<()> {
    if i > 2 || j > 2 {
        return Err(Error::invalid(
            "axis",
            format!("axes must be 0, 1 or 2, got ({i}, {j})"),
        ));
    }
    if !(grid_step > 0.0 && grid_step < probe.width()) {
        return Err(Error::invalid(
            "grid_step",
            "must be positive and below the probe width",
        ));
    }
    Ok(())
}

fn ops(d: DeformationParams, h: f64) -> Ops {
    Ops {
        a: (2.0 * d.beta() - d.beta_prime()) / 4.0,
        beta: d.beta(),
        beta_prime: d.beta_prime(),
        h,
    }
}

/// Residual of the `[X_i, P_j]` relation alone.
///
/// Fails with [`Error::GridResolution`] when the deformation is on and the
/// floor exceeds half the residual.
pub fn first_order_residual(
    i: usize,
    j: usize,
    d: DeformationParams,
    probe: &TestFunction,
    grid_step: f64,
) -> Result<ResidualNorms> {
    validate(i, j, probe, grid_step)?;
    let r = grid_norms(
        probe,
        |g, p, h| ops(d, h).xp_residual(g, p, i, j),
        grid_step,
    );
    if !d.is_undeformed() && r.floor > 0.5 * r.residual {
        return Err(Error::GridResolution {
            floor: r.floor,
            residual: r.residual,
        });
    }
    Ok(r)
}

/// Residuals of both relations for axes `i`, `j` on `probe`, with stencil
/// step `grid_step` (and `grid_step / 2` for the floor).
pub fn commutator_residual(
    i: usize,
    j: usize,
    d: DeformationParams,
    probe: &TestFunction,
    grid_step: f64,
) -> Result<CommutatorResidual> {
    let first_order = first_order_residual(i, j, d, probe, grid_step)?;
    let second_order = grid_norms(
        probe,
        |g, p, h| ops(d, h).xx_residual(g, p, i, j),
        grid_step,
    );
    Ok(CommutatorResidual {
        first_order,
        second_order,
    })
}

/// Least-squares slope of `ln value` against `ln t`.
pub fn scaling_exponent(ts: &[f64], values: &[f64]) -> Result<f64> {
    if ts.len() != values.len() || ts.len() < 2 {
        return Err(Error::invalid(
            "scaling",
            "need at least two (t, value) pairs",
        ));
    }
    if ts.iter().chain(values).any(|&v| !v.is_finite() || v <= 0.0) {
        return Err(Error::invalid(
            "scaling",
            "all t and values must be positive",
        ));
    }
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn base() -> DeformationParams {
        DeformationParams::new(0.02, 0.01).unwrap()
    }

    #[test]
    fn stencil_is_fourth_order() {
        let g = |p: P3| (p[0] * 1.3).sin();
        let exact = 1.3 * (0.4f64 * 1.3).cos();
        let e1 = (d_axis(&g, [0.4, 0.0, 0.0], 0, 0.1) - exact).abs();
        let e2 = (d_axis(&g, [0.4, 0.0, 0.0], 0, 0.05) - exact).abs();
        assert_relative_eq!(e1 / e2, 16.0, max_relative = 0.05);
    }

    #[test]
    fn canonical_algebra_sits_at_floor() {
        let probe = &TestFunction::probes()[1];
        for (i, j) in [(0, 0), (0, 1), (2, 1)] {
            let r = commutator_residual(i, j, DeformationParams::UNDEFORMED, probe, 0.05).unwrap();
            assert!(r.first_order.residual <= r.first_order.floor + 1e-13);
            assert!(r.second_order.residual <= r.second_order.floor + 1e-13);
        }
    }

    #[test]
    fn first_order_residual_is_quadratic() {
        let probe = &TestFunction::probes()[2];
        let ts = [1.0, 0.5, 0.25];
        let vals: Vec<f64> = ts
            .iter()
            .map(|&t| {
                commutator_residual(0, 1, base().scaled(t).unwrap(), probe, 0.02)
                    .unwrap()
                    .first_order
                    .above_floor()
            })
            .collect();
        let k = scaling_exponent(&ts, &vals).unwrap();
        assert!((1.8..=2.2).contains(&k), "exponent {k}");
    }

    #[test]
    fn position_commutator_vanishes_on_diagonal() {
        let probe = &TestFunction::probes()[1];
        let r = commutator_residual(1, 1, base(), probe, 0.02).unwrap();
        assert!(r.second_order.residual <= 1e-12);
        let off = commutator_residual(0, 2, base(), probe, 0.02).unwrap();
        assert!(off.second_order.residual > 100.0 * off.second_order.floor);
    }

    #[test]
    fn diagonal_and_off_diagonal_relations_are_both_second_order() {
        let probe = &TestFunction::probes()[0];
        let diag = commutator_residual(2, 2, base(), probe, 0.02)
            .unwrap()
            .first_order;
        let off = commutator_residual(2, 0, base(), probe, 0.02)
            .unwrap()
            .first_order;
        let small = base().scaled(0.5).unwrap();
        let diag_half = commutator_residual(2, 2, small, probe, 0.02)
            .unwrap()
            .first_order;
        let off_half = commutator_residual(2, 0, small, probe, 0.02)
            .unwrap()
            .first_order;
        assert_relative_eq!(diag.residual / diag_half.residual, 4.0, max_relative = 0.1);
        assert_relative_eq!(off.residual / off_half.residual, 4.0, max_relative = 0.1);
    }

    #[test]
    fn coarse_grid_is_reported() {
        let probe = &TestFunction::probes()[2];
        let tiny = base().scaled(1e-4).unwrap();
        match commutator_residual(0, 0, tiny, probe, 0.3) {
            Err(Error::GridResolution { floor, residual }) => assert!(floor > 0.5 * residual),
            other => panic!("expected grid error, got {other:?}"),
        }
    }

    #[test]
    fn exponent_fit() {
        let ts = [1.0, 0.5, 0.25];
        let vals: Vec<f64> = ts.iter().map(|t| 3.0 * t * t).collect();
        assert_relative_eq!(
            scaling_exponent(&ts, &vals).unwrap(),
            2.0,
            max_relative = 1e-12
        );
        assert!(scaling_exponent(&ts, &[1.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        let probe = &TestFunction::probes()[0];
        assert!(commutator_residual(3, 0, base(), probe, 0.02).is_err());
        assert!(commutator_residual(0, 0, base(), probe, 0.0).is_err());
        assert!(TestFunction::new(vec![(1.0, [0, 0, 0])], 0.0).is_err());
    }
}
