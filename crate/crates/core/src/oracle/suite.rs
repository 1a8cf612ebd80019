//! The verification suite: every closed form paired with its numerical
//! counterpart, plus convergence-rate and limit checks.

use serde::{Deserialize, Serialize};

use super::commutator::{
    commutator_residual, first_order_residual, scaling_exponent, TestFunction,
};
use super::*;
use crate::error::{Error, Result};
use crate::hydrogen::{expectation_r_power, z_matrix_element};
use crate::ml_corrections::{shift_1s, shift_2s, shift_general};
use crate::parallel::Execution;
use crate::stark::{
    chi_correction, quadratic_shift_bound, quadratic_shift_bound_ml, sigma_correction,
    stark_matrix_n2, stark_matrix_n2_ml, z_sq_expectation_ml, FieldSpec,
};
use crate::units::{from_phenomenology, PhenomenologyParams, System};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    Fast,
    Thorough,
}

impl Profile {
    fn commutator_step(self) -> f64 {
        match self {
            Profile::Fast => 0.04,
            Profile::Thorough => 0.02,
        }
    }

    fn commutator_pairs(self) -> &'static [(usize, usize)] {
        match self {
            Profile::Fast => &[(0, 0), (0, 1)],
            Profile::Thorough => &[(0, 0), (0, 1), (1, 2), (2, 0), (2, 2)],
        }
    }
}

/// Negative control: every closed form is multiplied by `closed_form_scale`
/// before comparison, so any scale away from 1 must make the suite fail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaultInjection {
    pub closed_form_scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// Group tag such as `AC-5` or `closed-forms`.
    pub group: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub profile: Profile,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn group(&self, group: &str) -> impl Iterator<Item = &Check> + '_ {
        let group = group.to_string();
        self.checks.iter().filter(move |c| c.group == group)
    }
}

/// Relative difference, with an absolute fallback when `want` is zero.
fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

fn check(
    id: impl Into<String>,
    group: &str,
    residual: f64,
    tolerance: f64,
    detail: String,
) -> Check {
    Check {
        id: id.into(),
        group: group.into(),
        passed: residual <= tolerance,
        residual,
        tolerance,
        detail,
    }
}

fn compare(id: String, group: &str, got: f64, want: f64, tolerance: f64) -> Check {
    check(
        id,
        group,
        rel(got, want),
        tolerance,
        format!("numeric {got:.12e} closed {want:.12e}"),
    )
}

/// Deformation points used for the matrix-element comparisons.
pub fn element_points() -> [DeformationParams; 5] {
    [
        DeformationParams::new(0.02, 0.01),
        DeformationParams::new(0.01, 0.0),
        DeformationParams::new(0.005, 0.009),
        DeformationParams::new(1e-3, 5e-4),
        DeformationParams::new(0.03, 0.03),
    ]
    .map(|d| d.expect("valid point"))
}

/// `b / a0` values of the convergence-rate check.
pub const ASYMPTOTIC_B: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Relative gap between quadrature and closed form for an s state at
/// `eta = 1` (`b' = 0`, `b^2 = 2 beta`), one entry per `b`.
pub fn asymptotic_residuals(
    n: u32,
    bs: &[f64],
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    bs.iter()
        .map(|&b| {
            let d = DeformationParams::new(0.5 * b * b, 0.0)?;
            let (num, closed) = match n {
                1 => (shift_1s_numeric(d, spec)?.value, shift_1s(d).hartree()),
                2 => (shift_2s_numeric(d, spec)?.value, shift_2s(d).hartree()),
                _ => return Err(Error::invalid("n", "only 1s and 2s have regularized forms")),
            };
            Ok(rel(num, scale * closed))
        })
        .collect()
}

/// Base deformation of the commutator scaling fit (eta = 2/3, so both
/// relations carry an `O(beta^2)` term).
pub fn commutator_base() -> DeformationParams {
    DeformationParams::new(0.02, 0.01).expect("valid")
}

pub const COMMUTATOR_T: [f64; 3] = [1.0, 0.5, 0.25];

/// Fitted exponent of the floor-subtracted `[X_i, P_j]` residual, combined
/// over `pairs`, for `beta = t beta_0`.
pub fn commutator_exponent(
    probe: &TestFunction,
    pairs: &[(usize, usize)],
    step: f64,
) -> Result<f64> {
    let mut values = Vec::with_capacity(COMMUTATOR_T.len());
    for &t in &COMMUTATOR_T {
        let d = commutator_base().scaled(t)?;
        let mut sq = 0.0;
        for &(i, j) in pairs {
            let r = first_order_residual(i, j, d, probe, step)?;
            sq += r.above_floor().max(0.0).powi(2);
        }
        values.push(sq.sqrt());
    }
    scaling_exponent(&COMMUTATOR_T, &values)
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Normalization,
    Moments,
    Dipoles,
    RegularParts,
    PShift(usize),
    ZSq(usize),
    StarkElement(usize),
    Asymptotic(u32),
    Limits,
    CanonicalFloor,
    Commutator(usize),
}

struct Context {
    profile: Profile,
    scale: f64,
    spec: QuadratureSpec,
}

fn states() -> [QuantumNumbers; 3] {
    [(1, 0, 0), (2, 0, 0), (2, 1, 0)].map(|(n, l, m)| QuantumNumbers::new(n, l, m).expect("valid"))
}

impl Task {
    fn all(profile: Profile) -> Vec<Task> {
        let mut tasks = vec![
            Task::Normalization,
            Task::Moments,
            Task::Dipoles,
            Task::RegularParts,
        ];
        for k in 0..5 {
            tasks.extend([Task::PShift(k), Task::ZSq(k), Task::StarkElement(k)]);
        }
        tasks.extend([
            Task::Asymptotic(1),
            Task::Asymptotic(2),
            Task::Limits,
            Task::CanonicalFloor,
        ]);
        let probes = match profile {
            Profile::Fast => 1,
            Profile::Thorough => 3,
        };
        tasks.extend((0..probes).map(Task::Commutator));
        tasks
    }

    fn run(self, cx: &Context) -> Result<Vec<Check>> {
        let spec = &cx.spec;
        let s = cx.scale;
        let mut out = Vec::new();
        match self {
            Task::Normalization => {
                for qn in states() {
                    let v = radial_integral(|_| 1.0, qn, spec)?;
                    out.push(compare(format!("norm {qn}"), "closed-forms", v, s, 1e-10));
                }
            }
            Task::Moments => {
                for qn in states() {
                    for k in [-3, -2, -1, 1, 2] {
                        if k == -3 && qn.l() == 0 {
                            continue;
                        }
                        let closed = expectation_r_power(qn, k)?.value;
                        let v = radial_integral(|r| r.powi(k), qn, spec)?;
                        out.push(compare(
                            format!("<r^{k}> {qn}"),
                            "closed-forms",
                            v,
                            s * closed,
                            1e-8,
                        ));
                    }
                }
            }
            Task::Dipoles => {
                let [s1, s2, p0] = states();
                for (a, b) in [(p0, s1), (p0, s2)] {
                    let closed = z_matrix_element(a, b)?.value;
                    let v = z_element_numeric(a, b, spec)?.value;
                    out.push(compare(
                        format!("<{a}|z|{b}>"),
                        "closed-forms",
                        v,
                        s * closed,
                        1e-10,
                    ));
                }
            }
            Task::RegularParts => {
                // b = 0: only the p^4 and symmetrized terms survive
                let d = DeformationParams::new(1e-3, 2e-3)?;
                for (num, closed, label) in [
                    (
                        shift_1s_numeric(d, spec)?.value,
                        shift_1s(d).hartree(),
                        "1s",
                    ),
                    (
                        shift_2s_numeric(d, spec)?.value,
                        shift_2s(d).hartree(),
                        "2s",
                    ),
                ] {
                    out.push(compare(
                        format!("regular part {label}"),
                        "closed-forms",
                        num,
                        s * closed,
                        1e-8,
                    ));
                }
            }
            Task::PShift(k) => {
                let d = element_points()[k];
                let qn = states()[2];
                let num = shift_general_numeric(qn, d, spec)?.value;
                let closed = shift_general(qn, 3, d)?.hartree();
                out.push(compare(
                    format!("shift 2p point {k}"),
                    "closed-forms",
                    num,
                    s * closed,
                    1e-8,
                ));
            }
            Task::ZSq(k) => {
                let d = element_points()[k];
                let z = z_sq_numeric(d, spec)?;
                let closed = z_sq_expectation_ml(d).value;
                out.push(compare(
                    format!("<Z^2> zeroth point {k}"),
                    "AC-4",
                    z.zeroth.value,
                    s,
                    1e-10,
                ));
                out.push(compare(
                    format!("<Z^2> correction point {k}"),
                    "AC-4",
                    z.correction.value,
                    s * (closed - 1.0),
                    1e-6,
                ));
            }
            Task::StarkElement(k) => {
                let d = element_points()[k];
                let f = FieldSpec::new(1e7)?;
                let e = ml_stark_element_numeric(f, d, spec)?;
                let ordinary = stark_matrix_n2(f).to_system(System::Atomic).get(1, 0);
                let deformed = stark_matrix_n2_ml(f, d).to_system(System::Atomic).get(1, 0);
                out.push(compare(
                    format!("Stark element zeroth point {k}"),
                    "AC-4",
                    e.zeroth.value,
                    s * ordinary,
                    1e-10,
                ));
                out.push(compare(
                    format!("Stark element correction point {k}"),
                    "AC-4",
                    e.correction.value,
                    s * (deformed - ordinary),
                    1e-6,
                ));
            }
            Task::Asymptotic(n) => {
                let rho = asymptotic_residuals(n, &ASYMPTOTIC_B, s, spec)?;
                for (k, w) in rho.windows(2).enumerate() {
                    out.push(check(
                        format!(
                            "{n}s rate b={:e}->{:e}",
                            ASYMPTOTIC_B[k],
                            ASYMPTOTIC_B[k + 1]
                        ),
                        "AC-5",
                        w[1] / w[0],
                        0.2,
                        format!("rho {:.4e} -> {:.4e}", w[0], w[1]),
                    ));
                }
            }
            Task::Limits => out.extend(limit_checks(s)?),
            Task::CanonicalFloor => {
                let probe = &TestFunction::probes()[1];
                for (i, j) in [(0, 0), (0, 1)] {
                    let r = commutator_residual(
                        i,
                        j,
                        DeformationParams::UNDEFORMED,
                        probe,
                        cx.profile.commutator_step(),
                    )?;
                    for (label, n) in [("[X,P]", r.first_order), ("[X,X]", r.second_order)] {
                        out.push(check(
                            format!("canonical {label} ({i},{j})"),
                            "AC-6",
                            n.residual,
                            n.floor.max(1e-13),
                            format!("floor {:.3e}", n.floor),
                        ));
                    }
                }
            }
            Task::Commutator(p) => {
                let probe = &TestFunction::probes()[p];
                let k = commutator_exponent(
                    probe,
                    cx.profile.commutator_pairs(),
                    cx.profile.commutator_step(),
                )?;
                out.push(Check {
                    id: format!("[X,P] scaling exponent probe {p}"),
                    group: "AC-6".into(),
                    passed: (1.8..=2.2).contains(&k),
                    residual: (k - 2.0).abs(),
                    tolerance: 0.2,
                    detail: format!("exponent {k:.4}"),
                });
            }
        }
        Ok(out)
    }
}

fn limit_checks(scale: f64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let [s1, s2, p0] = states();
    for qn in [s1, s2] {
        let singular = matches!(
            shift_general(qn, 3, commutator_base()),
            Err(Error::SingularCase(_))
        );
        out.push(check(
            format!("D=3 {qn} singular"),
            "AC-7",
            if singular { 0.0 } else { 1.0 },
            0.0,
            String::new(),
        ));
    }
    for dim in 3..=5 {
        let ok = shift_general(p0, dim, commutator_base()).is_ok()
            && (dim == 3 || shift_general(s1, dim, commutator_base()).is_ok());
        out.push(check(
            format!("D={dim} regular"),
            "AC-7",
            if ok { 0.0 } else { 1.0 },
            0.0,
            String::new(),
        ));
    }
    let base = from_phenomenology(PhenomenologyParams::new(1e-12, 1.0)?)?;
    let shifts = |d: DeformationParams| -> Result<[f64; 3]> {
        Ok([
            shift_1s(d).hartree(),
            shift_2s(d).hartree(),
            shift_general(p0, 3, d)?.hartree(),
        ])
    };
    let mut prev = shifts(base)?.map(|v| scale * v);
    let mut monotone = true;
    for t in [0.5, 0.25, 0.125] {
        let next = shifts(base.scaled(t)?)?;
        monotone &= next.iter().zip(&prev).all(|(a, b)| a.abs() < b.abs());
        prev = next;
    }
    out.push(check(
        "|shift| monotone in t",
        "AC-7",
        if monotone { 0.0 } else { 1.0 },
        0.0,
        String::new(),
    ));
    let zero = shifts(DeformationParams::UNDEFORMED)?;
    out.push(check(
        "undeformed shifts",
        "AC-7",
        zero.iter().map(|v| v.abs()).fold(0.0, f64::max),
        0.0,
        String::new(),
    ));
    let f = FieldSpec::new(1e7)?;
    let third = PhenomenologyParams::new(2.86e-17, 1.0 / 3.0)?;
    let d_third = from_phenomenology(third)?;
    let gap = quadratic_shift_bound_ml(f, d_third).value - scale * quadratic_shift_bound(f).value;
    for (label, v) in [
        ("sigma at eta=1/3", sigma_correction(f, third).value),
        ("chi at eta=1/3", chi_correction(f, third).value),
        ("bound gap at eta=1/3", gap),
    ] {
        out.push(check(label, "AC-7", v.abs(), 0.0, format!("{v:e}")));
    }
    Ok(out)
}

/// Runs every check of `profile`. Quadrature failures abort the run with
/// the error; failed comparisons are reported in the returned checks.
pub fn run_suite(
    profile: Profile,
    exec: Execution,
    fault: Option<FaultInjection>,
) -> Result<SuiteReport> {
    let cx = Context {
        profile,
        scale: fault.map_or(1.0, |f| f.closed_form_scale),
        spec: QuadratureSpec::default(),
    };
    let tasks = Task::all(profile);
    let results = exec.map_ordered(&tasks, |t| t.run(&cx));
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    Ok(SuiteReport { profile, checks })
}
