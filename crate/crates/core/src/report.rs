//! Tabular results: labelled, unit-tagged values with a formula id.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogen::{energy_level, QuantumNumbers};
use crate::ml_corrections::{shift_1s, shift_2s, shift_general};
use crate::parallel::Execution;
use crate::stark::{
    chi_correction, diagonalize, quadratic_shift_bound, quadratic_shift_bound_ml, sigma_correction,
    stark_matrix_n2, stark_matrix_n2_ml, FieldSpec,
};
use crate::units::{
    from_phenomenology, DeformationParams, Dimension, PhenomenologyParams, Quantity,
    LAMB_SHIFT_EXCESS_1S_J, LAMB_SHIFT_EXCESS_2S_2P_J,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowKind {
    /// Unperturbed level energy.
    Level,
    Shift,
    /// A bound on a shift, never the shift itself.
    Bound,
    Correction,
    ReferenceConstant,
    /// Dimensionless comparison (ratio or order-of-magnitude count).
    Ratio,
}

impl RowKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowKind::Level => "level",
            RowKind::Shift => "shift",
            RowKind::Bound => "bound",
            RowKind::Correction => "correction",
            RowKind::ReferenceConstant => "reference-constant",
            RowKind::Ratio => "ratio",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyUnit {
    J,
    #[serde(rename = "eV")]
    Ev,
    #[serde(rename = "hartree")]
    Hartree,
}

impl EnergyUnit {
    pub fn as_str(&self) -> &'static str {
        match self {
            EnergyUnit::J => "J",
            EnergyUnit::Ev => "eV",
            EnergyUnit::Hartree => "hartree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: String,
    pub value: Quantity,
    pub kind: RowKind,
    pub provenance: String,
}

impl ReportRow {
    fn new(
        label: impl Into<String>,
        value: Quantity,
        kind: RowKind,
        provenance: impl Into<String>,
    ) -> Self {
        Self {
            label: label.into(),
            value,
            kind,
            provenance: provenance.into(),
        }
    }

    /// Value and unit string, with energies converted to `unit`.
    pub fn in_unit(&self, unit: EnergyUnit) -> (f64, &'static str) {
        if self.value.dimension != Dimension::Energy {
            return (self.value.value, self.value.unit_str());
        }
        let v = match unit {
            EnergyUnit::J => self.value.to_si().value,
            EnergyUnit::Hartree => self.value.to_atomic().value,
            EnergyUnit::Ev => self.value.in_ev().expect("energy"),
        };
        (v, unit.as_str())
    }
}

/// Field, minimum length and `eta` of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub field: FieldSpec,
    pub phenomenology: PhenomenologyParams,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            field: FieldSpec::new(1e7).expect("valid"),
            phenomenology: PhenomenologyParams::new(2.86e-17, 1.0).expect("valid"),
        }
    }
}

impl Scenario {
    pub fn new(field_v_per_m: f64, delta_x_min_m: f64, eta: f64) -> Result<Self> {
        Ok(Self {
            field: FieldSpec::new(field_v_per_m)?,
            phenomenology: PhenomenologyParams::new(delta_x_min_m, eta)?,
        })
    }

    pub fn deformation(&self) -> Result<DeformationParams> {
        from_phenomenology(self.phenomenology)
    }
}

/// `E_1..E_3` and the deformed 1s, 2s, 2p shifts.
pub fn levels_rows(s: &Scenario) -> Result<Vec<ReportRow>> {
    let d = s.deformation()?;
    let mut rows = Vec::new();
    for n in 1..=3 {
        rows.push(ReportRow::new(
            format!("E_{n}"),
            energy_level(n)?,
            RowKind::Level,
            "bohr_level",
        ));
    }
    let p = shift_general(QuantumNumbers::new(2, 1, 0)?, 3, d)?;
    for (label, r) in [("dE_1s", shift_1s(d)), ("dE_2s", shift_2s(d)), ("dE_2p", p)] {
        rows.push(ReportRow::new(
            label,
            r.value,
            RowKind::Shift,
            r.provenance(),
        ));
    }
    Ok(rows)
}

/// Whole orders of magnitude by which `small` lies below `large`,
/// `floor(-log10 |small / large|)`; `None` when undefined.
pub fn orders_of_magnitude(small: f64, large: f64) -> Option<i32> {
    let r = (small / large).abs();
    (r.is_finite() && r > 0.0).then(|| (-r.log10()).floor() as i32)
}

fn energy_si(v: f64) -> Quantity {
    Quantity::si(v, Dimension::Energy)
}

fn linear_rows(
    rows: &mut Vec<ReportRow>,
    prefix: &str,
    m: &crate::spectrum::PerturbationMatrix,
    provenance: &str,
) -> Result<Vec<f64>> {
    let dec = diagonalize(m)?;
    let vals = dec.eigenvalues();
    for (k, v) in vals.iter().enumerate() {
        rows.push(ReportRow::new(
            format!("{prefix}[{k}]"),
            energy_si(*v),
            RowKind::Shift,
            provenance,
        ));
    }
    Ok(vals)
}

/// Ordinary and deformed Stark results, the two estimators, reference
/// constants and magnitude ratios between them.
pub fn stark_rows(s: &Scenario) -> Result<Vec<ReportRow>> {
    let d = s.deformation()?;
    let f = s.field;
    let p = s.phenomenology;
    let mut rows = Vec::new();
    let bound = quadratic_shift_bound(f);
    rows.push(ReportRow::new(
        "n1 quadratic bound",
        bound,
        RowKind::Bound,
        "quadratic_bound",
    ));
    let linear = linear_rows(&mut rows, "n2 linear", &stark_matrix_n2(f), "stark_n2")?;
    rows.push(ReportRow::new(
        "n1 quadratic bound ML",
        quadratic_shift_bound_ml(f, d),
        RowKind::Bound,
        "quadratic_bound_ml",
    ));
    linear_rows(
        &mut rows,
        "n2 linear ML",
        &stark_matrix_n2_ml(f, d),
        "stark_n2_ml",
    )?;
    let sigma = sigma_correction(f, p);
    let chi = chi_correction(f, p);
    rows.push(ReportRow::new("sigma", sigma, RowKind::Correction, "sigma"));
    rows.push(ReportRow::new("chi", chi, RowKind::Correction, "chi"));
    let l1s = energy_si(LAMB_SHIFT_EXCESS_1S_J);
    rows.push(ReportRow::new(
        "dL_1s",
        l1s,
        RowKind::ReferenceConstant,
        "lamb_excess_1s",
    ));
    rows.push(ReportRow::new(
        "dL_2s-2p",
        energy_si(LAMB_SHIFT_EXCESS_2S_2P_J),
        RowKind::ReferenceConstant,
        "lamb_excess_2s_2p",
    ));
    let split = linear.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    for (name, num, den) in [
        ("sigma/dL_1s", sigma.value, l1s.value),
        ("chi/dL_1s", chi.value, l1s.value),
        ("sigma/bound", sigma.value, bound.value),
        ("chi/linear", chi.value, split),
    ] {
        let r = (num / den).abs();
        if r.is_finite() {
            rows.push(ReportRow::new(
                name,
                Quantity::si(r, Dimension::Dimensionless),
                RowKind::Ratio,
                "ratio",
            ));
        }
        if let Some(k) = orders_of_magnitude(num, den) {
            rows.push(ReportRow::new(
                format!("orders {name}"),
                Quantity::si(k as f64, Dimension::Dimensionless),
                RowKind::Ratio,
                "floor(-log10|ratio|)",
            ));
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanParam {
    Eta,
    DeltaX,
    Field,
}

impl ScanParam {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScanParam::Eta => "eta",
            ScanParam::DeltaX => "delta_x",
            ScanParam::Field => "field",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub param: ScanParam,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::invalid(
                "steps",
                format!("need at least 2 steps, got {}", self.steps),
            ));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::invalid("start", "scan bounds must be finite"));
        }
        Ok(())
    }

    /// Evenly spaced values, endpoints included exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * k as f64 / last
                }
            })
            .collect()
    }

    fn apply(&self, base: &Scenario, v: f64) -> Result<Scenario> {
        let mut s = *base;
        match self.param {
            ScanParam::Eta => {
                s.phenomenology = PhenomenologyParams::new(s.phenomenology.delta_x_min, v)?
            }
            ScanParam::DeltaX => {
                s.phenomenology = PhenomenologyParams::new(v, s.phenomenology.eta)?
            }
            ScanParam::Field => s.field = FieldSpec::new(v)?,
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanStep {
    pub index: usize,
    pub value: f64,
    pub rows: Vec<ReportRow>,
}

/// [`stark_rows`] at every scan value, in step order.
pub fn scan(base: &Scenario, spec: &ScanSpec, exec: Execution) -> Result<Vec<ScanStep>> {
    spec.validate()?;
    let values = spec.values();
    let scenarios = values
        .iter()
        .map(|&v| spec.apply(base, v))
        .collect::<Result<Vec<_>>>()?;
    let indexed: Vec<(usize, Scenario)> = scenarios.into_iter().enumerate().collect();
    exec.map_ordered(&indexed, |(k, s)| {
        Ok(ScanStep {
            index: *k,
            value: values[*k],
            rows: stark_rows(s)?,
        })
    })
    .into_iter()
    .collect()
}
