//! Run configuration: optional JSON file, overridden field by field by flags.

use std::path::Path;

use serde::Deserialize;

use minlen_core::{EnergyUnit, ScanParam, ScanSpec, Scenario};

use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub field_v_per_m: Option<f64>,
    pub delta_x_min_m: Option<f64>,
    pub eta: Option<f64>,
    pub unit_out: Option<EnergyUnit>,
    pub format: Option<Format>,
    pub scan: Option<ScanBlock>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanBlock {
    pub parameter: Option<ScanParam>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub steps: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
            field: "config".into(),
            reason: format!("cannot read {}: {e}", path.display()),
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Config {
            field: "config".into(),
            reason: format!("{}: {e}", path.display()),
        })
    }
}

/// Values given on the command line; `None` defers to the file, then to
/// the defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub field: Option<f64>,
    pub delta_x: Option<f64>,
    pub eta: Option<f64>,
    pub unit: Option<EnergyUnit>,
    pub format: Option<Format>,
    pub scan: ScanBlock,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub field_v_per_m: f64,
    pub delta_x_min_m: f64,
    pub eta: f64,
    pub unit_out: EnergyUnit,
    pub format: Format,
    pub scan: Option<ScanSpec>,
}

fn bad(field: &str, reason: impl Into<String>) -> CliError {
    CliError::Config {
        field: field.into(),
        reason: reason.into(),
    }
}

fn nonnegative(field: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(bad(field, format!("must be finite and >= 0, got {v}")))
    }
}

impl RunConfig {
    pub fn resolve(file: FileConfig, flags: Overrides) -> Result<Self, CliError> {
        let defaults = Scenario::default();
        let field_v_per_m = nonnegative(
            "field_v_per_m",
            flags
                .field
                .or(file.field_v_per_m)
                .unwrap_or(defaults.field.magnitude()),
        )?;
        let delta_x_min_m = nonnegative(
            "delta_x_min_m",
            flags
                .delta_x
                .or(file.delta_x_min_m)
                .unwrap_or(defaults.phenomenology.delta_x_min),
        )?;
        let eta = flags.eta.or(file.eta).unwrap_or(defaults.phenomenology.eta);
        if !(1.0 / 3.0..=1.0).contains(&eta) {
            return Err(bad("eta", format!("must lie in [1/3, 1], got {eta}")));
        }
        let file_scan = file.scan.unwrap_or_default();
        let scan = ScanBlock {
            parameter: flags.scan.parameter.or(file_scan.parameter),
            start: flags.scan.start.or(file_scan.start),
            stop: flags.scan.stop.or(file_scan.stop),
            steps: flags.scan.steps.or(file_scan.steps),
        };
        let scan = match scan {
            ScanBlock {
                parameter: None,
                start: None,
                stop: None,
                steps: None,
            } => None,
            ScanBlock {
                parameter: Some(param),
                start: Some(start),
                stop: Some(stop),
                steps: Some(steps),
            } => {
                if steps < 2 {
                    return Err(bad("steps", format!("must be >= 2, got {steps}")));
                }
                Some(ScanSpec {
                    param,
                    start,
                    stop,
                    steps,
                })
            }
            partial => {
                let missing = [
                    ("scan_param", partial.parameter.is_none()),
                    ("start", partial.start.is_none()),
                    ("stop", partial.stop.is_none()),
                    ("steps", partial.steps.is_none()),
                ]
                .iter()
                .find(|(_, m)| *m)
                .map(|(n, _)| *n)
                .unwrap_or("scan");
                return Err(bad(
                    missing,
                    "scan is incomplete; need scan_param, start, stop and steps",
                ));
            }
        };
        Ok(Self {
            field_v_per_m,
            delta_x_min_m,
            eta,
            unit_out: flags.unit.or(file.unit_out).unwrap_or(EnergyUnit::J),
            format: flags.format.or(file.format).unwrap_or(Format::Table),
            scan,
        })
    }

    pub fn scenario(&self) -> Result<Scenario, CliError> {
        Ok(Scenario::new(
            self.field_v_per_m,
            self.delta_x_min_m,
            self.eta,
        )?)
    }
}

/// Parses a real number or a fraction such as `1/3`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once('/') {
        Some((num, den)) => Ok(parse(num)? / parse(den)?),
        None => parse(s),
    }
}

pub fn parse_unit(s: &str) -> Result<EnergyUnit, String> {
    match s {
        "J" | "j" => Ok(EnergyUnit::J),
        "eV" | "ev" => Ok(EnergyUnit::Ev),
        "hartree" | "Eh" => Ok(EnergyUnit::Hartree),
        _ => Err(format!("unknown unit `{s}` (expected J, eV or hartree)")),
    }
}

pub fn parse_scan_param(s: &str) -> Result<ScanParam, String> {
    match s {
        "eta" => Ok(ScanParam::Eta),
        "delta_x" | "delta-x" => Ok(ScanParam::DeltaX),
        "field" => Ok(ScanParam::Field),
        _ => Err(format!(
            "unknown scan parameter `{s}` (expected eta, delta_x or field)"
        )),
    }
}
