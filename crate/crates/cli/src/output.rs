//! Table, CSV and JSON writers.
//!
//! Machine formats print every value in shortest round-trip form, so CSV and
//! JSON carry identical numbers. Tables round to 4 significant digits.

use std::io::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use minlen_core::oracle::SuiteReport;
use minlen_core::report::ScanStep;
use minlen_core::{EnergyUnit, ReportRow, ScanParam};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct Row<'a> {
    label: &'a str,
    value: f64,
    unit: &'a str,
    kind: &'a str,
    provenance: &'a str,
}

impl<'a> Row<'a> {
    fn from_report(r: &'a ReportRow, unit: EnergyUnit) -> Self {
        let (value, unit) = r.in_unit(unit);
        let value = value + 0.0;
        Self {
            label: &r.label,
            value,
            unit,
            kind: r.kind.as_str(),
            provenance: &r.provenance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct ScanRow<'a> {
    step: usize,
    scan_param: &'a str,
    scan_value: f64,
    #[serde(flatten)]
    row: Row<'a>,
}

fn full(v: f64) -> String {
    format!("{v:e}")
}

fn short(v: f64) -> String {
    format!("{v:.3e}")
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

fn table(rows: &[Row], w: &mut impl Write) -> Result<(), CliError> {
    let lw = rows.iter().map(|r| r.label.len()).max().unwrap_or(5).max(5);
    let kw = rows.iter().map(|r| r.kind.len()).max().unwrap_or(4).max(4);
    writeln!(
        w,
        "{:<lw$}  {:>11}  {:<9}  {:<kw$}  provenance",
        "label", "value", "unit", "kind"
    )?;
    for r in rows {
        writeln!(
            w,
            "{:<lw$}  {:>11}  {:<9}  {:<kw$}  {}",
            r.label,
            short(r.value),
            r.unit,
            r.kind,
            r.provenance
        )?;
    }
    Ok(())
}

pub fn write_rows(
    rows: &[ReportRow],
    unit: EnergyUnit,
    format: Format,
    w: &mut impl Write,
) -> Result<(), CliError> {
    let rows: Vec<Row> = rows.iter().map(|r| Row::from_report(r, unit)).collect();
    match format {
        Format::Table => table(&rows, w)?,
        Format::Csv => {
            let mut c = csv_writer(w);
            c.write_record(["label", "value", "unit", "kind", "provenance"])?;
            for r in &rows {
                c.write_record([r.label, &full(r.value), r.unit, r.kind, r.provenance])?;
            }
            c.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, &rows)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

pub fn write_scan(
    steps: &[ScanStep],
    param: ScanParam,
    unit: EnergyUnit,
    format: Format,
    w: &mut impl Write,
) -> Result<(), CliError> {
    match format {
        Format::Table => {
            for s in steps {
                writeln!(
                    w,
                    "# step {} {} = {}",
                    s.index,
                    param.as_str(),
                    short(s.value)
                )?;
                let rows: Vec<Row> = s.rows.iter().map(|r| Row::from_report(r, unit)).collect();
                table(&rows, w)?;
            }
        }
        Format::Csv => {
            let mut c = csv_writer(w);
            c.write_record([
                "step",
                "scan_param",
                "scan_value",
                "label",
                "value",
                "unit",
                "kind",
                "provenance",
            ])?;
            for s in steps {
                for r in &s.rows {
                    let r = Row::from_report(r, unit);
                    c.write_record([
                        &s.index.to_string(),
                        param.as_str(),
                        &full(s.value),
                        r.label,
                        &full(r.value),
                        r.unit,
                        r.kind,
                        r.provenance,
                    ])?;
                }
            }
            c.flush()?;
        }
        Format::Json => {
            let rows: Vec<ScanRow> = steps
                .iter()
                .flat_map(|s| {
                    s.rows.iter().map(move |r| ScanRow {
                        step: s.index,
                        scan_param: param.as_str(),
                        scan_value: s.value,
                        row: Row::from_report(r, unit),
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut *w, &rows)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

pub fn write_checks(
    report: &SuiteReport,
    format: Format,
    w: &mut impl Write,
) -> Result<(), CliError> {
    match format {
        Format::Table => {
            for c in &report.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(
                    w,
                    "{tag}  {:<12}  {:<40}  residual {:>10}  tol {:>10}  {}",
                    c.group,
                    c.id,
                    short(c.residual),
                    short(c.tolerance),
                    c.detail
                )?;
            }
            let failed = report.failures().count();
            writeln!(w, "{} checks, {failed} failed", report.checks.len())?;
        }
        Format::Csv => {
            let mut c = csv_writer(w);
            c.write_record(["id", "group", "passed", "residual", "tolerance", "detail"])?;
            for k in &report.checks {
                c.write_record([
                    k.id.as_str(),
                    &k.group,
                    if k.passed { "true" } else { "false" },
                    &full(k.residual),
                    &full(k.tolerance),
                    &k.detail,
                ])?;
            }
            c.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *w, &report.checks)?;
            writeln!(w)?;
        }
    }
    Ok(())
}
