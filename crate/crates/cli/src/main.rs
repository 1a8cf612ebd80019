//! `minlen`: hydrogen levels and Stark splittings with a minimum length.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing check, 2 on
//! invalid input or a numerical failure.

mod config;
mod error;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use minlen_core::oracle::{run_suite, FaultInjection, Profile};
use minlen_core::report::{levels_rows, scan, stark_rows};
use minlen_core::{EnergyUnit, Execution, ScanParam};

use config::{
    parse_real, parse_scan_param, parse_unit, FileConfig, Overrides, RunConfig, ScanBlock,
};
use error::CliError;
use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "minlen",
    version,
    about = "Hydrogen levels and Stark shifts under a minimum-length deformation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Field magnitude in V/m.
    #[arg(long, global = true, value_parser = parse_real)]
    field: Option<f64>,

    /// Minimum length in m.
    #[arg(long = "delta-x", global = true, value_parser = parse_real)]
    delta_x: Option<f64>,

    /// beta / (beta + beta'), in [1/3, 1]; fractions such as 1/3 are accepted.
    #[arg(long, global = true, value_parser = parse_real)]
    eta: Option<f64>,

    /// Energy unit: J, eV or hartree.
    #[arg(long, global = true, value_parser = parse_unit)]
    unit: Option<EnergyUnit>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Evaluate sequentially even when built with parallel support.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    Fast,
    Thorough,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Unperturbed levels and the deformed 1s, 2s, 2p shifts.
    Levels,
    /// Quadratic and linear Stark results, the two estimators and reference constants.
    Stark,
    /// Stark results over a range of one parameter.
    Scan {
        #[arg(long = "scan-param", value_parser = parse_scan_param)]
        scan_param: Option<ScanParam>,
        #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
        start: Option<f64>,
        #[arg(long, value_parser = parse_real, allow_negative_numbers = true)]
        stop: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Run the numerical verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        profile: ProfileArg,
        /// Scale every closed form by this factor before comparing.
        #[arg(long = "fault-injection", hide = true, value_parser = parse_real)]
        fault_injection: Option<f64>,
    },
    /// `levels` followed by `stark`.
    Report,
}

fn resolve(common: &Common, scan: ScanBlock) -> Result<RunConfig, CliError> {
    let file = match &common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    RunConfig::resolve(
        file,
        Overrides {
            field: common.field,
            delta_x: common.delta_x,
            eta: common.eta,
            unit: common.unit,
            format: common.format,
            scan,
        },
    )
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool, CliError> {
    let exec = if cli.common.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let scan_flags = match &cli.command {
        Command::Scan {
            scan_param,
            start,
            stop,
            steps,
        } => ScanBlock {
            parameter: *scan_param,
            start: *start,
            stop: *stop,
            steps: *steps,
        },
        _ => ScanBlock::default(),
    };
    let cfg = resolve(&cli.common, scan_flags)?;
    match cli.command {
        Command::Levels => {
            let rows = levels_rows(&cfg.scenario()?)?;
            output::write_rows(&rows, cfg.unit_out, cfg.format, out)?;
        }
        Command::Stark => {
            let rows = stark_rows(&cfg.scenario()?)?;
            output::write_rows(&rows, cfg.unit_out, cfg.format, out)?;
        }
        Command::Report => {
            let scenario = cfg.scenario()?;
            let mut rows = levels_rows(&scenario)?;
            rows.extend(stark_rows(&scenario)?);
            output::write_rows(&rows, cfg.unit_out, cfg.format, out)?;
        }
        Command::Scan { .. } => {
            let spec = cfg.scan.ok_or_else(|| CliError::Config {
                field: "scan_param".into(),
                reason: "scan needs --scan-param, --start, --stop and --steps (or a scan block in --config)".into(),
            })?;
            let steps = scan(&cfg.scenario()?, &spec, exec)?;
            output::write_scan(&steps, spec.param, cfg.unit_out, cfg.format, out)?;
        }
        Command::Verify {
            profile,
            fault_injection,
        } => {
            let profile = match profile {
                ProfileArg::Fast => Profile::Fast,
                ProfileArg::Thorough => Profile::Thorough,
            };
            let fault = fault_injection.map(|s| FaultInjection {
                closed_form_scale: s,
            });
            let report = run_suite(profile, exec, fault)?;
            output::write_checks(&report, cfg.format, out)?;
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
