//! `ndtlab schedule`: build the two-phase schedule, serialize it and print
//! the recount verification report.

use super::{rational_arg, NetArgs};
use crate::output::{emit, CliError, Outcome};
use clap::Args;
use ndt_core::config::{CornerConfig, DemandVector};
use ndt_core::rational::{fmt_exact, rat, to_f64, Rational};
use ndt_core::scheduler::{build_schedule, verify_schedule, VerifyReport};
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    #[command(flatten)]
    net: NetArgs,
    /// Fractional cache size; must be a corner multiple of 1/M
    #[arg(long, value_parser = rational_arg)]
    mu: Rational,
    /// Channel knowledge quality in [0, 1]
    #[arg(long, value_parser = rational_arg)]
    alpha: Rational,
    /// Comma-separated demand entries, terminals first; defaults to the
    /// worst case (1, 2, .., K+M)
    #[arg(long)]
    demand: Option<String>,
    /// Write the schedule here; the report always goes to stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &ScheduleArgs) -> Result<Outcome, CliError> {
    let config = args.net.config(args.mu.clone(), args.alpha.clone())?;
    let corner = CornerConfig::new(config.clone()).map_err(|_| {
        let corners: Vec<String> = (0..=config.rns())
            .map(|c| fmt_exact(&rat(c as i64, config.rns() as i64)))
            .collect();
        CliError::usage(format!(
            "mu = {} is not a corner cache size for M = {}; valid values: {{{}}}",
            fmt_exact(config.mu()),
            config.rns(),
            corners.join(", ")
        ))
    })?;

    let demand = match &args.demand {
        Some(spec) => {
            let entries = spec
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::usage(format!("invalid demand list `{}`", spec)))?;
            DemandVector::new(entries, &config).map_err(|e| CliError::usage(e.to_string()))?
        }
        None => DemandVector::worst_case(&config).map_err(|e| CliError::usage(e.to_string()))?,
    };

    let schedule =
        build_schedule(&corner, &demand).map_err(|e| CliError::usage(e.to_string()))?;
    let report = verify_schedule(&schedule, &corner);

    let text = schedule.to_text();
    emit(&args.out, &text)?;
    print!("{}", render_report(&report));

    if report.all_pass() {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::VerificationFailed)
    }
}

fn render_report(report: &VerifyReport) -> String {
    let mut out = String::new();
    let status = |ok: bool| if ok { "ok" } else { "FAIL" };
    let _ = writeln!(
        out,
        "# verify rn_coverage: {}{}",
        status(report.rn_complete),
        if report.rn_complete {
            String::new()
        } else {
            let mut detail = format!(
                " missing={} unexpected={}",
                report.missing_rn_symbols.len(),
                report.unexpected_rn_deliveries.len()
            );
            if let Some((rn, sym)) = report.missing_rn_symbols.first() {
                let _ = write!(detail, " first_missing=RN{} sym {}", rn, sym);
            }
            if let Some((slot, rn, sym)) = report.unexpected_rn_deliveries.first() {
                let _ = write!(detail, " first_unexpected=slot{} RN{} sym {}", slot, rn, sym);
            }
            detail
        }
    );
    let _ = writeln!(
        out,
        "# verify zero_forcing: {}{}",
        status(report.zf_violations.is_empty()),
        report
            .zf_violations
            .first()
            .map(|v| format!(" slot{}: {}", v.slot, v.reason))
            .unwrap_or_default()
    );
    let _ = writeln!(out, "# verify ue_dof: {}", status(report.ue_dof_ok));
    let _ = writeln!(
        out,
        "# verify cache_ratio: {} ({})",
        status(report.cache_ratio_ok),
        fmt_exact(&report.cache_ratio)
    );
    let _ = writeln!(
        out,
        "# verify phase2_balance: {}",
        status(report.phase2_balanced)
    );
    let _ = writeln!(
        out,
        "# verify ndt: {}/{} ({})",
        report.ndt.numer(),
        report.ndt.denom(),
        to_f64(&report.ndt)
    );
    let _ = writeln!(
        out,
        "# verify overall: {}",
        if report.all_pass() { "pass" } else { "FAIL" }
    );
    out
}
