//! `ndtlab bounds`: every exact bound for one configuration.

use super::{rational_arg, Format, NetArgs};
use crate::output::{
    csv_rat, emit, json_document, rat_field, CliError, Csv, Outcome,
};
use clap::Args;
use ndt_core::bounds::{
    ndt_envelope, ndt_lower_bound, ndt_man_continuous, ndt_one_shot, optimality_report,
    LimitingChannel,
};
use ndt_core::config::CornerConfig;
use ndt_core::rational::{fmt_exact, rat_int, Rational};
use std::path::PathBuf;

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    net: NetArgs,
    /// Fractional cache size in [0, 1]
    #[arg(long, value_parser = rational_arg)]
    mu: Rational,
    /// Channel knowledge quality in [0, 1]
    #[arg(long, value_parser = rational_arg)]
    alpha: Rational,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &BoundsArgs) -> Result<Outcome, CliError> {
    let config = args.net.config(args.mu.clone(), args.alpha.clone())?;
    let witness = ndt_lower_bound(&config);
    let man = ndt_man_continuous(config.mu(), config.rns());
    let corner = CornerConfig::new(config.clone()).ok();
    let breakdown = corner.as_ref().map(ndt_one_shot);
    let envelope = ndt_envelope(
        config.ues(),
        config.rns(),
        config.alpha(),
        config.mu(),
    )
    .expect("mu validated by the config");

    let (lower, upper, gap, optimal) = match corner.as_ref() {
        Some(corner) => {
            let report = optimality_report(corner);
            (report.lower, report.upper, report.gap, report.optimal)
        }
        None => {
            let lower = witness.value.clone();
            let gap = &envelope - &lower;
            let optimal = gap == rat_int(0);
            (lower, envelope.clone(), gap, optimal)
        }
    };

    let content = match args.format {
        Format::Json => {
            let inputs = serde_json::json!({
                "K": config.ues(),
                "M": config.rns(),
                "N": config.files(),
                "mu": rat_field(config.mu()),
                "alpha": rat_field(config.alpha()),
            });
            let outputs = serde_json::json!({
                "lower_bound": {
                    "value": rat_field(&witness.value),
                    "argmax_ell": witness.argmax_ell,
                    "argmax_s": witness.argmax_s,
                    "floor_active": witness.floor_active,
                    "derived_at": "alpha=1",
                },
                "man_ndt": rat_field(&man),
                "one_shot": breakdown.as_ref().map(|b| serde_json::json!({
                    "man_term": rat_field(&b.man_term),
                    "interference_term": rat_field(&b.interference_term),
                    "value": rat_field(&b.value),
                    "limiting_channel": limiting_name(b.limiting_channel),
                })),
                "envelope": rat_field(&envelope),
                "optimality": {
                    "lower": rat_field(&lower),
                    "upper": rat_field(&upper),
                    "gap": rat_field(&gap),
                    "optimal": optimal,
                },
            });
            json_document(
                inputs,
                outputs,
                None,
                &[
                    ("lower_bound", "converse bound max{1, grid max} with its (ell, s) witness; derived under perfect CSI, valid for every alpha"),
                    ("man_ndt", "multicast NDT M(1-mu)/(1+mu M)"),
                    ("one_shot", "achievable one-shot NDT and its branch decomposition; null when mu is not a corner"),
                    ("envelope", "lower convex envelope of the corner points at mu"),
                    ("optimality", "best lower bound vs envelope upper bound; gap = upper - lower"),
                ],
            )
        }
        Format::Csv => {
            let mut csv = Csv::new("bounds");
            csv.comment(&format!(
                "K: {} M: {} N: {} mu: {} alpha: {}",
                config.ues(),
                config.rns(),
                config.files(),
                fmt_exact(config.mu()),
                fmt_exact(config.alpha())
            ));
            csv.comment("columns: field,num,den,float,note");
            csv.comment("lower_bound is derived under perfect CSI and valid for every alpha");
            csv.row(&format!(
                "lower_bound,{},argmax_ell={} argmax_s={} floor_active={}",
                csv_rat(&witness.value),
                witness.argmax_ell,
                witness.argmax_s,
                witness.floor_active
            ));
            csv.row(&format!("man_ndt,{},", csv_rat(&man)));
            if let Some(b) = breakdown.as_ref() {
                csv.row(&format!("one_shot_man_term,{},", csv_rat(&b.man_term)));
                csv.row(&format!(
                    "one_shot_interference_term,{},",
                    csv_rat(&b.interference_term)
                ));
                csv.row(&format!(
                    "one_shot_value,{},limiting={}",
                    csv_rat(&b.value),
                    limiting_name(b.limiting_channel)
                ));
            }
            csv.row(&format!("envelope,{},", csv_rat(&envelope)));
            csv.row(&format!("optimality_lower,{},", csv_rat(&lower)));
            csv.row(&format!("optimality_upper,{},", csv_rat(&upper)));
            csv.row(&format!(
                "optimality_gap,{},optimal={}",
                csv_rat(&gap),
                optimal
            ));
            csv.finish()
        }
    };
    emit(&args.out, &content)?;
    Ok(Outcome::Pass)
}

pub fn limiting_name(channel: LimitingChannel) -> &'static str {
    match channel {
        LimitingChannel::Broadcast => "broadcast",
        LimitingChannel::Interference => "interference",
    }
}
