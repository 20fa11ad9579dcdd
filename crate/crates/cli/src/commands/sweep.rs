//! `ndtlab sweep`: corner-point values and envelope samples over the cache
//! size, with per-point optimality gaps.

use super::{rational_arg, Format, NetArgs};
use crate::output::{csv_rat, emit, json_document, rat_field, CliError, Csv, Outcome};
use clap::Args;
use ndt_core::bounds::{ndt_lower_bound, ndt_one_shot, optimality_report};
use ndt_core::config::CornerConfig;
use ndt_core::rational::{fmt_exact, rat, rat_int, Rational};
use std::path::PathBuf;

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    net: NetArgs,
    /// Channel knowledge quality in [0, 1]
    #[arg(long, value_parser = rational_arg)]
    alpha: Rational,
    /// Extra envelope sample spacing, e.g. 1/6; corners are always included
    #[arg(long = "mu-grid", value_parser = rational_arg)]
    mu_grid: Option<Rational>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

struct SweepRow {
    mu: Rational,
    corner: bool,
    one_shot: Option<Rational>,
    lower: Rational,
    envelope: Rational,
    gap: Rational,
    optimal: bool,
}

pub fn run(args: &SweepArgs) -> Result<Outcome, CliError> {
    if let Some(step) = &args.mu_grid {
        if step <= &rat_int(0) {
            return Err(CliError::usage("mu-grid step must be positive"));
        }
    }
    let alpha = args.alpha.clone();
    // validate K/M/N/alpha once through a corner config
    let base = args.net.config(rat_int(0), alpha.clone())?;
    let m = base.rns();

    let mut rows: Vec<SweepRow> = Vec::new();
    for c in 0..=m {
        let corner = CornerConfig::from_units(
            args.net.k,
            m,
            args.net.files(),
            c,
            alpha.clone(),
        )
        .map_err(|e| CliError::usage(e.to_string()))?;
        let report = optimality_report(&corner);
        rows.push(SweepRow {
            mu: rat(c as i64, m as i64),
            corner: true,
            one_shot: Some(ndt_one_shot(&corner).value),
            lower: report.lower,
            envelope: report.upper,
            gap: report.gap,
            optimal: report.optimal,
        });
    }
    if let Some(step) = &args.mu_grid {
        let mut mu = rat_int(0);
        while mu <= rat_int(1) {
            if rows.iter().all(|r| r.mu != mu) {
                let config = args.net.config(mu.clone(), alpha.clone())?;
                let lower = ndt_lower_bound(&config).value;
                let envelope = ndt_core::bounds::ndt_envelope(
                    config.ues(),
                    config.rns(),
                    config.alpha(),
                    config.mu(),
                )
                .expect("mu validated by the config");
                let gap = &envelope - &lower;
                rows.push(SweepRow {
                    mu: mu.clone(),
                    corner: false,
                    one_shot: None,
                    optimal: gap == rat_int(0),
                    lower,
                    envelope,
                    gap,
                });
            }
            mu = &mu + step;
        }
    }
    rows.sort_by(|a, b| a.mu.cmp(&b.mu));

    let content = match args.format {
        Format::Csv => {
            let mut csv = Csv::new("sweep");
            csv.comment(&format!(
                "K: {} M: {} N: {} alpha: {}",
                args.net.k,
                m,
                args.net.files(),
                fmt_exact(&alpha)
            ));
            csv.comment("kind: corner rows carry the one-shot value; sample rows only the envelope");
            csv.comment("columns: kind,mu,os_num,os_den,os_float,lower_num,lower_den,lower_float,env_num,env_den,env_float,gap_num,gap_den,gap_float,optimal");
            for row in &rows {
                let os_cells = match &row.one_shot {
                    Some(v) => csv_rat(v),
                    None => ",,".to_string(),
                };
                csv.row(&format!(
                    "{},{},{},{},{},{},{}",
                    if row.corner { "corner" } else { "sample" },
                    fmt_exact(&row.mu),
                    os_cells,
                    csv_rat(&row.lower),
                    csv_rat(&row.envelope),
                    csv_rat(&row.gap),
                    row.optimal
                ));
            }
            csv.finish()
        }
        Format::Json => {
            let inputs = serde_json::json!({
                "K": args.net.k,
                "M": m,
                "N": args.net.files(),
                "alpha": rat_field(&alpha),
                "mu_grid": args.mu_grid.as_ref().map(rat_field),
            });
            let rows_json: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "kind": if row.corner { "corner" } else { "sample" },
                        "mu": rat_field(&row.mu),
                        "one_shot": row.one_shot.as_ref().map(rat_field),
                        "lower": rat_field(&row.lower),
                        "envelope": rat_field(&row.envelope),
                        "gap": rat_field(&row.gap),
                        "optimal": row.optimal,
                    })
                })
                .collect();
            json_document(
                inputs,
                serde_json::json!({ "rows": rows_json }),
                None,
                &[
                    ("rows", "one entry per corner mu = c/M plus envelope samples on the requested grid"),
                    ("lower", "best lower bound at that mu (grid bound, floor, full-cache bound where applicable)"),
                    ("gap", "envelope minus lower; zero means NDT-optimal"),
                ],
            )
        }
    };
    emit(&args.out, &content)?;
    Ok(Outcome::Pass)
}
