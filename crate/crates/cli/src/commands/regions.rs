//! `ndtlab regions`: 2D region map over `(mu, M)` for fixed `K`, with the
//! analytic border curves as annotated series.

use super::{rational_arg, Format};
use crate::output::{emit, json_document, rat_field, CliError, Csv, Outcome};
use clap::Args;
use ndt_core::rational::{fmt_exact, to_f64, Rational};
use ndt_core::regions::{region_map, region_ndt, Region};
use std::path::PathBuf;

#[derive(Debug, Args)]
pub struct RegionsArgs {
    /// Number of user terminals
    #[arg(long = "K")]
    k: u32,
    /// Cache-size grid spacing, e.g. 1/100
    #[arg(long = "mu-step", value_parser = rational_arg)]
    mu_step: Rational,
    /// Largest relay count on the grid
    #[arg(long = "m-max")]
    m_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &RegionsArgs) -> Result<Outcome, CliError> {
    if args.k == 0 {
        return Err(CliError::usage("K must be at least 1"));
    }
    let map = region_map(args.k, &args.mu_step, args.m_max)
        .map_err(|e| CliError::usage(e.to_string()))?;

    let cell_ndt = |mu: &Rational, m: u32, region: Region| -> Option<Rational> {
        region_ndt(region, mu, args.k, m).ok()
    };

    let content = match args.format {
        Format::Csv => {
            let mut csv = Csv::new("regions");
            csv.comment(&format!(
                "K: {} mu_step: {} m_max: {}",
                args.k,
                fmt_exact(&args.mu_step),
                args.m_max
            ));
            csv.comment("section: cells");
            csv.comment("columns: mu,M,region,ndt_num,ndt_den,ndt_float");
            for (i, mu) in map.mu_grid.iter().enumerate() {
                for m in 1..=map.m_max {
                    let region = map.cell(i, m);
                    match cell_ndt(mu, m, region) {
                        Some(ndt) => csv.row(&format!(
                            "{},{},{},{},{},{}",
                            fmt_exact(mu),
                            m,
                            region,
                            ndt.numer(),
                            ndt.denom(),
                            to_f64(&ndt)
                        )),
                        None => csv.row(&format!("{},{},{},,,", fmt_exact(mu), m, region)),
                    }
                }
            }
            csv.comment("section: boundaries");
            csv.comment("columns: curve,mu,m_exact,m_float");
            csv.comment("m_exact is empty where the curve is irrational");
            for curve in &map.boundaries {
                for point in &curve.points {
                    let exact = point
                        .m_exact
                        .as_ref()
                        .map(fmt_exact)
                        .unwrap_or_default();
                    csv.row(&format!(
                        "{},{},{},{}",
                        curve.kind.name(),
                        fmt_exact(&point.mu),
                        exact,
                        point.m_float
                    ));
                }
            }
            csv.finish()
        }
        Format::Json => {
            let mut cells: Vec<serde_json::Value> = Vec::new();
            for (i, mu) in map.mu_grid.iter().enumerate() {
                for m in 1..=map.m_max {
                    let region = map.cell(i, m);
                    cells.push(serde_json::json!({
                        "mu": rat_field(mu),
                        "M": m,
                        "region": region.to_string(),
                        "ndt": cell_ndt(mu, m, region).as_ref().map(rat_field),
                    }));
                }
            }
            let boundaries: Vec<serde_json::Value> = map
                .boundaries
                .iter()
                .map(|curve| {
                    serde_json::json!({
                        "curve": curve.kind.name(),
                        "points": curve.points.iter().map(|p| serde_json::json!({
                            "mu": rat_field(&p.mu),
                            "m_exact": p.m_exact.as_ref().map(rat_field),
                            "m_float": p.m_float,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json_document(
                serde_json::json!({
                    "K": args.k,
                    "mu_step": rat_field(&args.mu_step),
                    "m_max": args.m_max,
                }),
                serde_json::json!({ "cells": cells, "boundaries": boundaries }),
                None,
                &[
                    ("cells", "region label and achievable NDT per (mu, M) grid cell; NDT is null for unclassified cells"),
                    ("boundaries", "analytic border curves sampled on the mu grid"),
                ],
            )
        }
    };
    emit(&args.out, &content)?;
    Ok(Outcome::Pass)
}
