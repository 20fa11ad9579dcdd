//! `ndtlab simulate`: Monte-Carlo estimation of the zero-forcing power-level
//! exponents, with pass/fail tolerances on every slope.

use super::{rational_arg, Format};
use crate::output::{emit, json_document, rat_field, CliError, Csv, Outcome};
use clap::Args;
use ndt_core::linksim::estimate_exponents;
use ndt_core::rational::{fmt_exact, to_f64, Rational};
use std::path::PathBuf;

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Number of user terminals
    #[arg(long = "K", default_value_t = 2)]
    k: u32,
    /// Number of cache-equipped relays
    #[arg(long = "M", default_value_t = 4)]
    m: u32,
    /// Fractional cache size; mu*M relays cooperate in zero-forcing
    #[arg(long, value_parser = rational_arg, default_value = "1/2")]
    mu: Rational,
    /// Channel knowledge quality in [0, 1]
    #[arg(long, value_parser = rational_arg)]
    alpha: Rational,
    /// Comma-separated transmit powers, strictly increasing, at least three
    #[arg(long, default_value = "1e4,1e6,1e8")]
    snr: String,
    /// Monte-Carlo trials per power point
    #[arg(long, default_value_t = 10_000)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tolerance on the desired-signal slope around 1
    #[arg(long = "tol-desired", default_value_t = 0.05)]
    tol_desired: f64,
    /// Tolerance on the residual-interference slope around 1 - alpha
    #[arg(long = "tol-residual", default_value_t = 0.1)]
    tol_residual: f64,
    /// Tolerance on the common/private rate slopes
    #[arg(long = "tol-rate", default_value_t = 0.15)]
    tol_rate: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_snr(spec: &str) -> Result<Vec<f64>, CliError> {
    let points = spec
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::usage(format!("invalid snr list `{}`", spec)))?;
    if points.len() < 3 {
        return Err(CliError::usage(format!(
            "need at least 3 snr points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|p| !p.is_finite() || *p <= 1.0) {
        return Err(CliError::usage("snr points must be finite and exceed 1"));
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::usage("snr points must be strictly increasing"));
    }
    Ok(points)
}

pub fn run(args: &SimulateArgs) -> Result<Outcome, CliError> {
    let powers = parse_snr(&args.snr)?;
    let estimates = estimate_exponents(
        args.k,
        args.m,
        &args.mu,
        &args.alpha,
        &powers,
        args.trials,
        args.seed,
    )
    .map_err(|e| CliError::usage(e.to_string()))?;

    let alpha_f = to_f64(&args.alpha);
    let tolerance_for = |q: ndt_core::linksim::Quantity| -> f64 {
        use ndt_core::linksim::Quantity::*;
        match q {
            DesiredSignal => args.tol_desired,
            ResidualInterference => args.tol_residual,
            CommonRate | PrivateRate => args.tol_rate,
        }
    };

    struct Judged {
        name: &'static str,
        slope: f64,
        stderr: f64,
        trials: u32,
        target: f64,
        tolerance: f64,
        pass: bool,
    }
    let judged: Vec<Judged> = estimates
        .iter()
        .map(|e| {
            let target = e.quantity.target(alpha_f);
            let tolerance = tolerance_for(e.quantity);
            Judged {
                name: e.quantity.name(),
                slope: e.slope,
                stderr: e.stderr,
                trials: e.trials,
                target,
                tolerance,
                pass: (e.slope - target).abs() <= tolerance,
            }
        })
        .collect();
    let all_pass = judged.iter().all(|j| j.pass);

    let content = match args.format {
        Format::Json => {
            let inputs = serde_json::json!({
                "K": args.k,
                "M": args.m,
                "mu": rat_field(&args.mu),
                "alpha": rat_field(&args.alpha),
                "snr": powers,
                "trials": args.trials,
            });
            let list: Vec<serde_json::Value> = judged
                .iter()
                .map(|j| {
                    serde_json::json!({
                        "quantity": j.name,
                        "slope": j.slope,
                        "stderr": j.stderr,
                        "trials": j.trials,
                        "target": j.target,
                        "tolerance": j.tolerance,
                        "pass": j.pass,
                    })
                })
                .collect();
            json_document(
                inputs,
                serde_json::json!({ "estimates": list, "all_pass": all_pass }),
                Some(args.seed),
                &[
                    ("estimates", "regression slope of each averaged log quantity against log P, with its expected high-SNR value"),
                    ("all_pass", "true when every slope sits within its declared tolerance"),
                ],
            )
        }
        Format::Csv => {
            let mut csv = Csv::new("simulate");
            csv.comment(&format!(
                "K: {} M: {} mu: {} alpha: {} snr: {} trials: {} seed: {}",
                args.k,
                args.m,
                fmt_exact(&args.mu),
                fmt_exact(&args.alpha),
                powers
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
                args.trials,
                args.seed
            ));
            csv.comment("columns: quantity,slope,stderr,trials,target,tolerance,pass");
            for j in &judged {
                csv.row(&format!(
                    "{},{},{},{},{},{},{}",
                    j.name, j.slope, j.stderr, j.trials, j.target, j.tolerance, j.pass
                ));
            }
            csv.finish()
        }
    };
    emit(&args.out, &content)?;
    Ok(if all_pass {
        Outcome::Pass
    } else {
        Outcome::VerificationFailed
    })
}
