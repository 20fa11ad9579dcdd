pub mod bounds;
pub mod regions;
pub mod schedule;
pub mod simulate;
pub mod sweep;

use crate::output::CliError;
use clap::Args;
use ndt_core::config::NetworkConfig;
use ndt_core::rational::{parse_rational, Rational};

/// Network-size flags shared by the analytic commands.
#[derive(Debug, Args)]
pub struct NetArgs {
    /// Number of user terminals
    #[arg(long = "K")]
    pub k: u32,
    /// Number of cache-equipped relays
    #[arg(long = "M")]
    pub m: u32,
    /// Library size; defaults to K + M
    #[arg(long = "N")]
    pub n: Option<u32>,
}

impl NetArgs {
    pub fn files(&self) -> u32 {
        self.n.unwrap_or(self.k + self.m)
    }

    pub fn config(&self, mu: Rational, alpha: Rational) -> Result<NetworkConfig, CliError> {
        NetworkConfig::new(self.k, self.m, self.files(), mu, alpha)
            .map_err(|e| CliError::usage(e.to_string()))
    }
}

/// Clap value parser for exact rationals (`p/q`, integer or finite decimal).
pub fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}
