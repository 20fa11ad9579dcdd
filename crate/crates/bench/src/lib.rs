//! Shared fixtures for the workspace benchmarks.

use ndt_core::config::{CornerConfig, DemandVector};
use ndt_core::rational::{rat, Rational};

/// Corner configuration with the default library size `N = K + M`.
pub fn corner(k: u32, m: u32, c: u32, alpha: Rational) -> CornerConfig {
    CornerConfig::from_units(k, m, k + m, c, alpha).expect("benchmark fixture is valid")
}

/// Worst-case demand for a fixture configuration.
pub fn demand(config: &CornerConfig) -> DemandVector {
    DemandVector::worst_case(config.config()).expect("fixture has enough files")
}

/// Half channel quality, the most even split of the exponent budget.
pub fn half() -> Rational {
    rat(1, 2)
}
