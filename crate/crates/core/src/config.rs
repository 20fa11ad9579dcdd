//! Validated network configuration and demand vectors.
//!
//! A configuration fixes the downlink shape: one base station, `M` cache
//! equipped relays, `K` user terminals, a library of `N` files, a fractional
//! cache size `mu` and a channel-knowledge quality `alpha`. Every bound and
//! every schedule in this crate is a function of such a tuple.

use crate::rational::{rat, rat_int, Rational};
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("at least one user terminal is required")]
    ZeroUes,
    #[error("at least one relay is required")]
    ZeroRns,
    #[error("fractional cache size mu = {0} is outside [0, 1]")]
    MuOutOfRange(String),
    #[error("channel quality alpha = {0} is outside [0, 1]")]
    AlphaOutOfRange(String),
    #[error("library of {n} files is too small; worst-case demands need at least {required}")]
    LibraryTooSmall { n: u32, required: u32 },
    #[error("mu = {mu} is not a multiple of 1/{m}; valid cache sizes are {{0, 1/{m}, .., 1}}")]
    NonCornerMu { mu: String, m: u32 },
    #[error("demand vector has {got} entries, expected K + M = {expected}")]
    DemandLength { expected: usize, got: usize },
    #[error("demand entry {entry} at position {position} is outside [1, {n}]")]
    DemandEntryOutOfRange { position: usize, entry: u32, n: u32 },
}

/// The network tuple `(K, M, N, mu, alpha)` with its validity rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkConfig {
    k: u32,
    m: u32,
    n: u32,
    mu: Rational,
    alpha: Rational,
}

impl NetworkConfig {
    /// Validates and builds a configuration. Errors are distinct per violated
    /// rule so callers can report the exact reason.
    pub fn new(k: u32, m: u32, n: u32, mu: Rational, alpha: Rational) -> Result<Self, ConfigError> {
        let config = Self { k, m, n, mu, alpha };
        config.validate()?;
        Ok(config)
    }

    /// Re-checks every invariant. Validation is idempotent: a config built by
    /// [`NetworkConfig::new`] always passes.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.k == 0 {
            return Err(ConfigError::ZeroUes);
        }
        if self.m == 0 {
            return Err(ConfigError::ZeroRns);
        }
        if self.mu < Rational::zero() || self.mu > Rational::one() {
            return Err(ConfigError::MuOutOfRange(self.mu.to_string()));
        }
        if self.alpha < Rational::zero() || self.alpha > Rational::one() {
            return Err(ConfigError::AlphaOutOfRange(self.alpha.to_string()));
        }
        if self.n < self.k + self.m {
            return Err(ConfigError::LibraryTooSmall {
                n: self.n,
                required: self.k + self.m,
            });
        }
        Ok(())
    }

    pub fn ues(&self) -> u32 {
        self.k
    }

    pub fn rns(&self) -> u32 {
        self.m
    }

    pub fn files(&self) -> u32 {
        self.n
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    /// Same configuration evaluated at a different channel quality.
    pub fn with_alpha(&self, alpha: Rational) -> Result<Self, ConfigError> {
        Self::new(self.k, self.m, self.n, self.mu.clone(), alpha)
    }
}

impl fmt::Display for NetworkConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K={} M={} N={} mu={} alpha={}",
            self.k, self.m, self.n, self.mu, self.alpha
        )
    }
}

/// A configuration whose cache size sits on a corner point `mu = c/M`,
/// where the one-shot scheme's subset combinatorics are integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerConfig {
    config: NetworkConfig,
    cache_units: u32,
}

impl CornerConfig {
    pub fn new(config: NetworkConfig) -> Result<Self, ConfigError> {
        let scaled = config.mu() * rat_int(config.rns() as i64);
        if !scaled.is_integer() {
            return Err(ConfigError::NonCornerMu {
                mu: config.mu().to_string(),
                m: config.rns(),
            });
        }
        let cache_units = scaled
            .to_integer()
            .to_u32()
            .expect("mu in [0,1] times M fits in u32");
        Ok(Self {
            config,
            cache_units,
        })
    }

    /// Convenience constructor from `c` cache units, i.e. `mu = c/M`.
    pub fn from_units(
        k: u32,
        m: u32,
        n: u32,
        cache_units: u32,
        alpha: Rational,
    ) -> Result<Self, ConfigError> {
        let mu = rat(cache_units as i64, m.max(1) as i64);
        Self::new(NetworkConfig::new(k, m, n, mu, alpha)?)
    }

    pub fn config(&self) -> &NetworkConfig {
        &self.config
    }

    /// `c = mu * M`, the integral number of cache units.
    pub fn cache_units(&self) -> u32 {
        self.cache_units
    }

    pub fn into_config(self) -> NetworkConfig {
        self.config
    }
}

/// Requested file indices: the first `K` entries belong to the user
/// terminals, the remaining `M` to the relays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandVector {
    entries: Vec<u32>,
    ues: u32,
}

impl DemandVector {
    pub fn new(entries: Vec<u32>, config: &NetworkConfig) -> Result<Self, ConfigError> {
        let expected = (config.ues() + config.rns()) as usize;
        if entries.len() != expected {
            return Err(ConfigError::DemandLength {
                expected,
                got: entries.len(),
            });
        }
        for (position, &entry) in entries.iter().enumerate() {
            if entry == 0 || entry > config.files() {
                return Err(ConfigError::DemandEntryOutOfRange {
                    position: position + 1,
                    entry,
                    n: config.files(),
                });
            }
        }
        Ok(Self {
            entries,
            ues: config.ues(),
        })
    }

    /// The canonical worst case: all `K + M` nodes request distinct files,
    /// assigned as `(1, 2, .., K+M)`. Requires `N >= K + M`.
    pub fn worst_case(config: &NetworkConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        let total = config.ues() + config.rns();
        Self::new((1..=total).collect(), config)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Number of user terminals the vector was built for.
    pub fn ues(&self) -> u32 {
        self.ues
    }

    /// Demand of user terminal `k` (1-based).
    pub fn ue_demand(&self, k: u32) -> u32 {
        self.entries[(k - 1) as usize]
    }

    /// Demand of relay `m` (1-based); relays follow the UE block.
    pub fn rn_demand(&self, m: u32) -> u32 {
        self.entries[(self.ues + m - 1) as usize]
    }

    /// True iff all entries are pairwise distinct.
    pub fn is_worst_case(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.entries.iter().all(|e| seen.insert(*e))
    }
}

/// The worst-case demand vector `(1, 2, .., K+M)` for a validated config.
pub fn worst_case_demand(config: &NetworkConfig) -> Result<DemandVector, ConfigError> {
    DemandVector::worst_case(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn cfg(k: u32, m: u32, n: u32, mu: Rational, alpha: Rational) -> Result<NetworkConfig, ConfigError> {
        NetworkConfig::new(k, m, n, mu, alpha)
    }

    #[test]
    fn accepts_valid_config() {
        let c = cfg(2, 4, 6, rat(1, 2), rat_int(1)).unwrap();
        assert_eq!(c.ues(), 2);
        assert_eq!(c.rns(), 4);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_small_library() {
        let err = cfg(2, 4, 5, rat(1, 2), rat_int(1)).unwrap_err();
        assert_eq!(err, ConfigError::LibraryTooSmall { n: 5, required: 6 });
    }

    #[test]
    fn rejects_out_of_range_mu_and_alpha() {
        assert!(matches!(
            cfg(2, 4, 6, rat(3, 2), rat_int(1)).unwrap_err(),
            ConfigError::MuOutOfRange(_)
        ));
        assert!(matches!(
            cfg(2, 4, 6, rat(1, 2), rat(-1, 4)).unwrap_err(),
            ConfigError::AlphaOutOfRange(_)
        ));
        assert!(matches!(
            cfg(0, 4, 6, rat(1, 2), rat_int(1)).unwrap_err(),
            ConfigError::ZeroUes
        ));
        assert!(matches!(
            cfg(2, 0, 6, rat(1, 2), rat_int(1)).unwrap_err(),
            ConfigError::ZeroRns
        ));
    }

    #[test]
    fn corner_detection() {
        let c = cfg(2, 4, 6, rat(1, 2), rat_int(1)).unwrap();
        let corner = CornerConfig::new(c).unwrap();
        assert_eq!(corner.cache_units(), 2);

        let c = cfg(2, 4, 6, rat(1, 3), rat_int(1)).unwrap();
        assert!(matches!(
            CornerConfig::new(c).unwrap_err(),
            ConfigError::NonCornerMu { m: 4, .. }
        ));
    }

    #[test]
    fn worst_case_demand_is_identity_assignment() {
        let c = cfg(2, 4, 6, rat(1, 2), rat_int(1)).unwrap();
        let d = worst_case_demand(&c).unwrap();
        assert_eq!(d.entries(), &[1, 2, 3, 4, 5, 6]);
        assert!(d.is_worst_case());
        assert_eq!(d.ue_demand(1), 1);
        assert_eq!(d.rn_demand(1), 3);
        assert_eq!(d.rn_demand(4), 6);

        let c = cfg(1, 1, 2, Rational::zero(), rat_int(1)).unwrap();
        assert_eq!(worst_case_demand(&c).unwrap().entries(), &[1, 2]);

        assert!(cfg(1, 1, 1, Rational::zero(), rat_int(1)).is_err());
    }

    #[test]
    fn demand_validation() {
        let c = cfg(1, 1, 3, Rational::zero(), rat_int(1)).unwrap();
        assert!(DemandVector::new(vec![1, 2, 3], &c).is_err());
        assert!(matches!(
            DemandVector::new(vec![1, 4], &c).unwrap_err(),
            ConfigError::DemandEntryOutOfRange { position: 2, entry: 4, n: 3 }
        ));
        let d = DemandVector::new(vec![2, 2], &c).unwrap();
        assert!(!d.is_worst_case());
    }
}
