//! Delivery-time analysis of a cache-aided broadcast-relay downlink.
//!
//! One base station serves `M` cache-equipped relays over a broadcast channel
//! and, together with the relays, `K` user terminals over an interference
//! channel. File delivery latency is measured by the normalized delivery
//! time (NDT): the high-SNR worst-case per-bit latency relative to an
//! interference-free point-to-point link.
//!
//! The crate provides, all in exact rational arithmetic:
//!
//! * [`bounds`]: a converse lower bound with its maximizing witness, the
//!   achievable one-shot NDT with its broadcast/interference decomposition,
//!   the full-cache broadcast bound, the convex envelope over cache-size
//!   corner points, and per-configuration optimality reports;
//! * [`regions`]: classification of `(mu, K, M)` triplets into the five
//!   closed-form regimes of the achievable NDT, plus 2D region maps with
//!   their analytic border curves;
//! * [`scheduler`]: the explicit two-phase placement-and-delivery schedule
//!   behind the achievable bound, together with a from-scratch recount
//!   verifier that doubles as a counting oracle;
//! * [`linksim`]: Monte-Carlo estimation of the zero-forcing power-level
//!   exponents under imperfect channel knowledge of quality `alpha`.

pub mod bounds;
pub mod combinatorics;
pub mod config;
pub mod envelope;
pub mod linksim;
pub mod rational;
pub mod regions;
pub mod scheduler;

pub use bounds::{
    full_cache_lower_bound, lower_bound_component, ndt_envelope, ndt_lower_bound, ndt_man,
    ndt_man_continuous, ndt_one_shot, optimality_report, LimitingChannel, LowerBoundWitness,
    NdtBreakdown, OptimalityReport,
};
pub use combinatorics::{binom, binom_u, k_subsets};
pub use config::{worst_case_demand, ConfigError, CornerConfig, DemandVector, NetworkConfig};
pub use envelope::LowerEnvelope;
pub use linksim::{
    draw_channels, estimate_exponents, zf_residual_power, ChannelRealization, ExponentEstimate,
    LinksimError, Quantity,
};
pub use rational::{parse_rational, rat, rat_int, Rational};
pub use regions::{classify, region_map, region_ndt, NdtFormula, Region, RegionMap, RegionsError};
pub use scheduler::{
    build_placement, build_schedule, schedule_ndt, scheme_counts, verify_schedule, Placement,
    Phase1Slot, Phase2Ledger, Phase2Slot, Schedule, ScheduleError, SchemeCounts, SymbolId,
    VerifyReport,
};
