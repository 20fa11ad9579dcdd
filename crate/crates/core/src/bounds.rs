//! Exact NDT bounds: the converse grid bound, the one-shot achievable NDT,
//! the full-cache broadcast bound and the achievable convex envelope over
//! cache-size corner points.

use crate::config::{CornerConfig, NetworkConfig};
use crate::envelope::LowerEnvelope;
use crate::rational::{rat, rat_int, Rational};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("s = {s} is outside [1, {max_s}]")]
    SOutOfRange { s: u32, max_s: u32 },
    #[error("ell = {ell} is outside [{min_ell}, {max_ell}] for s = {s}")]
    EllOutOfRange { ell: u32, s: u32, min_ell: u32, max_ell: u32 },
    #[error("mu = {0} is outside [0, 1]")]
    MuOutOfRange(String),
}

/// Which side of the two-phase scheme limits the delivery time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitingChannel {
    /// The base-station-to-relay broadcast phase dominates.
    Broadcast,
    /// The joint interference phase towards the user terminals dominates.
    Interference,
}

/// Converse bound value together with the grid point attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundWitness {
    pub value: Rational,
    pub argmax_ell: u32,
    pub argmax_s: u32,
    /// True when every grid component stays below the constant floor of 1.
    pub floor_active: bool,
}

/// The two competing terms of the one-shot achievable NDT.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NdtBreakdown {
    pub man_term: Rational,
    pub interference_term: Rational,
    pub value: Rational,
    pub limiting_channel: LimitingChannel,
}

/// Lower/upper bound pair for one corner configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalityReport {
    pub lower: Rational,
    pub upper: Rational,
    pub gap: Rational,
    pub optimal: bool,
}

/// Coded-caching multicast NDT `M (1 - mu) / (1 + mu M)` for arbitrary `mu`.
///
/// The continuous form backs region classification on dense `mu` grids;
/// achievability holds at corner points and on their convex envelope.
pub fn ndt_man_continuous(mu: &Rational, m: u32) -> Rational {
    let m_rat = rat_int(m as i64);
    &m_rat * (Rational::one() - mu) / (Rational::one() + mu * &m_rat)
}

/// Coded-caching multicast NDT at a corner configuration.
pub fn ndt_man(corner: &CornerConfig) -> Rational {
    ndt_man_continuous(corner.config().mu(), corner.config().rns())
}

/// One component of the converse grid: the bound obtained by cutting the
/// network at `s` served terminals with `ell` exposed relay caches.
///
/// With `sbar = M + 1 - s`, the value is
/// `(K + ell - mu (sbar (K - s + (sbar - 1)/2) + ell (ell + 1)/2)) / s`.
pub fn lower_bound_component(
    mu: &Rational,
    ell: u32,
    s: u32,
    k: u32,
    m: u32,
) -> Result<Rational, BoundsError> {
    let max_s = (m + 1).min(k);
    if s < 1 || s > max_s {
        return Err(BoundsError::SOutOfRange { s, max_s });
    }
    let min_ell = m + 1 - s;
    if ell < min_ell || ell > m {
        return Err(BoundsError::EllOutOfRange {
            ell,
            s,
            min_ell,
            max_ell: m,
        });
    }
    Ok(lower_bound_component_unchecked(mu, ell, s, k, m))
}

fn lower_bound_component_unchecked(mu: &Rational, ell: u32, s: u32, k: u32, m: u32) -> Rational {
    let sbar = rat_int((m + 1 - s) as i64);
    let ell_rat = rat_int(ell as i64);
    let cached = &sbar * (rat_int(k as i64) - rat_int(s as i64) + (&sbar - rat_int(1)) / rat_int(2))
        + &ell_rat * (&ell_rat + rat_int(1)) / rat_int(2);
    (rat_int((k + ell) as i64) - mu * cached) / rat_int(s as i64)
}

/// Converse bound on the minimum NDT: `max{1, max over the (ell, s) grid}`.
///
/// The grid bound is derived under perfect channel knowledge; since the NDT
/// is non-increasing in `alpha`, it remains a valid (possibly loose) lower
/// bound at every `alpha`. Ties break towards the smallest `s`, then the
/// smallest `ell`.
pub fn ndt_lower_bound(config: &NetworkConfig) -> LowerBoundWitness {
    let k = config.ues();
    let m = config.rns();
    let mu = config.mu();
    let mut best: Option<(Rational, u32, u32)> = None;
    for s in 1..=(m + 1).min(k) {
        for ell in (m + 1 - s)..=m {
            let value = lower_bound_component_unchecked(mu, ell, s, k, m);
            let improves = match &best {
                None => true,
                Some((current, _, _)) => value > *current,
            };
            if improves {
                best = Some((value, ell, s));
            }
        }
    }
    let (component, argmax_ell, argmax_s) = best.expect("grid contains s = 1, ell = M");
    let floor_active = component < Rational::one();
    LowerBoundWitness {
        value: component.max(Rational::one()),
        argmax_ell,
        argmax_s,
        floor_active,
    }
}

/// Achievable one-shot NDT at a corner configuration, with its branch
/// decomposition.
///
/// The interference term is
/// `(K + man (1 - [K <= mu M] alpha)) / (1 + min{K-1, mu M} alpha)`.
/// At `mu = 0` this reduces to the plain unicast value `K + M` for every
/// `alpha`.
pub fn ndt_one_shot(corner: &CornerConfig) -> NdtBreakdown {
    let k = corner.config().ues();
    let c = corner.cache_units();
    let alpha = corner.config().alpha();
    let man = ndt_man(corner);

    let indicator = if k <= c { Rational::one() } else { Rational::zero() };
    let numerator = rat_int(k as i64) + &man * (Rational::one() - indicator * alpha);
    let zf_streams = rat_int((k - 1).min(c) as i64);
    let interference = numerator / (Rational::one() + zf_streams * alpha);

    let (value, limiting_channel) = if man >= interference {
        (man.clone(), LimitingChannel::Broadcast)
    } else {
        (interference.clone(), LimitingChannel::Interference)
    };
    NdtBreakdown {
        man_term: man,
        interference_term: interference,
        value,
        limiting_channel,
    }
}

/// Corner points `(c/M, one-shot NDT)` for `c = 0..M` at a fixed `alpha`.
pub fn one_shot_corner_points(
    k: u32,
    m: u32,
    n: u32,
    alpha: &Rational,
) -> Vec<(Rational, Rational)> {
    (0..=m)
        .map(|c| {
            let corner = CornerConfig::from_units(k, m, n, c, alpha.clone())
                .expect("corner grid is valid by construction");
            (rat(c as i64, m as i64), ndt_one_shot(&corner).value)
        })
        .collect()
}

/// Achievable NDT at arbitrary `mu`: the lower convex envelope of the corner
/// points, evaluated exactly.
pub fn ndt_envelope(
    k: u32,
    m: u32,
    alpha: &Rational,
    mu_query: &Rational,
) -> Result<Rational, BoundsError> {
    if mu_query < &Rational::zero() || mu_query > &Rational::one() {
        return Err(BoundsError::MuOutOfRange(mu_query.to_string()));
    }
    let points = one_shot_corner_points(k, m, k + m, alpha);
    let envelope = LowerEnvelope::new(points).expect("corner points have increasing x");
    Ok(envelope
        .eval(mu_query)
        .expect("mu_query checked against [0, 1]"))
}

/// Full-cache broadcast bound `K / (1 + max{K-1, M} alpha)`, as printed in
/// its source.
///
/// For `K < M + 1` this is weaker than the matching achievable value, which
/// uses `min{K-1, M}`; both are surfaced and the printed form is never strong
/// enough to flag a configuration as non-optimal on its own.
pub fn full_cache_lower_bound(k: u32, m: u32, alpha: &Rational) -> Rational {
    let streams = rat_int((k.saturating_sub(1)).max(m) as i64);
    rat_int(k as i64) / (Rational::one() + streams * alpha)
}

/// Best known lower bound vs. achievable envelope value at a corner.
///
/// The lower side combines the constant floor, the converse grid bound
/// (valid at every `alpha`) and, at `mu = 1`, the full-cache broadcast
/// bound. The upper side is the convex envelope at `mu`.
pub fn optimality_report(corner: &CornerConfig) -> OptimalityReport {
    let config = corner.config();
    let mut lower = ndt_lower_bound(config).value;
    if corner.cache_units() == config.rns() {
        lower = lower.max(full_cache_lower_bound(
            config.ues(),
            config.rns(),
            config.alpha(),
        ));
    }
    let upper = ndt_envelope(config.ues(), config.rns(), config.alpha(), config.mu())
        .expect("corner mu is inside [0, 1]");
    let gap = &upper - &lower;
    let optimal = gap.is_zero();
    OptimalityReport {
        lower,
        upper,
        gap,
        optimal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn corner(k: u32, m: u32, c: u32, alpha: Rational) -> CornerConfig {
        CornerConfig::from_units(k, m, k + m, c, alpha).unwrap()
    }

    fn config(k: u32, m: u32, mu: Rational, alpha: Rational) -> NetworkConfig {
        NetworkConfig::new(k, m, k + m, mu, alpha).unwrap()
    }

    #[test]
    fn man_values() {
        assert_eq!(ndt_man(&corner(2, 4, 2, rat_int(1))), rat(2, 3));
        assert_eq!(ndt_man(&corner(2, 4, 4, rat_int(1))), rat_int(0));
        assert_eq!(ndt_man(&corner(3, 2, 1, rat_int(1))), rat(1, 2));
    }

    #[test]
    fn lower_bound_component_known_points() {
        // zero cache, (ell, s) = (M, 1) cuts out the full library
        for (k, m) in [(2u32, 4u32), (3, 5), (1, 1)] {
            assert_eq!(
                lower_bound_component(&Rational::zero(), m, 1, k, m).unwrap(),
                rat_int((k + m) as i64)
            );
        }
        // full cache, (ell, s) = (0, M+1); admissible only when K >= M+1
        for (k, m) in [(5u32, 4u32), (5, 1), (3, 2)] {
            assert_eq!(
                lower_bound_component(&Rational::one(), 0, m + 1, k, m).unwrap(),
                rat(k as i64, (m + 1) as i64)
            );
        }
        // full cache, single relay, single terminal: hand evaluation gives 1
        assert_eq!(
            lower_bound_component(&Rational::one(), 1, 1, 1, 1).unwrap(),
            rat_int(1)
        );
    }

    #[test]
    fn lower_bound_component_rejects_bad_grid_points() {
        assert!(matches!(
            lower_bound_component(&Rational::zero(), 4, 3, 2, 4),
            Err(BoundsError::SOutOfRange { s: 3, max_s: 2 })
        ));
        assert!(matches!(
            lower_bound_component(&Rational::zero(), 3, 1, 2, 4),
            Err(BoundsError::EllOutOfRange { ell: 3, s: 1, .. })
        ));
    }

    #[test]
    fn lower_bound_witnesses() {
        let w = ndt_lower_bound(&config(2, 1, Rational::zero(), rat_int(1)));
        assert_eq!(w.value, rat_int(3));
        assert_eq!((w.argmax_ell, w.argmax_s), (1, 1));
        assert!(!w.floor_active);

        let w = ndt_lower_bound(&config(1, 1, Rational::one(), rat_int(1)));
        assert_eq!(w.value, rat_int(1));

        let w = ndt_lower_bound(&config(2, 4, rat(1, 2), rat_int(1)));
        assert_eq!(w.value, rat_int(1));
    }

    #[test]
    fn one_shot_values() {
        let b = ndt_one_shot(&corner(2, 4, 2, rat_int(1)));
        assert_eq!(b.value, rat_int(1));
        assert_eq!(b.man_term, rat(2, 3));
        assert_eq!(b.interference_term, rat_int(1));
        assert_eq!(b.limiting_channel, LimitingChannel::Interference);

        let b = ndt_one_shot(&corner(3, 2, 1, rat(1, 2)));
        assert_eq!(b.value, rat(7, 3));

        // full cache reduces to the multi-antenna broadcast value
        for (k, m) in [(2u32, 4u32), (4, 2), (3, 3)] {
            for alpha in [rat_int(0), rat(1, 4), rat(1, 2), rat_int(1)] {
                let b = ndt_one_shot(&corner(k, m, m, alpha.clone()));
                let expected = rat_int(k as i64)
                    / (Rational::one() + rat_int(((k - 1).min(m)) as i64) * &alpha);
                assert_eq!(b.value, expected);
            }
        }
    }

    #[test]
    fn zero_cache_is_unicast_for_every_alpha() {
        for alpha in [rat_int(0), rat(1, 3), rat_int(1)] {
            let b = ndt_one_shot(&corner(2, 4, 0, alpha));
            assert_eq!(b.value, rat_int(6));
            assert_eq!(b.limiting_channel, LimitingChannel::Interference);
        }
    }

    #[test]
    fn envelope_values() {
        assert_eq!(
            ndt_envelope(2, 2, &rat_int(1), &rat(1, 2)).unwrap(),
            rat(5, 4)
        );
        assert_eq!(
            ndt_envelope(2, 2, &rat_int(1), &rat(1, 4)).unwrap(),
            rat(21, 8)
        );
        for (k, m) in [(2u32, 2u32), (3, 5), (1, 4)] {
            assert_eq!(
                ndt_envelope(k, m, &rat(1, 2), &Rational::zero()).unwrap(),
                rat_int((k + m) as i64)
            );
        }
        assert!(ndt_envelope(2, 2, &rat_int(1), &rat(3, 2)).is_err());
    }

    #[test]
    fn full_cache_bound_values() {
        assert_eq!(full_cache_lower_bound(2, 4, &rat_int(1)), rat(2, 5));
        assert_eq!(full_cache_lower_bound(5, 3, &Rational::zero()), rat_int(5));
        // at K = M + 1 the printed bound matches the achievable value
        for m in 1..=6u32 {
            let k = m + 1;
            for alpha in [rat_int(0), rat(1, 4), rat(1, 2), rat_int(1)] {
                let achievable = ndt_one_shot(&corner(k, m, m, alpha.clone())).value;
                assert_eq!(full_cache_lower_bound(k, m, &alpha), achievable);
            }
        }
    }

    #[test]
    fn optimality_reports() {
        let r = optimality_report(&corner(2, 4, 2, rat_int(1)));
        assert!(r.optimal);
        assert_eq!(r.lower, rat_int(1));
        assert_eq!(r.upper, rat_int(1));

        for alpha in [rat_int(0), rat(1, 2), rat_int(1)] {
            let r = optimality_report(&corner(3, 2, 0, alpha));
            assert!(r.optimal, "zero cache should be tight");
            assert_eq!(r.upper, rat_int(5));
        }

        let r = optimality_report(&corner(2, 1, 1, rat_int(1)));
        assert!(r.optimal);
        assert_eq!(r.lower, rat_int(1));
    }
}
