//! Cross-checks between the materialized schedule, its closed-form counts
//! and the one-shot NDT formula, plus order-invariance under slot shuffles.

use ndt_core::bounds::{ndt_one_shot, LimitingChannel};
use ndt_core::combinatorics::binom;
use ndt_core::config::{CornerConfig, DemandVector};
use ndt_core::rational::{rat, rat_big, rat_int, Rational};
use ndt_core::scheduler::{build_schedule, schedule_ndt, scheme_counts, verify_schedule};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn corner(k: u32, m: u32, c: u32, alpha: Rational) -> CornerConfig {
    CornerConfig::from_units(k, m, k + m, c, alpha).unwrap()
}

fn alpha_grid() -> Vec<Rational> {
    vec![rat_int(0), rat(1, 4), rat(1, 2), rat(3, 4), rat_int(1)]
}

#[test]
fn schedule_counts_match_the_one_shot_formula_exhaustively() {
    for m in 1..=6u32 {
        for k in 1..=6u32 {
            for c in 0..=m {
                for alpha in alpha_grid() {
                    let cfg = corner(k, m, c, alpha);
                    let breakdown = ndt_one_shot(&cfg);
                    assert_eq!(
                        schedule_ndt(&cfg),
                        breakdown.value,
                        "NDT mismatch at K={} M={} c={} alpha={}",
                        k,
                        m,
                        c,
                        cfg.config().alpha()
                    );

                    let counts = scheme_counts(&cfg);
                    // phase two is needed exactly when the interference side limits
                    assert_eq!(
                        counts.t2.is_zero(),
                        breakdown.limiting_channel == LimitingChannel::Broadcast
                            || counts.ue_phase1_dof >= rat_big(&counts.symbols_per_file),
                    );
                    let broadcast_limited =
                        breakdown.limiting_channel == LimitingChannel::Broadcast;
                    assert_eq!(
                        counts.t2.is_zero(),
                        broadcast_limited,
                        "branch disagreement at K={} M={} c={}",
                        k,
                        m,
                        c
                    );
                }
            }
        }
    }
}

#[test]
fn built_schedules_verify_and_recount_to_the_formula() {
    for m in 1..=5u32 {
        for k in 1..=5u32 {
            for c in 0..=m {
                for alpha in [rat_int(0), rat(1, 2), rat_int(1)] {
                    let cfg = corner(k, m, c, alpha);
                    let demand = DemandVector::worst_case(cfg.config()).unwrap();
                    let schedule = build_schedule(&cfg, &demand).unwrap();
                    let report = verify_schedule(&schedule, &cfg);
                    assert!(
                        report.all_pass(),
                        "verification failed at K={} M={} c={}: {:?}",
                        k,
                        m,
                        c,
                        report
                    );
                    assert_eq!(report.ndt, ndt_one_shot(&cfg).value);
                    assert_eq!(&report.cache_ratio, cfg.config().mu());

                    let counts = scheme_counts(&cfg);
                    // every terminal sees the same phase-one capacity L~
                    for dof in &report.ue_phase1_dof {
                        assert_eq!(dof, &counts.ue_phase1_dof);
                    }
                    // per relay, uncached symbols number Gamma * C(M-1, c)
                    let expected_uncached = counts.gamma.clone()
                        * binom(m as u64 - 1, c as i64);
                    for rn in 1..=m {
                        let uncached = schedule
                            .placement
                            .uncached_symbols(rn, schedule.demand.rn_demand(rn));
                        assert_eq!(BigUint::from(uncached.len()), expected_uncached);
                    }
                }
            }
        }
    }
}

#[test]
fn slot_order_does_not_change_the_recount() {
    let cfg = corner(3, 4, 2, rat(1, 2));
    let demand = DemandVector::worst_case(cfg.config()).unwrap();
    let reference = build_schedule(&cfg, &demand).unwrap();
    let baseline = verify_schedule(&reference, &cfg);
    assert!(baseline.all_pass());

    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for _ in 0..5 {
        let mut shuffled = reference.clone();
        shuffled.phase1.shuffle(&mut rng);
        let report = verify_schedule(&shuffled, &cfg);
        assert!(report.all_pass());
        assert_eq!(report.ndt, baseline.ndt);
        assert_eq!(report.ue_phase1_dof, baseline.ue_phase1_dof);
    }
}

#[test]
fn non_worst_case_demands_still_verify() {
    let cfg = corner(2, 3, 1, rat(1, 2));
    // repeated requests across relays and terminals
    let demand = DemandVector::new(vec![2, 2, 1, 1, 5], cfg.config()).unwrap();
    assert!(!demand.is_worst_case());
    let schedule = build_schedule(&cfg, &demand).unwrap();
    let report = verify_schedule(&schedule, &cfg);
    assert!(report.all_pass(), "{:?}", report);
    // the NDT metric itself is defined against the worst case
    assert_eq!(report.ndt, ndt_one_shot(&cfg).value);
}

#[test]
fn demand_length_mismatch_is_rejected() {
    let cfg = corner(2, 3, 1, rat(1, 2));
    let other = corner(2, 4, 2, rat(1, 2));
    let demand = DemandVector::worst_case(other.config()).unwrap();
    assert!(build_schedule(&cfg, &demand).is_err());
}
