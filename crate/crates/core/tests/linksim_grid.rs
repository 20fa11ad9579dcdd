//! Exhaustive exponent validation: residual interference scales as
//! `P^(1-alpha)` and desired signals as `P` across small networks.

use ndt_core::linksim::{estimate_exponents, Quantity};
use ndt_core::rational::{rat, rat_int, to_f64, Rational};

#[test]
fn residual_and_desired_exponents_across_small_networks() {
    let powers = [1e4, 1e6, 1e8];
    let alphas: Vec<Rational> = vec![rat_int(0), rat(1, 4), rat(1, 2), rat(3, 4), rat_int(1)];
    for k in 1..=4u32 {
        for m in 1..=4u32 {
            // representative corner with a non-empty cache
            let c = m.div_ceil(2);
            let mu = rat(c as i64, m as i64);
            for alpha in &alphas {
                let estimates =
                    estimate_exponents(k, m, &mu, alpha, &powers, 10_000, 99).unwrap();
                let alpha_f = to_f64(alpha);
                for e in &estimates {
                    let (tolerance, checked) = match e.quantity {
                        Quantity::DesiredSignal => (0.05, true),
                        Quantity::ResidualInterference => (0.1, true),
                        _ => (0.0, false),
                    };
                    if !checked {
                        continue;
                    }
                    let target = e.quantity.target(alpha_f);
                    assert!(
                        (e.slope - target).abs() <= tolerance,
                        "K={} M={} c={} alpha={}: {} slope {:.4}, target {}",
                        k,
                        m,
                        c,
                        alpha,
                        e.quantity.name(),
                        e.slope,
                        target
                    );
                }
            }
        }
    }
}

#[test]
fn rate_exponents_at_the_extremes() {
    let powers = [1e4, 1e6, 1e8];
    for (alpha, common_target, private_target) in [
        (rat_int(0), 1.0, 0.0),
        (rat_int(1), 0.0, 1.0),
    ] {
        let estimates =
            estimate_exponents(2, 4, &rat(1, 2), &alpha, &powers, 4_000, 17).unwrap();
        for e in &estimates {
            match e.quantity {
                Quantity::CommonRate => assert!(
                    (e.slope - common_target).abs() < 0.15,
                    "alpha={}: common slope {:.4}",
                    alpha,
                    e.slope
                ),
                Quantity::PrivateRate => assert!(
                    (e.slope - private_target).abs() < 0.15,
                    "alpha={}: private slope {:.4}",
                    alpha,
                    e.slope
                ),
                _ => {}
            }
        }
    }
}
