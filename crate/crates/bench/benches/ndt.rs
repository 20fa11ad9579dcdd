use criterion::{criterion_group, criterion_main, Criterion};
use ndt_bench::{corner, demand, half};
use ndt_core::bounds::{ndt_envelope, ndt_lower_bound, ndt_one_shot};
use ndt_core::linksim::{draw_channels, zf_residual_power};
use ndt_core::rational::{rat, rat_int};
use ndt_core::regions::region_map;
use ndt_core::scheduler::{build_schedule, verify_schedule};
use std::hint::black_box;

fn bench_bounds(c: &mut Criterion) {
    c.bench_function("lower_bound_grid_k12_m12", |b| {
        let config = corner(12, 12, 6, rat_int(1)).into_config();
        b.iter(|| ndt_lower_bound(black_box(&config)))
    });
    c.bench_function("one_shot_corner", |b| {
        let cfg = corner(8, 10, 5, half());
        b.iter(|| ndt_one_shot(black_box(&cfg)))
    });
    c.bench_function("envelope_m24", |b| {
        let mu = rat(7, 16);
        b.iter(|| ndt_envelope(8, 24, &half(), black_box(&mu)).unwrap())
    });
}

fn bench_scheduler(c: &mut Criterion) {
    let cfg = corner(6, 6, 3, half());
    let d = demand(&cfg);
    c.bench_function("build_schedule_k6_m6", |b| {
        b.iter(|| build_schedule(black_box(&cfg), &d).unwrap())
    });
    let schedule = build_schedule(&cfg, &d).unwrap();
    c.bench_function("verify_schedule_k6_m6", |b| {
        b.iter(|| verify_schedule(black_box(&schedule), &cfg))
    });
}

fn bench_regions(c: &mut Criterion) {
    c.bench_function("region_map_k2_step50_m20", |b| {
        let step = rat(1, 50);
        b.iter(|| region_map(2, black_box(&step), 20).unwrap())
    });
}

fn bench_linksim(c: &mut Criterion) {
    c.bench_function("zf_trial_k2_m4", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed = seed.wrapping_add(1);
            let real = draw_channels(2, 4, &half(), 1e6, seed).unwrap();
            zf_residual_power(&real, &[0, 1], &[0, 1]).unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_bounds,
    bench_scheduler,
    bench_regions,
    bench_linksim
);
criterion_main!(benches);
