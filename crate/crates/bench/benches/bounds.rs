use criterion::{black_box, criterion_group, criterion_main, Criterion};
use jscc_bounds::bounds::{d_asym, eta};
use jscc_bounds::broadcast::{g_bsc, region_trace};
use jscc_bounds::info::h_b_inv;
use jscc_bounds::oracles::{
    binomial_sweep, p2p_bruteforce, parse_rational, verify_inequalities, EnumOptions,
};
use jscc_bounds::BinaryBroadcastParams;

fn scalar(c: &mut Criterion) {
    c.bench_function("h_b_inv", |b| b.iter(|| h_b_inv(black_box(0.4))));
    c.bench_function("d_asym", |b| {
        b.iter(|| d_asym(black_box(1.2), black_box(0.2)))
    });
    c.bench_function("eta", |b| b.iter(|| eta(black_box(1.2), black_box(0.2))));
    c.bench_function("g_bsc", |b| {
        b.iter(|| g_bsc(black_box(0.1), black_box(0.05), black_box(0.2)))
    });
}

fn region(c: &mut Criterion) {
    let bp = BinaryBroadcastParams::new(1.2, 0.5, 0.08, 0.05, None).unwrap();
    let grid: Vec<f64> = (1..=10).map(|i| 0.05 * i as f64).collect();
    c.bench_function("region_trace_10", |b| {
        b.iter(|| region_trace(&bp, black_box(&grid)))
    });
}

fn oracles(c: &mut Criterion) {
    let delta = parse_rational("1/10").unwrap();
    let mut g = c.benchmark_group("oracles");
    g.sample_size(10);
    g.bench_function("p2p_exact_2_4", |b| {
        b.iter(|| p2p_bruteforce(2, 4, black_box(&delta), &EnumOptions::default()))
    });
    let fifth = parse_rational("1/5").unwrap();
    g.bench_function("binomial_sweep_1e4", |b| {
        b.iter(|| binomial_sweep(10_000, black_box(&fifth), 100))
    });
    g.bench_function("verify_coarse", |b| {
        b.iter(|| verify_inequalities(&["g-convex", "beta-props", "phi-deriv-le-1"], 1e-2, 1e-9))
    });
    g.finish();
}

criterion_group!(benches, scalar, region, oracles);
criterion_main!(benches);
