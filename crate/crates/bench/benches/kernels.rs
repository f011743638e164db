use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fdde::exact::{exact_caputo_constant_history, exact_phitau_ramp_history};
use fdde::specfun::{gamma, gl_weights, mittag_leffler, reg_inc_beta};
use fdde::{ForcingFn, HistoryFn, LinearProblem, Order};

fn special_functions(c: &mut Criterion) {
    c.bench_function("gamma", |b| b.iter(|| gamma(black_box(7.3))));
    c.bench_function("reg_inc_beta", |b| b.iter(|| reg_inc_beta(black_box(0.37), 2.4, 0.2)));
    c.bench_function("mittag_leffler(0.8, 1.8, -4)", |b| {
        b.iter(|| mittag_leffler(0.8, 1.8, black_box(-4.0)))
    });
    c.bench_function("mittag_leffler(2, 1.3, -25)", |b| {
        b.iter(|| mittag_leffler(2.0, 1.3, black_box(-25.0)))
    });
    c.bench_function("gl_weights(0.8, 4096)", |b| b.iter(|| gl_weights(black_box(0.8), 4096)));
}

fn closed_forms(c: &mut Criterion) {
    let a = Order::new(0.8).unwrap();
    let constant = LinearProblem::new(a, -1.0, 1.0, HistoryFn::constant(1.0).unwrap(), ForcingFn::Zero).unwrap();
    let forced = constant
        .with_forcing(ForcingFn::Cosine {
            amplitude: 0.5,
            omega: 3.0,
        })
        .unwrap();
    let ramp = LinearProblem::new(a, -1.0, 1.0, HistoryFn::ramp(1.0, 1.0).unwrap(), ForcingFn::Zero).unwrap();
    c.bench_function("exact constant history, t = 9.7", |b| {
        b.iter(|| exact_caputo_constant_history(&constant, black_box(9.7)))
    });
    c.bench_function("exact constant history, cosine forcing, t = 9.7", |b| {
        b.iter(|| exact_caputo_constant_history(&forced, black_box(9.7)))
    });
    c.bench_function("exact phitau ramp history, t = 9.7", |b| {
        b.iter(|| exact_phitau_ramp_history(&ramp, black_box(9.7)))
    });
}

criterion_group!(benches, special_functions, closed_forms);
criterion_main!(benches);
