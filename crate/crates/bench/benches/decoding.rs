use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use multitrial_core::{
    inject_errors, make_schedule, multi_trial_decode, y_roots, GrsCode, InterpolationContext, InterpolationState, Poly,
    PrimeField,
};

fn rs16_4() -> GrsCode {
    GrsCode::standard(PrimeField::new(17).unwrap(), 16, 4).unwrap()
}

fn received(code: &GrsCode, weight: usize) -> Vec<u32> {
    let cw = code.encode(&Poly::from_coeffs(code.field(), &[3, 1, 4, 1])).unwrap();
    inject_errors(code.field(), &cw, weight, 42).unwrap().0
}

fn decode_vs_one_shot(c: &mut Criterion) {
    let code = rs16_4();
    let sched = make_schedule(16, 4, 2, 4).unwrap();
    let mut g = c.benchmark_group("rs16_4_target_2_4");
    for weight in [0, 4, 7, 8] {
        let r = received(&code, weight);
        g.bench_with_input(BenchmarkId::new("multi_trial", weight), &r, |b, r| {
            b.iter(|| multi_trial_decode(&code, black_box(r), &sched).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("one_shot_reduction", weight), &r, |b, r| {
            b.iter(|| {
                let ctx = Arc::new(InterpolationContext::new(&code, black_box(r)).unwrap());
                InterpolationState::direct(ctx, 2, 4).unwrap()
            })
        });
    }
    g.finish();
}

fn root_finding(c: &mut Criterion) {
    let code = rs16_4();
    let ctx = Arc::new(InterpolationContext::new(&code, &received(&code, 8)).unwrap());
    let (st, _) = InterpolationState::direct(ctx, 2, 4).unwrap();
    let (_, q, _) = st.minimal_weighted_row();
    c.bench_function("y_roots_rs16_4_s2_l4", |b| {
        b.iter(|| y_roots(black_box(&q), 4).unwrap())
    });
}

criterion_group!(benches, decode_vs_one_shot, root_finding);
criterion_main!(benches);
