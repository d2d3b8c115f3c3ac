use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use edskit_bench::{congruent_five, gcd_pair, sequence, somos_curve};
use edskit_core::heights::canonical_height_congruent;
use edskit_core::number_theory::{remove_shared_factors, ProfileSieve};
use edskit_core::primitive::verdicts;
use edskit_core::somos::somos4;
use edskit_core::zsigmondy::{even_candidates, generic_even_candidates};
use edskit_core::{zsigmondy_bound, ZsigmondyOptions};

fn group_law(c: &mut Criterion) {
    let inst = congruent_five();
    let p3 = inst.curve.mul(3, &inst.p);
    let p5 = inst.curve.mul(5, &inst.p);
    c.bench_function("add 3P + 5P", |b| {
        b.iter(|| inst.curve.add(black_box(&p3), black_box(&p5)))
    });
    c.bench_function("mul 64P", |b| {
        b.iter(|| inst.curve.mul(black_box(64), &inst.p))
    });
}

fn generation(c: &mut Criterion) {
    let mut g = c.benchmark_group("generate");
    for len in [25u64, 50, 100] {
        let inst = congruent_five();
        g.bench_with_input(BenchmarkId::new("congruent T=5", len), &len, |b, &len| {
            b.iter(|| sequence(&inst, len))
        });
    }
    g.bench_function("somos4 200", |b| b.iter(|| somos4(200, [1, 1, 1, 1])));
    g.finish();
}

fn primitive(c: &mut Criterion) {
    let seq = sequence(&somos_curve(), 60);
    c.bench_function("verdicts somos curve 60", |b| {
        b.iter(|| verdicts(black_box(&seq)))
    });
    let mut g = c.benchmark_group("remove_shared_factors");
    for bits in [256u64, 4096, 32768] {
        let (x, y) = gcd_pair(bits);
        g.bench_with_input(BenchmarkId::from_parameter(bits), &bits, |b, _| {
            b.iter(|| remove_shared_factors(black_box(&x), black_box(&y)))
        });
    }
    g.finish();
}

fn bounds(c: &mut Criterion) {
    let inst = congruent_five();
    c.bench_function("height interval k=5", |b| {
        b.iter(|| canonical_height_congruent(5, black_box(&inst.p), 5))
    });
    c.bench_function("sieve 1e6", |b| {
        b.iter(|| ProfileSieve::new(black_box(1_000_000)))
    });
    c.bench_function("generic even scan", |b| b.iter(generic_even_candidates));
    c.bench_function("even scan T=5", |b| {
        b.iter(|| even_candidates(5, black_box(1.8975)))
    });
    c.bench_function("zsigmondy_bound T=5", |b| {
        b.iter(|| zsigmondy_bound(black_box(&inst), &ZsigmondyOptions::default()))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = group_law, generation, primitive, bounds
}
criterion_main!(benches);
