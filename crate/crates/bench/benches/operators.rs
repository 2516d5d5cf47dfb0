use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use sun_gates_core::{
    amplitude_operator, build_gates, build_generators, build_w, decompose, plan_encoding, structure_constants,
    u_exponential_form, AmplitudeCoefficients, ChannelSpec, Complex64,
};

fn generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("generators");
    for n in [3, 5, 8] {
        group.bench_with_input(BenchmarkId::new("build", n), &n, |b, &n| {
            b.iter(|| build_generators(black_box(n)).unwrap())
        });
    }
    for n in [3, 5] {
        let gens = build_generators(n).unwrap();
        group.bench_with_input(BenchmarkId::new("structure_constants", n), &gens, |b, g| {
            b.iter(|| structure_constants(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn gates(c: &mut Criterion) {
    let mut group = c.benchmark_group("gates");
    for n in [3, 6] {
        let gens = build_generators(n).unwrap();
        let ch = ChannelSpec::t(n).unwrap();
        group.bench_with_input(BenchmarkId::new("build_t", n), &gens, |b, g| {
            b.iter(|| build_gates(black_box(ch), g).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("u_exponential", n), &gens, |b, g| {
            b.iter(|| u_exponential_form(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    for n in [3, 6] {
        let gens = build_generators(n).unwrap();
        let gs = build_gates(ChannelSpec::s(n).unwrap(), &gens).unwrap();
        group.bench_with_input(BenchmarkId::new("swap", n), &gs.z_gate, |b, op| {
            b.iter(|| decompose(black_box(op), &gens).unwrap())
        });
    }
    group.finish();
}

fn block_encoding(c: &mut Criterion) {
    let mut group = c.benchmark_group("block_encoding");
    for n in [3, 6] {
        let gens = build_generators(n).unwrap();
        let gs = build_gates(ChannelSpec::t(n).unwrap(), &gens).unwrap();
        let coeffs = AmplitudeCoefficients::new(gs.channel, Complex64::new(0.3, 0.4), Complex64::new(-0.2, 0.1));
        let plan = plan_encoding(&coeffs).unwrap();
        group.bench_with_input(BenchmarkId::new("build_w", n), &plan, |b, p| {
            b.iter(|| build_w(black_box(p), &gs).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("amplitude_operator", n), &coeffs, |b, cf| {
            b.iter(|| amplitude_operator(black_box(cf), &gs).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, generators, gates, decomposition, block_encoding);
criterion_main!(benches);
