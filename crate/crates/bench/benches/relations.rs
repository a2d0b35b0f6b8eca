use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use qsl_core::oscillator::{check_homomorphism, RealizationMap};
use qsl_core::rep::{check_gl_relations, check_theorem1, gram_check};
use qsl_core::stats::{partition_function, SpectrumConfig};
use qsl_core::{Jacobson, ModeSignature, Normalization, QParameter, RepContext};

fn module(n: usize, m: usize, p: u32, q: QParameter, norm: Normalization) -> RepContext {
    RepContext::fock_module(ModeSignature::new(n, m).unwrap(), p, q, norm).unwrap()
}

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    let q = QParameter::phase(0.3).unwrap();
    for (n, m, p) in [(1, 1, 4), (2, 1, 4), (2, 2, 4), (3, 1, 5)] {
        let id = format!("{n}|{m} p={p}");
        g.bench_with_input(BenchmarkId::new("ladders", &id), &(n, m, p), |b, &(n, m, p)| {
            b.iter(|| {
                let ctx = module(n, m, p, q, Normalization::Unnormalized);
                for i in 1..=n + m {
                    black_box(ctx.jg_matrix(Jacobson::Raising(i)).unwrap());
                    black_box(ctx.jg_matrix(Jacobson::Lowering(i)).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn relations(c: &mut Criterion) {
    let mut g = c.benchmark_group("relations");
    g.sample_size(20);
    let q = QParameter::generic(Complex64::new(1.1, 0.3)).unwrap();
    for (n, m, p) in [(1, 1, 3), (2, 1, 3), (1, 2, 3)] {
        let ctx = module(n, m, p, q, Normalization::Unnormalized);
        let id = format!("{n}|{m} p={p}");
        g.bench_function(BenchmarkId::new("ladder", &id), |b| b.iter(|| black_box(check_theorem1(&ctx).unwrap())));
        g.bench_function(BenchmarkId::new("cartan-weyl", &id), |b| {
            b.iter(|| black_box(check_gl_relations(&ctx).unwrap()))
        });
    }
    let phase = module(2, 2, 3, QParameter::phase(0.3).unwrap(), Normalization::Unnormalized);
    g.bench_function("gram 2|2 p=3", |b| b.iter(|| black_box(gram_check(&phase).unwrap())));
    let sig = ModeSignature::new(2, 1).unwrap();
    let dyson = RealizationMap::dyson(sig, Complex64::new(2.3, 0.0), QParameter::phase(0.3).unwrap(), Some(6)).unwrap();
    g.bench_function("dyson homomorphism 2|1 cutoff 6", |b| {
        b.iter(|| black_box(check_homomorphism(&dyson).unwrap()))
    });
    g.finish();
}

fn statistics(c: &mut Criterion) {
    let sig = ModeSignature::new(3, 2).unwrap();
    let cfg = SpectrumConfig::new(&sig, vec![0.1, 0.2, 0.3, -0.1, 0.5], 1.3).unwrap();
    c.bench_function("partition 3|2 p=12", |b| b.iter(|| black_box(partition_function(sig, 12, &cfg).unwrap())));
}

criterion_group!(benches, build, relations, statistics);
criterion_main!(benches);
