//! Sequential against rayon execution on the heavier kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use langlands_core::fuzz::{self, FuzzConfig};
use langlands_core::weyl::{GaloisAction, GenerateOptions, RelativeWeylGroup};
use langlands_core::{BasedRootDatum, Execution, ParabolicSubset, WeylGroup};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn weyl_generation(c: &mut Criterion) {
    let mut g = c.benchmark_group("weyl_generate");
    g.sample_size(10);
    for n in [6, 7] {
        let datum = BasedRootDatum::gln(n);
        for (name, exec) in MODES {
            let opts = GenerateOptions { execution: exec, ..GenerateOptions::default() };
            g.bench_with_input(BenchmarkId::new(name, format!("GL{n}")), &datum, |b, d| {
                b.iter(|| WeylGroup::generate_with(d, opts).unwrap())
            });
        }
    }
    g.finish();
}

fn relative_weyl(c: &mut Criterion) {
    let mut g = c.benchmark_group("relative_weyl");
    g.sample_size(10);
    for (m, d) in [(3, 2), (4, 2)] {
        let group = WeylGroup::generate(&BasedRootDatum::gln(m * d)).unwrap();
        let base = ParabolicSubset::from_blocks(&vec![d; m]);
        let action = GaloisAction::trivial();
        for (name, exec) in MODES {
            g.bench_function(BenchmarkId::new(name, format!("GL{m}(D{d})")), |b| {
                b.iter(|| RelativeWeylGroup::new_with(&group, &base, &action, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn roundtrip(c: &mut Criterion) {
    let mut g = c.benchmark_group("fuzz_roundtrip");
    g.sample_size(10);
    let cfg = FuzzConfig { cases: 2_000, ..FuzzConfig::default() };
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, cfg.cases), |b| b.iter(|| fuzz::roundtrip(&cfg, exec)));
    }
    g.finish();
}

criterion_group!(benches, weyl_generation, relative_weyl, roundtrip);
criterion_main!(benches);
