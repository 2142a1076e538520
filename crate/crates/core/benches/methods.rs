//! Sequential against parallel execution for each data-parallel kernel.
//! Build with `--no-default-features` to see the fallback: both arms then
//! run on one thread.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use distenum::codes::{CodeSpec, VtSpec};
use distenum::distances::DistanceKind;
use distenum::oracle::{brute_enumerator, BruteOptions};
use distenum::polynomial::Precision;
use distenum::spectral::{spectral_enumerator, SpectralOptions};
use distenum::vtfast::{build_btable, vt_fast_enumerator, FastOptions, Strategy};
use distenum::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn brute(c: &mut Criterion) {
    let mut g = c.benchmark_group("brute");
    g.sample_size(10);
    for n in [12usize, 14] {
        let code = CodeSpec::Vt(VtSpec::new(n, 0).unwrap());
        for (name, exec) in MODES {
            let opts = BruteOptions {
                exec,
                ..Default::default()
            };
            g.bench_with_input(BenchmarkId::new(name, n), &code, |b, code| {
                b.iter(|| brute_enumerator(black_box(code), DistanceKind::Hamming, opts).unwrap())
            });
        }
    }
    g.finish();
}

fn spectral(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectral");
    g.sample_size(10);
    let code = CodeSpec::Vt(VtSpec::new(15, 0).unwrap());
    for (name, exec) in MODES {
        let opts = SpectralOptions {
            exec,
            ..Default::default()
        };
        g.bench_function(BenchmarkId::new(name, 15), |b| {
            b.iter(|| spectral_enumerator(black_box(&code), opts).unwrap())
        });
    }
    g.finish();
}

fn btable(c: &mut Criterion) {
    let mut g = c.benchmark_group("btable");
    g.sample_size(10);
    let m = 48;
    for strategy in [Strategy::Optimized, Strategy::Naive] {
        for (name, exec) in MODES {
            let id = BenchmarkId::new(format!("{}/{name}", strategy.name()), m);
            g.bench_function(id, |b| {
                b.iter(|| {
                    build_btable(
                        black_box(m),
                        Precision::for_degree(m as usize),
                        strategy,
                        exec,
                    )
                    .unwrap()
                })
            });
        }
    }
    g.finish();
}

fn fast(c: &mut Criterion) {
    let mut g = c.benchmark_group("fast");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = FastOptions {
            exec,
            ..Default::default()
        };
        g.bench_function(BenchmarkId::new(name, 63), |b| {
            b.iter(|| vt_fast_enumerator(black_box(63), 0, opts).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, brute, spectral, btable, fast);
criterion_main!(benches);
