//! Parallel against sequential execution on the two hot loops: exhaustive
//! subset scans (characteristic polynomial, circuit enumeration) and
//! stability sampling. With one core both paths should time the same apart
//! from scheduling overhead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dirichlet_core::dirichlet::dirichlet_matroid;
use dirichlet_core::electrical::stability_sample;
use dirichlet_core::network::generate::{hexwheel, sunflower};
use dirichlet_core::poly::basis_gen_poly;
use dirichlet_core::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn subset_scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("subset_scan");
    group.sample_size(10);
    let n = sunflower(4).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("char_poly", name), &exec, |b, &exec| {
            // A fresh matroid each time so the rank table is rebuilt too.
            b.iter(|| dirichlet_matroid(&n).with_exec(exec).char_poly().unwrap())
        });
        group.bench_with_input(BenchmarkId::new("circuits", name), &exec, |b, &exec| {
            b.iter(|| dirichlet_matroid(&n).with_exec(exec).circuits().unwrap())
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("stability_sample");
    group.sample_size(10);
    let f = basis_gen_poly(&hexwheel(5).unwrap());
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("hexwheel5", name), &exec, |b, &exec| {
            b.iter(|| stability_sample(&f, 20, 1, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, subset_scans, sampling);
criterion_main!(benches);
