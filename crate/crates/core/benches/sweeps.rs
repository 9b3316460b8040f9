//! Parallel against sequential on the data-parallel sweeps.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};

use nutaut::constructions::triangle_multiplier;
use nutaut::enumeration::{count_graphs, enumerate_regular};
use nutaut::exec;
use nutaut::gadgets::search_proto;
use nutaut::graph::Graph;
use nutaut::kernel::nut_certificate;

fn both(c: &mut Criterion, name: &str, f: impl Fn() + Copy) {
    let mut g = c.benchmark_group(name);
    g.sample_size(10).measurement_time(Duration::from_secs(5));
    g.bench_function("parallel", |b| b.iter(f));
    g.bench_function("sequential", |b| b.iter(|| exec::sequential(f)));
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    both(c, "count_connected_8", || {
        black_box(count_graphs(8, true).unwrap());
    });
    both(c, "quartic_11", || {
        black_box(enumerate_regular(11, 4).unwrap());
    });
    both(c, "proto_search_d8", || {
        black_box(search_proto(8, 3, 1).unwrap());
    });
}

fn kernels(c: &mut Criterion) {
    let m = triangle_multiplier(&Graph::circulant(12, &[1, 2, 3])).unwrap().graph;
    let mut g = c.benchmark_group("nut_certificate");
    g.sample_size(10);
    g.bench_function("multiplier_of_circulant_12", |b| b.iter(|| black_box(nut_certificate(&m))));
    g.finish();
}

criterion_group!(benches, sweeps, kernels);
criterion_main!(benches);
