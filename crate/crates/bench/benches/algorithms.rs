use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use outerplanar::bijection::psi;
use outerplanar::geodesic::{restricted_move_distances, trace};
use outerplanar::oracle::Graph;
use outerplanar::sampling::{sample_well_bicoloured, LazyCut, RngStream, WellBicolouredMethod};
use outerplanar::{ColouredPlaneTree, NodeId};

const SIZES: [usize; 3] = [1_000, 10_000, 100_000];

fn tree(n: usize) -> ColouredPlaneTree {
    sample_well_bicoloured(n, WellBicolouredMethod::Rejection, &mut RngStream::new(7, n as u64).rng()).unwrap()
}

/// The deepest vertex, which gives the longest trace.
fn deepest(t: &ColouredPlaneTree) -> NodeId {
    t.nodes().max_by_key(|&v| t.depth(v)).unwrap()
}

fn bench_psi(c: &mut Criterion) {
    let mut g = c.benchmark_group("psi");
    for n in SIZES {
        let t = tree(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| b.iter(|| psi(black_box(t)).unwrap()));
    }
    g.finish();
}

fn bench_distance(c: &mut Criterion) {
    let mut g = c.benchmark_group("distance");
    for n in SIZES {
        let t = tree(n);
        let x = deepest(&t);
        let graph = Graph::from_map(&psi(&t).unwrap());
        g.bench_with_input(BenchmarkId::new("trace", n), &t, |b, t| b.iter(|| trace(black_box(t), x).unwrap()));
        g.bench_with_input(BenchmarkId::new("bfs", n), &graph, |b, g| b.iter(|| g.bfs(black_box(0))));
        g.bench_with_input(BenchmarkId::new("moves", n), &t, |b, t| {
            b.iter(|| restricted_move_distances(black_box(t)).unwrap())
        });
    }
    g.finish();
}

fn bench_sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sampling");
    g.sample_size(20);
    for n in [1_000, 10_000] {
        for method in [WellBicolouredMethod::Rejection, WellBicolouredMethod::Exact] {
            g.bench_function(BenchmarkId::new(method.to_string(), n), |b| {
                let mut rng = RngStream::new(1, 0).rng();
                b.iter(|| sample_well_bicoloured(n, method, &mut rng).unwrap())
            });
        }
    }
    g.bench_function("lazy cut trace 2000", |b| {
        let mut stream = 0;
        b.iter(|| {
            stream += 1;
            LazyCut::sample(2000, RngStream::new(2, stream).rng(), None).unwrap().circ_trace().unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, bench_psi, bench_distance, bench_sampling);
criterion_main!(benches);
