use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semichain::deformation;
use semichain::homology;
use semichain::minimize::{self, Options};
use semichain::rational::{frac, int};
use semichain::semialg::{self, Scheme};
use semichain::{corpus, Chain, CubicalGrid, Exec};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn rasterize(c: &mut Criterion) {
    let f = semialg::annulus(int(1), int(3));
    let g = semialg::square_grid(frac(1, 8), int(4)).unwrap();
    let mut group = c.benchmark_group("rasterize_annulus");
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| semialg::rasterize(black_box(&f), &g, Scheme::Both, exec).unwrap()));
    }
    group.finish();
}

fn deform(c: &mut Criterion) {
    let fine = CubicalGrid::boxed(frac(1, 3), vec![0; 3], vec![6; 3]).unwrap();
    let coarse = CubicalGrid::boxed(int(1), vec![0; 3], vec![1; 3]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let batch: Vec<Chain> = (0..64).map(|i| deformation::random_cycle(&mut rng, &fine, 1 + i % 2, 4)).collect();
    let mut group = c.benchmark_group("deform_batch");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| deformation::deform_batch(black_box(&batch), &fine, &coarse, 0, exec).unwrap()));
    }
    group.finish();
}

fn homology_and_systole(c: &mut Criterion) {
    let cube = corpus::cubes(&corpus::unit_grid(vec![0; 3], vec![4; 3]), corpus::unit_grid(vec![0; 3], vec![4; 3]).top_anchors().into_iter().filter(|a| a != &vec![1, 1, 1] && a != &vec![2, 2, 2]));
    let torus = corpus::torus(4);
    let mut group = c.benchmark_group("homology_all");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| homology::homology_all(black_box(&cube), exec).unwrap()));
    }
    group.finish();
    let mut group = c.benchmark_group("systole_torus");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| minimize::systole(black_box(&torus), 1, 1, Options::default(), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, rasterize, deform, homology_and_systole);
criterion_main!(benches);
