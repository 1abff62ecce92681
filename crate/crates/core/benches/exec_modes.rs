use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vanishing::lattice::LatticePolygon;
use vanishing::samples::random_smooth_polygon;
use vanishing::spin::QuadraticFormZ2;
use vanishing::symp::gf2;
use vanishing::verify::verify_batch;
use vanishing::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn sp_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("sp_closure");
    group.sample_size(10).measurement_time(Duration::from_secs(20));
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "Sp(6,2)"), &exec, |b, &e| {
            b.iter(|| black_box(gf2::sp_group(3, e).unwrap().len()))
        });
    }
    group.finish();
}

fn stabilizer(c: &mut Criterion) {
    let mut group = c.benchmark_group("stabilizer_g2");
    let q = QuadraticFormZ2::new(vec![1, 1, 0, 0]);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "odd"), &exec, |b, &e| {
            b.iter(|| black_box(gf2::sp_q_stabilizer_bruteforce(2, &q, e).unwrap()))
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let polys: Vec<LatticePolygon> = (0..32).map(|_| random_smooth_polygon(&mut rng)).collect();
    let mut group = c.benchmark_group("verify_batch");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, polys.len()), &exec, |b, &e| {
            b.iter(|| black_box(verify_batch(&polys, e).len()))
        });
    }
    group.finish();
}

criterion_group!(benches, sp_closure, stabilizer, batch);
criterion_main!(benches);
