use std::hint::black_box;

use cobweb_bench::{stems, table};
use cobweb_core::gamma::grid_points;
use cobweb_core::spaces::cantor::CantorTruncation;
use cobweb_core::tower::TowerSpace;
use cobweb_core::{gamma_distance, premetric_topology};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn gamma(c: &mut Criterion) {
    let carrier: Vec<u8> = (0..4).collect();
    let pts = grid_points(&carrier, 8);
    c.bench_function("gamma_distance/all_pairs_4x8", |b| {
        b.iter(|| {
            let mut acc = 0usize;
            for x in &pts {
                for y in &pts {
                    acc += gamma_distance(black_box(x), black_box(y)).denom() as usize;
                }
            }
            acc
        })
    });
}

fn omega(c: &mut Criterion) {
    let base = table(4, 1);
    let tower = TowerSpace::new(&base);
    let mut group = c.benchmark_group("omega_distance");
    for len in [1usize, 2, 3] {
        let sample = stems(&base, 32, len, 2);
        group.bench_with_input(BenchmarkId::from_parameter(len), &sample, |b, sample| {
            b.iter(|| sample.iter().zip(sample.iter().rev()).map(|(x, y)| tower.omega_distance(x, y)).max())
        });
    }
    group.finish();
}

fn topology(c: &mut Criterion) {
    let mut group = c.benchmark_group("premetric_topology");
    for n in [4usize, 8, 12] {
        let space = table(n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &space, |b, s| {
            b.iter(|| premetric_topology(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("cantor_census");
    group.sample_size(10);
    for k in [4u32, 6, 8] {
        let cantor = CantorTruncation::new(k).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &cantor, |b, c| {
            b.iter(|| c.to_finite().realized_values().len())
        });
    }
    group.finish();
}

criterion_group!(benches, gamma, omega, topology, census);
criterion_main!(benches);
