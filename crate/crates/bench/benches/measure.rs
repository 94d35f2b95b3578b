use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pml_bench::{chain, skewed};
use pml_core::sequence::{measure_oracle, OracleBatch, OracleConfig};
use pml_core::{measure, surface_grid, uniform_weights, Formula};

const ATOMS: [&str; 3] = ["A", "B", "C"];

fn compositional_vs_oracle(c: &mut Criterion) {
    let w = skewed(&ATOMS);
    let mut group = c.benchmark_group("measure");
    for occ in [2, 4, 6] {
        let phi = chain(&ATOMS, occ);
        group.bench_with_input(BenchmarkId::new("compositional", occ), &phi, |b, phi| {
            b.iter(|| measure(black_box(phi), &w).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("oracle", occ), &phi, |b, phi| {
            b.iter(|| measure_oracle(black_box(phi), &w).unwrap())
        });
    }
    group.finish();
}

fn oracle_batch(c: &mut Criterion) {
    let dists = vec![skewed(&ATOMS), uniform_weights(skewed(&ATOMS).collection())];
    let batch = OracleBatch::new(&dists).unwrap();
    let phi = chain(&ATOMS, 5);
    let config = OracleConfig { list_limit: 0, ..Default::default() };
    c.bench_function("oracle_batch/2x5", |b| b.iter(|| batch.run(black_box(&phi), &config).unwrap()));
}

fn parse(c: &mut Criterion) {
    let text = chain(&ATOMS, 40).to_string();
    c.bench_function("parse/40_leaves", |b| b.iter(|| black_box(&text).parse::<Formula>().unwrap()));
}

fn surface(c: &mut Criterion) {
    c.bench_function("surface_grid/101", |b| b.iter(|| surface_grid(black_box(101)).unwrap()));
}

criterion_group!(benches, compositional_vs_oracle, oracle_batch, parse, surface);
criterion_main!(benches);
