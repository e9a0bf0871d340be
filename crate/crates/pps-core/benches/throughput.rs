//! Parallel vs serial throughput of the three hot paths: periodicity
//! scans, the reference DFT, and sliding-window profiles.
//!
//! With the default `parallel` feature the plain entry points run on the
//! rayon pool; the `*_serial` variants are the single-threaded baseline.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use pps_core::analysis::{
    dna_walk, dna_walk_serial, scan, scan_serial, sliding_window, sliding_window_serial,
    synth_repeat, Edit,
};
use pps_core::sequence::{voss_map, AmbiguityPolicy, DnaSequence, IndicatorSet};
use pps_core::transform::{dft_power_dna, dft_power_dna_serial};

/// Deterministic pseudo-random sequence of length n (ACGT composition,
/// shuffled fixture, no repeat structure left).
fn test_sequence(n: usize) -> IndicatorSet {
    let motif = DnaSequence::new("bench", "ACGT", AmbiguityPolicy::Strict).unwrap();
    let copies = n.div_ceil(4);
    let seq = synth_repeat(
        &motif,
        copies,
        &[Edit::ShuffleRange {
            start: 0,
            end: copies * 4,
        }],
        0xBE7C,
    )
    .unwrap();
    let trimmed = DnaSequence::new(
        "bench",
        std::str::from_utf8(&seq.residues()[..n]).unwrap(),
        AmbiguityPolicy::Strict,
    )
    .unwrap();
    voss_map(&trimmed, AmbiguityPolicy::Strict).unwrap()
}

fn label(kind: &str, n: usize) -> BenchmarkId {
    BenchmarkId::new(kind, n)
}

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_p2_100");
    for n in [2_000usize, 8_000, 32_000] {
        let ind = test_sequence(n);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(label("parallel", n), &ind, |b, ind| {
            b.iter(|| scan(black_box(ind), 2, 100).unwrap());
        });
        group.bench_with_input(label("serial", n), &ind, |b, ind| {
            b.iter(|| scan_serial(black_box(ind), 2, 100).unwrap());
        });
    }
    group.finish();
}

fn bench_dft(c: &mut Criterion) {
    let mut group = c.benchmark_group("dft_power_dna");
    group.sample_size(20);
    for n in [1_000usize, 4_000] {
        let ind = test_sequence(n);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(label("parallel", n), &ind, |b, ind| {
            b.iter(|| dft_power_dna(black_box(ind)));
        });
        group.bench_with_input(label("serial", n), &ind, |b, ind| {
            b.iter(|| dft_power_dna_serial(black_box(ind)));
        });
    }
    group.finish();
}

fn bench_window(c: &mut Criterion) {
    let mut group = c.benchmark_group("window_p11_w60");
    let n = 5_000;
    let ind = test_sequence(n);
    group.throughput(Throughput::Elements(n as u64));
    group.bench_with_input(label("parallel", n), &ind, |b, ind| {
        b.iter(|| sliding_window(black_box(ind), 11, 60, 1).unwrap());
    });
    group.bench_with_input(label("serial", n), &ind, |b, ind| {
        b.iter(|| sliding_window_serial(black_box(ind), 11, 60, 1).unwrap());
    });
    group.finish();
}

fn bench_walk(c: &mut Criterion) {
    let mut group = c.benchmark_group("walk_p5");
    let n = 5_000;
    let ind = test_sequence(n);
    group.throughput(Throughput::Elements(n as u64));
    group.bench_with_input(label("parallel", n), &ind, |b, ind| {
        b.iter(|| dna_walk(black_box(ind), 5, 1).unwrap());
    });
    group.bench_with_input(label("serial", n), &ind, |b, ind| {
        b.iter(|| dna_walk_serial(black_box(ind), 5, 1).unwrap());
    });
    group.finish();
}

criterion_group!(benches, bench_scan, bench_dft, bench_window, bench_walk);
criterion_main!(benches);
