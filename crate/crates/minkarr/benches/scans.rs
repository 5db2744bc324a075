//! Parallel vs sequential timings for the Monte Carlo scan engines.
//!
//! With the default `parallel` feature the `*_scan` entry points fan trials
//! out over rayon while the `*_seq` variants stay single-threaded; built with
//! `--no-default-features` the two coincide.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minkarr::generators::{RandomBody, RandomSpec};
use minkarr::scan::{
    certificate_soundness_scan, certificate_soundness_scan_seq, depth_ceiling_scan,
    depth_ceiling_scan_seq, greedy_cover_scan, greedy_cover_scan_seq, CoverScanSpec,
    DepthScanSpec, SoundnessScanSpec,
};

fn bench_depth_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("depth_ceiling_scan");
    for trials in [128, 512] {
        let spec = DepthScanSpec {
            family: RandomSpec {
                seed: 0xD5,
                n_red: 9,
                radius_range: (0.4, 1.2),
                box_side: 3.0,
                ..Default::default()
            },
            trials,
            random_probes: 8,
        };
        group.bench_with_input(BenchmarkId::new("parallel", trials), &spec, |b, s| {
            b.iter(|| black_box(depth_ceiling_scan(s)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", trials), &spec, |b, s| {
            b.iter(|| black_box(depth_ceiling_scan_seq(s)))
        });
    }
    group.finish();
}

fn bench_soundness_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("certificate_soundness_scan");
    for trials in [64, 256] {
        let spec = SoundnessScanSpec {
            instance: RandomSpec { seed: 0x50, n_red: 40, ..Default::default() },
            trials,
        };
        group.bench_with_input(BenchmarkId::new("parallel", trials), &spec, |b, s| {
            b.iter(|| black_box(certificate_soundness_scan(s)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", trials), &spec, |b, s| {
            b.iter(|| black_box(certificate_soundness_scan_seq(s)))
        });
    }
    group.finish();
}

fn bench_cover_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("greedy_cover_scan");
    for trials in [128, 512] {
        let spec = CoverScanSpec {
            family: RandomSpec {
                seed: 0xC0,
                n_red: 30,
                body: RandomBody::Linf,
                dim: 3,
                ..Default::default()
            },
            trials,
        };
        group.bench_with_input(BenchmarkId::new("parallel", trials), &spec, |b, s| {
            b.iter(|| black_box(greedy_cover_scan(s)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", trials), &spec, |b, s| {
            b.iter(|| black_box(greedy_cover_scan_seq(s)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_depth_scan, bench_soundness_scan, bench_cover_scan);
criterion_main!(benches);
