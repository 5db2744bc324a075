//! Minkowski-arrangement toolkit: norm-body gauges, strict arrangements and
//! point depth, greedy covering subfamilies, and local-to-global blue/red
//! density certificates, plus generators for the extremal and counterexample
//! configurations and seeded Monte Carlo scans over all of it.
//!
//! The `parallel` feature (on by default) runs per-member counting and the
//! scan trial loops on rayon; without it everything falls back to sequential
//! loops with identical results.

pub mod arrangement;
pub mod cover;
pub mod density;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod scan;
pub mod svg;

mod parallel;

pub use arrangement::{DepthReport, Family, MaxSubfamily, Violation};
pub use cover::{greedy_cover, CoverResult};
pub use density::{
    check_hypothesis, default_depth_bound, global_ratio, make_certificate, verify_certificate,
    Certificate, HypothesisReport, Instance,
};
pub use geometry::{Homothet, NormBody, Point, TolerancePolicy};
