//! Seeded Monte Carlo scans: empirical depth ceilings over random strict
//! arrangements, certificate soundness over random hypothesis-satisfying
//! instances, and greedy-cover property sweeps.
//!
//! Each scan maps an independent closure over its trials (in parallel when
//! the `parallel` feature is enabled) and reduces the per-trial results in
//! trial order, so reports are deterministic for a fixed spec. The `_seq`
//! variants always run sequentially; the benches compare the two.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::greedy_cover;
use crate::density::{
    check_hypothesis, default_depth_bound, global_ratio, make_certificate, verify_certificate,
};
use crate::generators::{random_family, random_instance, random_strict_family, RandomSpec};
use crate::geometry::{NormBody, Point, TolerancePolicy};
use crate::parallel::map_indexed;

/// Maximum number of failure descriptions kept in a scan report.
const FAILURE_CAP: usize = 8;

fn trial_seed(base: u64, trial: usize) -> u64 {
    let mut z = base ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Depth-ceiling scan over seeded random strict arrangements.
#[derive(Clone, Debug)]
pub struct DepthScanSpec {
    /// Template for each trial's family; `seed` is the base seed.
    pub family: RandomSpec,
    pub trials: usize,
    /// Extra uniform probes per trial, beyond centers and pairwise points.
    pub random_probes: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DepthWitness {
    pub trial: usize,
    pub probe: Point,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DepthScanReport {
    pub trials: usize,
    pub probes_evaluated: u64,
    pub max_depth: usize,
    pub witness: Option<DepthWitness>,
}

/// Run the depth scan, parallel when available.
pub fn depth_ceiling_scan(spec: &DepthScanSpec) -> DepthScanReport {
    run_depth_scan(spec, true)
}

/// Sequential variant of [`depth_ceiling_scan`].
pub fn depth_ceiling_scan_seq(spec: &DepthScanSpec) -> DepthScanReport {
    run_depth_scan(spec, false)
}

fn run_depth_scan(spec: &DepthScanSpec, parallel: bool) -> DepthScanReport {
    let tol = TolerancePolicy::default();
    let per_trial = map_indexed(spec.trials, parallel, |t| {
        let family_spec = spec.family.clone().with_seed(trial_seed(spec.family.seed, t));
        let family = random_strict_family(&family_spec).expect("scan spec is valid");
        let probes = probe_points(&family, &family_spec, spec.random_probes, t);
        let mut best: Option<(usize, Point)> = None;
        for probe in &probes {
            let depth = family.depth(probe, &tol).depth;
            if best.as_ref().is_none_or(|(d, _)| depth > *d) {
                best = Some((depth, probe.clone()));
            }
        }
        (best, probes.len() as u64)
    });

    let mut report = DepthScanReport {
        trials: spec.trials,
        probes_evaluated: 0,
        max_depth: 0,
        witness: None,
    };
    for (t, (best, probe_count)) in per_trial.into_iter().enumerate() {
        report.probes_evaluated += probe_count;
        if let Some((depth, probe)) = best {
            if depth > report.max_depth || report.witness.is_none() {
                report.max_depth = depth;
                report.witness = Some(DepthWitness { trial: t, probe, depth });
            }
        }
    }
    report
}

/// Probes that can realize the maximum depth of an arrangement: all member
/// centers, a point inside every pairwise intersection, the boundary
/// crossings of overlapping pairs (circle intersections for the Euclidean
/// plane, intersection-box corners for `ℓ∞`), and uniform random probes.
fn probe_points(
    family: &crate::arrangement::Family,
    family_spec: &RandomSpec,
    random_probes: usize,
    trial: usize,
) -> Vec<Point> {
    let members = family.members();
    let body = family.body();
    let dim = body.dim();
    let mut probes: Vec<Point> = members.iter().map(|m| m.center.clone()).collect();

    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            let (a, b) = (&members[i], &members[j]);
            // Splits the center segment by the opposite ratios; lies in both
            // members exactly when they intersect.
            let denom = a.ratio + b.ratio;
            let coords = a
                .center
                .coords
                .iter()
                .zip(&b.center.coords)
                .map(|(x, y)| (b.ratio * x + a.ratio * y) / denom)
                .collect();
            probes.push(Point::new(coords));

            match body {
                NormBody::Euclidean { dim: 2 } => {
                    if let Some(pts) = circle_intersections(a, b) {
                        probes.push(Point::new(pts[0].to_vec()));
                        probes.push(Point::new(pts[1].to_vec()));
                    }
                }
                NormBody::Linf { .. } if dim <= 5 => {
                    box_intersection_corners(a, b, &mut probes);
                }
                _ => {}
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(family_spec.seed, trial) ^ 0x5EED_C0DE);
    let max_ratio = members.iter().fold(0.0f64, |m, h| m.max(h.ratio));
    for _ in 0..random_probes {
        let coords = (0..dim)
            .map(|_| rng.random_range(-max_ratio..=family_spec.box_side + max_ratio))
            .collect();
        probes.push(Point::new(coords));
    }
    probes
}

fn circle_intersections(
    a: &crate::geometry::Homothet,
    b: &crate::geometry::Homothet,
) -> Option<[[f64; 2]; 2]> {
    let (x1, y1, r1) = (a.center.coords[0], a.center.coords[1], a.ratio);
    let (x2, y2, r2) = (b.center.coords[0], b.center.coords[1], b.ratio);
    let (dx, dy) = (x2 - x1, y2 - y1);
    let d2 = dx * dx + dy * dy;
    let d = d2.sqrt();
    if d == 0.0 || d > r1 + r2 || d < (r1 - r2).abs() {
        return None;
    }
    let along = (d2 + r1 * r1 - r2 * r2) / (2.0 * d);
    let h = (r1 * r1 - along * along).max(0.0).sqrt();
    let (mx, my) = (x1 + along * dx / d, y1 + along * dy / d);
    let (ox, oy) = (-dy * h / d, dx * h / d);
    Some([[mx + ox, my + oy], [mx - ox, my - oy]])
}

fn box_intersection_corners(
    a: &crate::geometry::Homothet,
    b: &crate::geometry::Homothet,
    out: &mut Vec<Point>,
) {
    let dim = a.center.dim();
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for k in 0..dim {
        let l = (a.center.coords[k] - a.ratio).max(b.center.coords[k] - b.ratio);
        let h = (a.center.coords[k] + a.ratio).min(b.center.coords[k] + b.ratio);
        if l > h {
            return;
        }
        lo.push(l);
        hi.push(h);
    }
    for mask in 0..1usize << dim {
        let coords = (0..dim)
            .map(|k| if mask >> k & 1 == 1 { hi[k] } else { lo[k] })
            .collect();
        out.push(Point::new(coords));
    }
}

/// Certificate soundness scan over seeded random hypothesis-satisfying
/// instances.
#[derive(Clone, Debug)]
pub struct SoundnessScanSpec {
    /// Template for each trial's instance; `seed` is the base seed.
    pub instance: RandomSpec,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SoundnessScanReport {
    pub trials: usize,
    /// Smallest observed `global_ratio − lambda/depth_bound` over all trials.
    pub min_ratio_margin: f64,
    pub failure_count: usize,
    /// First few failure descriptions.
    pub failures: Vec<String>,
}

impl SoundnessScanReport {
    pub fn all_sound(&self) -> bool {
        self.failure_count == 0
    }
}

/// Run the soundness scan, parallel when available.
pub fn certificate_soundness_scan(spec: &SoundnessScanSpec) -> SoundnessScanReport {
    run_soundness_scan(spec, true)
}

/// Sequential variant of [`certificate_soundness_scan`].
pub fn certificate_soundness_scan_seq(spec: &SoundnessScanSpec) -> SoundnessScanReport {
    run_soundness_scan(spec, false)
}

fn run_soundness_scan(spec: &SoundnessScanSpec, parallel: bool) -> SoundnessScanReport {
    let tol = TolerancePolicy::default();
    let per_trial = map_indexed(spec.trials, parallel, |t| -> (f64, Option<String>) {
        let inst_spec = spec.instance.clone().with_seed(trial_seed(spec.instance.seed, t));
        let inst = random_instance(&inst_spec).expect("scan spec is valid");
        if !check_hypothesis(&inst, &tol).all_satisfied {
            return (f64::INFINITY, Some(format!("trial {t}: satisfier pass left the hypothesis unsatisfied")));
        }
        let bound = default_depth_bound(inst.body()).expect("desk-scale dimension");
        let cert = match make_certificate(&inst, bound, &tol) {
            Ok(c) => c,
            Err(e) => return (f64::INFINITY, Some(format!("trial {t}: certificate failed: {e}"))),
        };
        let margin = global_ratio(&inst) - inst.lambda() / bound as f64;
        if margin < -1e-12 {
            return (margin, Some(format!("trial {t}: global ratio below lambda/{bound} by {margin:e}")));
        }
        let check = verify_certificate(&inst, &cert, &tol);
        if !check.is_valid() {
            return (
                margin,
                Some(format!("trial {t}: verification failed: {}", check.failures.join("; "))),
            );
        }
        (margin, None)
    });

    let mut report = SoundnessScanReport {
        trials: spec.trials,
        min_ratio_margin: f64::INFINITY,
        failure_count: 0,
        failures: Vec::new(),
    };
    for (margin, failure) in per_trial {
        report.min_ratio_margin = report.min_ratio_margin.min(margin);
        if let Some(f) = failure {
            report.failure_count += 1;
            if report.failures.len() < FAILURE_CAP {
                report.failures.push(f);
            }
        }
    }
    report
}

/// Greedy-cover property sweep over seeded random families.
#[derive(Clone, Debug)]
pub struct CoverScanSpec {
    /// Template for each trial's family; `seed` is the base seed.
    pub family: RandomSpec,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverScanReport {
    pub trials: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
}

impl CoverScanReport {
    pub fn all_hold(&self) -> bool {
        self.failure_count == 0
    }
}

/// Run the cover property scan, parallel when available. Per trial, checks
/// coverage, strictness of the selection, the greedy ratio order, restriction
/// idempotence, and determinism.
pub fn greedy_cover_scan(spec: &CoverScanSpec) -> CoverScanReport {
    run_cover_scan(spec, true)
}

/// Sequential variant of [`greedy_cover_scan`].
pub fn greedy_cover_scan_seq(spec: &CoverScanSpec) -> CoverScanReport {
    run_cover_scan(spec, false)
}

fn run_cover_scan(spec: &CoverScanSpec, parallel: bool) -> CoverScanReport {
    let tol = TolerancePolicy::default();
    let per_trial = map_indexed(spec.trials, parallel, |t| -> Option<String> {
        let family_spec = spec.family.clone().with_seed(trial_seed(spec.family.seed, t));
        let family = random_family(&family_spec).expect("scan spec is valid");
        let result = greedy_cover(&family, &tol);

        for (j, &by) in result.covered_by.iter().enumerate() {
            if !result.selected.contains(&by) {
                return Some(format!("trial {t}: center {j} covered by unselected member {by}"));
            }
            if !family.member(by).contains(family.body(), &family.member(j).center, &tol) {
                return Some(format!("trial {t}: member {by} does not contain center {j}"));
            }
        }
        if result.covered_by.len() != family.len() {
            return Some(format!("trial {t}: covered_by misses centers"));
        }

        let sub = family.restrict(&result.selected);
        if !sub.strictness_violations(&tol).is_empty() {
            return Some(format!("trial {t}: selection has strictness violations"));
        }

        for w in result.selected.windows(2) {
            let (a, b) = (family.member(w[0]).ratio, family.member(w[1]).ratio);
            if a < b || (a == b && w[0] > w[1]) {
                return Some(format!("trial {t}: selection order violates ratio/index order"));
            }
        }

        let again = greedy_cover(&family, &tol);
        if again != result {
            return Some(format!("trial {t}: greedy cover is not deterministic"));
        }

        let restricted = greedy_cover(&sub, &tol);
        let mapped: Vec<usize> = restricted.selected.iter().map(|&k| result.selected[k]).collect();
        if mapped != result.selected {
            return Some(format!("trial {t}: restriction changes the selection"));
        }
        None
    });

    let mut report = CoverScanReport { trials: spec.trials, failure_count: 0, failures: Vec::new() };
    for failure in per_trial.into_iter().flatten() {
        report.failure_count += 1;
        if report.failures.len() < FAILURE_CAP {
            report.failures.push(failure);
        }
    }
    report
}
