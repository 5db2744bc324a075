//! Local hypothesis checking, global blue/red ratio, and density
//! certificates.
//!
//! An [`Instance`] pairs a family of red-centered homothets with a set of
//! blue points and a threshold `lambda`. The local hypothesis asks each
//! member to contain at least `lambda` times as many blue points as red
//! points. A [`Certificate`] packages a greedy covering subfamily together
//! with per-member counts realizing the inequality chain
//!
//! ```text
//! |R| ≤ Σ |R ∩ K| ≤ Σ |B ∩ K| / λ ≤ M·|B| / λ
//! ```
//!
//! over the selected members `K`, where `M` bounds how many selected members
//! any single point can lie in. The chain forces the global bound
//! `|B|/|R| ≥ λ/M`.

use thiserror::Error;

use crate::arrangement::Family;
use crate::cover::greedy_cover;
use crate::geometry::{GeometryError, Homothet, NormBody, Point, TolerancePolicy};
use crate::parallel::map_indexed;

/// Absolute slack for the comparison `blue_count ≥ lambda · red_count`,
/// absorbing representation error of thresholds like `lambda = 1/3`.
pub const HYPOTHESIS_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("instance needs at least one red point")]
    EmptyRed,
    #[error("lambda must be positive and finite (got {0})")]
    InvalidLambda(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertificateError {
    #[error("local hypothesis fails for members {failing:?}")]
    HypothesisNotSatisfied { failing: Vec<usize> },
    #[error("observed blue depth {observed} exceeds the configured bound {bound}")]
    DepthBoundExceeded { observed: usize, bound: usize },
}

/// A full problem input: red-centered homothets, blue points, and the local
/// blue/red threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    family: Family,
    blue: Vec<Point>,
    lambda: f64,
}

impl Instance {
    pub fn new(
        body: NormBody,
        red: Vec<Homothet>,
        blue: Vec<Point>,
        lambda: f64,
    ) -> Result<Self, InstanceError> {
        if red.is_empty() {
            return Err(InstanceError::EmptyRed);
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(InstanceError::InvalidLambda(lambda));
        }
        let dim = body.dim();
        for b in &blue {
            if b.dim() != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, got: b.dim() }.into());
            }
            if !b.is_finite() {
                return Err(GeometryError::NonFiniteCoordinate.into());
            }
        }
        let family = Family::new(body, red)?;
        Ok(Instance { family, blue, lambda })
    }

    /// The red points with their radii, as a family of homothets.
    pub fn red_family(&self) -> &Family {
        &self.family
    }

    pub fn red(&self) -> &[Homothet] {
        self.family.members()
    }

    pub fn blue(&self) -> &[Point] {
        &self.blue
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn body(&self) -> &NormBody {
        self.family.body()
    }
}

/// Per-member red/blue counts under the inflated containment predicate.
/// Counts are multiset counts: coincident points each count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MemberCounts {
    pub red_count: usize,
    pub blue_count: usize,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    pub per_member: Vec<MemberCounts>,
    pub all_satisfied: bool,
}

fn count_member(inst: &Instance, member: &Homothet, tol: &TolerancePolicy) -> MemberCounts {
    let body = inst.body();
    let red_count = inst
        .red()
        .iter()
        .filter(|r| member.contains(body, &r.center, tol))
        .count();
    let blue_count = inst
        .blue()
        .iter()
        .filter(|b| member.contains(body, b, tol))
        .count();
    let satisfied = blue_count as f64 >= inst.lambda * red_count as f64 - HYPOTHESIS_SLACK;
    MemberCounts { red_count, blue_count, satisfied }
}

/// Count, for every member, the red and blue points it contains, and test
/// the local condition `blue ≥ lambda · red`.
pub fn check_hypothesis(inst: &Instance, tol: &TolerancePolicy) -> HypothesisReport {
    let per_member = map_indexed(inst.red().len(), true, |i| {
        count_member(inst, &inst.red()[i], tol)
    });
    let all_satisfied = per_member.iter().all(|c| c.satisfied);
    HypothesisReport { per_member, all_satisfied }
}

/// `|B| / |R|`.
pub fn global_ratio(inst: &Instance) -> f64 {
    inst.blue().len() as f64 / inst.red().len() as f64
}

/// Default depth bound for a body: 5 for the Euclidean plane, `2^d` for the
/// `ℓ∞` cube, and the generic ceiling `3^d` otherwise. `None` if `3^d`
/// overflows.
pub fn default_depth_bound(body: &NormBody) -> Option<usize> {
    let d = body.dim() as u32;
    match body {
        NormBody::Euclidean { dim: 2 } => Some(5),
        NormBody::Linf { .. } => 2usize.checked_pow(d),
        _ => 3usize.checked_pow(d),
    }
}

/// The three chain values `Σ red`, `Σ blue / λ`, and `M·|B| / λ` over the
/// selected subfamily.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chain {
    pub red_sum: u64,
    pub blue_over_lambda: f64,
    pub depth_term: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// Greedy subfamily, in selection order.
    pub selected: Vec<usize>,
    /// `(red_count, blue_count)` for each selected member.
    pub per_selected: Vec<(usize, usize)>,
    pub depth_bound: usize,
    pub chain: Chain,
    /// Largest number of selected members containing any single blue point;
    /// recorded so tight instances exhibit the bound's sharpness.
    pub max_blue_depth: usize,
}

fn max_blue_depth(inst: &Instance, selected: &[usize], tol: &TolerancePolicy) -> usize {
    let body = inst.body();
    map_indexed(inst.blue().len(), true, |bi| {
        let b = &inst.blue()[bi];
        selected
            .iter()
            .filter(|&&i| inst.red()[i].contains(body, b, tol))
            .count()
    })
    .into_iter()
    .max()
    .unwrap_or(0)
}

/// Build a certificate: check the hypothesis, run the greedy cover, fill the
/// per-member counts, and verify empirically that no blue point lies in more
/// than `depth_bound` selected members. A deeper blue point signals either a
/// tolerance artifact or a misconfigured bound and is surfaced as an error,
/// never clamped.
pub fn make_certificate(
    inst: &Instance,
    depth_bound: usize,
    tol: &TolerancePolicy,
) -> Result<Certificate, CertificateError> {
    let report = check_hypothesis(inst, tol);
    if !report.all_satisfied {
        let failing = report
            .per_member
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.satisfied)
            .map(|(i, _)| i)
            .collect();
        return Err(CertificateError::HypothesisNotSatisfied { failing });
    }
    let cover = greedy_cover(inst.red_family(), tol);
    let per_selected: Vec<(usize, usize)> = cover
        .selected
        .iter()
        .map(|&i| {
            let c = report.per_member[i];
            (c.red_count, c.blue_count)
        })
        .collect();
    let observed = max_blue_depth(inst, &cover.selected, tol);
    if observed > depth_bound {
        return Err(CertificateError::DepthBoundExceeded { observed, bound: depth_bound });
    }
    let red_sum: u64 = per_selected.iter().map(|&(r, _)| r as u64).sum();
    let blue_sum: u64 = per_selected.iter().map(|&(_, b)| b as u64).sum();
    let chain = Chain {
        red_sum,
        blue_over_lambda: blue_sum as f64 / inst.lambda(),
        depth_term: depth_bound as f64 * inst.blue().len() as f64 / inst.lambda(),
    };
    debug_assert!(red_sum >= inst.red().len() as u64);
    debug_assert!(red_sum as f64 <= chain.blue_over_lambda * (1.0 + 1e-9) + 1e-9);
    debug_assert!(chain.blue_over_lambda <= chain.depth_term * (1.0 + 1e-9) + 1e-9);
    Ok(Certificate {
        selected: cover.selected,
        per_selected,
        depth_bound,
        chain,
        max_blue_depth: observed,
    })
}

/// Outcome of [`verify_certificate`]: valid iff no failure was recorded.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CertificateCheck {
    pub failures: Vec<String>,
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

// Slack for comparing recomputed floating-point chain values.
const CHAIN_SLACK: f64 = 1e-9;

/// Re-derive everything a certificate claims, from scratch: index sanity,
/// subfamily strictness, coverage of the red points, the per-member
/// hypothesis, the stored counts, the chain inequalities, and the final
/// global bound `|B|/|R| ≥ λ/M`.
pub fn verify_certificate(
    inst: &Instance,
    cert: &Certificate,
    tol: &TolerancePolicy,
) -> CertificateCheck {
    let mut check = CertificateCheck::default();
    let n = inst.red().len();

    if cert.selected.is_empty() {
        check.failures.push("certificate selects no members".into());
        return check;
    }
    let mut seen = vec![false; n];
    for &i in &cert.selected {
        if i >= n {
            check.failures.push(format!("selected index {i} out of range"));
            return check;
        }
        if seen[i] {
            check.failures.push(format!("selected index {i} repeated"));
            return check;
        }
        seen[i] = true;
    }
    if cert.per_selected.len() != cert.selected.len() {
        check
            .failures
            .push("per-member count table does not match selection length".into());
        return check;
    }
    if cert.depth_bound == 0 {
        check.failures.push("depth bound must be positive".into());
        return check;
    }

    let sub = inst.red_family().restrict(&cert.selected);
    if !sub.strictness_violations(tol).is_empty() {
        check
            .failures
            .push("selected subfamily is not a strict Minkowski arrangement".into());
    }

    let body = inst.body();
    for (j, r) in inst.red().iter().enumerate() {
        let covered = cert
            .selected
            .iter()
            .any(|&i| inst.red()[i].contains(body, &r.center, tol));
        if !covered {
            check.failures.push(format!("red point {j} is not covered by the selection"));
            break;
        }
    }

    let report = check_hypothesis(inst, tol);
    if !report.all_satisfied {
        check.failures.push("local hypothesis does not hold for every member".into());
    }

    let mut red_sum: u64 = 0;
    let mut blue_sum: u64 = 0;
    for (k, &i) in cert.selected.iter().enumerate() {
        let counts = report.per_member[i];
        red_sum += counts.red_count as u64;
        blue_sum += counts.blue_count as u64;
        if cert.per_selected[k] != (counts.red_count, counts.blue_count) {
            check
                .failures
                .push(format!("stored counts for selected member {i} disagree with a recount"));
        }
    }

    let blue_over_lambda = blue_sum as f64 / inst.lambda();
    let depth_term = cert.depth_bound as f64 * inst.blue().len() as f64 / inst.lambda();
    if cert.chain.red_sum != red_sum
        || (cert.chain.blue_over_lambda - blue_over_lambda).abs()
            > CHAIN_SLACK * blue_over_lambda.max(1.0)
        || (cert.chain.depth_term - depth_term).abs() > CHAIN_SLACK * depth_term.max(1.0)
    {
        check.failures.push("stored chain values disagree with a recount".into());
    }
    if (red_sum as f64) < n as f64
        || red_sum as f64 > blue_over_lambda + CHAIN_SLACK * blue_over_lambda.max(1.0)
        || blue_over_lambda > depth_term + CHAIN_SLACK * depth_term.max(1.0)
    {
        check.failures.push("chain is not non-decreasing from |R|".into());
    }

    let observed = max_blue_depth(inst, &cert.selected, tol);
    if observed != cert.max_blue_depth {
        check
            .failures
            .push(format!("stored max blue depth {} disagrees with recount {observed}", cert.max_blue_depth));
    }
    if observed > cert.depth_bound {
        check
            .failures
            .push(format!("blue depth {observed} exceeds depth bound {}", cert.depth_bound));
    }

    let bound = inst.lambda() / cert.depth_bound as f64;
    if global_ratio(inst) < bound - 1e-12 {
        check
            .failures
            .push(format!("global ratio {} is below the bound {bound}", global_ratio(inst)));
    }
    check
}
