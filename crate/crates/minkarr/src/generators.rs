//! Instance generators: tight configurations, the no-centering
//! counterexample family, and seeded random instances and families.
//!
//! Tight generators inflate their ratios by [`TIGHT_RATIO_INFLATION`] so that
//! points lying exactly on member boundaries register robustly under the
//! inflated containment predicate, while the arrangements' pairwise margins
//! (≈0.1756 for the pentagon, 1.0 for the cubes) dwarf the inflation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arrangement::Family;
use crate::density::{Instance, HYPOTHESIS_SLACK};
use crate::geometry::{Homothet, NormBody, Point};

/// Relative ratio inflation applied by the tight generators.
pub const TIGHT_RATIO_INFLATION: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("dimension {0} is out of range (1..=10)")]
    DimensionOutOfRange(usize),
    #[error("body must be the Euclidean disk or a polygon in the plane")]
    UnsupportedBody,
    #[error("{blue} blue points need more than {needed} red points for epsilon {eps}")]
    TooFewRedPoints { blue: usize, eps: f64, needed: usize },
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
}

/// Five unit disks at the vertices of a circumradius-1 regular pentagon, one
/// blue point at the center, `lambda = 1`. Satisfies the local hypothesis and
/// achieves the extremal global ratio `1/5`.
pub fn pentagon_tight() -> Instance {
    let body = NormBody::euclidean(2).expect("dimension 2 is valid");
    let ratio = 1.0 + TIGHT_RATIO_INFLATION;
    let red = (0..5)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
            Homothet::new([a.cos(), a.sin()], ratio)
        })
        .collect();
    Instance::new(body, red, vec![Point::origin(2)], 1.0).expect("pentagon instance is valid")
}

/// `2^d` unit cubes centered at the sign vectors `(±1, …, ±1)`, one blue
/// point at the origin, `lambda = 1`. Achieves the extremal global ratio
/// `1/2^d` for the `ℓ∞` body.
pub fn hypercube_tight(d: usize) -> Result<Instance, GeneratorError> {
    if !(1..=10).contains(&d) {
        return Err(GeneratorError::DimensionOutOfRange(d));
    }
    let body = NormBody::linf(d).expect("dimension is valid");
    let ratio = 1.0 + TIGHT_RATIO_INFLATION;
    let red = (0..1usize << d)
        .map(|mask| {
            let coords = (0..d)
                .map(|j| if mask >> j & 1 == 1 { 1.0 } else { -1.0 })
                .collect();
            Homothet::new(Point::new(coords), ratio)
        })
        .collect();
    Ok(Instance::new(body, red, vec![Point::origin(d)], 1.0).expect("cube instance is valid"))
}

/// Output of [`counterexample`]: the instance, plus for each red point the
/// witness translate (a ratio-1 homothet, *not* centered at the red point)
/// that contains it together with every blue point.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub instance: Instance,
    pub witnesses: Vec<Homothet>,
    /// Endpoints of the segment carrying the blue points (interior chord).
    pub blue_segment: (Point, Point),
    /// Endpoints of the segment carrying the red points (tangency locus).
    pub red_segment: (Point, Point),
}

/// The frame of the construction: a boundary point where some tangent line
/// touches the body exactly once, the unit tangent direction there, and the
/// radius of the central chord in that direction.
fn tangency_frame(body: &NormBody) -> Result<([f64; 2], [f64; 2], f64), GeneratorError> {
    match body {
        NormBody::Euclidean { dim: 2 } => Ok(([0.0, 1.0], [1.0, 0.0], 1.0)),
        NormBody::Polygon(p) => {
            // Vertices are the uniquely-tangent boundary points of a strictly
            // convex polygon; take the topmost one and the bisector of its
            // adjacent edge normals as the tangent normal.
            let verts = p.vertices();
            let m = verts.len();
            let vi = (0..m)
                .max_by(|&i, &j| {
                    (verts[i][1], verts[i][0])
                        .partial_cmp(&(verts[j][1], verts[j][0]))
                        .expect("vertex coordinates are finite")
                })
                .expect("polygon has vertices");
            let v = verts[vi];
            let prev = verts[(vi + m - 1) % m];
            let next = verts[(vi + 1) % m];
            let n1 = unit_outward_normal(prev, v);
            let n2 = unit_outward_normal(v, next);
            let n = normalize([n1[0] + n2[0], n1[1] + n2[1]]);
            let tangent = [n[1], -n[0]];
            let chord_radius = 1.0 / body.gauge(&tangent);
            Ok((v, tangent, chord_radius))
        }
        _ => Err(GeneratorError::UnsupportedBody),
    }
}

fn unit_outward_normal(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    normalize([b[1] - a[1], a[0] - b[0]])
}

fn normalize(v: [f64; 2]) -> [f64; 2] {
    let len = (v[0] * v[0] + v[1] * v[1]).sqrt();
    [v[0] / len, v[1] / len]
}

/// Build the construction showing that without red-centered members no
/// local-to-global bound exists: `n_red` red points on the tangency locus of
/// translates sliding along a tangent direction, `ceil(lambda)` blue points
/// on an interior chord contained in every translate. Each witness translate
/// contains exactly one red point and all the blue points, yet the global
/// blue/red ratio is below `eps`.
pub fn counterexample(
    body: &NormBody,
    lambda: f64,
    eps: f64,
    n_red: usize,
) -> Result<Counterexample, GeneratorError> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(GeneratorError::InvalidParameter(format!("lambda must be positive (got {lambda})")));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(GeneratorError::InvalidParameter(format!("eps must be positive (got {eps})")));
    }
    if n_red == 0 {
        return Err(GeneratorError::InvalidParameter("n_red must be at least 1".into()));
    }
    let n_blue = (lambda.ceil() as usize).max(1);
    if n_blue as f64 >= eps * n_red as f64 {
        return Err(GeneratorError::TooFewRedPoints {
            blue: n_blue,
            eps,
            needed: (n_blue as f64 / eps).ceil() as usize,
        });
    }

    let (tangency, tangent, chord_radius) = tangency_frame(body)?;
    let half = chord_radius / 2.0;
    let at = |base: [f64; 2], s: f64| -> Point {
        Point::new(vec![base[0] + s * tangent[0], base[1] + s * tangent[1]])
    };

    // Red points in the interior of the tangency locus; witness translates
    // carry the body's tangency point onto "their" red point.
    let mut red = Vec::with_capacity(n_red);
    let mut witnesses = Vec::with_capacity(n_red);
    for i in 0..n_red {
        let s = -half + (i + 1) as f64 * chord_radius / (n_red + 1) as f64;
        red.push(Homothet::new(at(tangency, s), 1.0));
        witnesses.push(Homothet::new(at([0.0, 0.0], s), 1.0));
    }
    // Blue points spread over the chord, endpoints included: every translate
    // that contains the chord contains them all.
    let blue: Vec<Point> = if n_blue == 1 {
        vec![at([0.0, 0.0], 0.0)]
    } else {
        (0..n_blue)
            .map(|j| at([0.0, 0.0], -half + j as f64 * chord_radius / (n_blue - 1) as f64))
            .collect()
    };

    let instance =
        Instance::new(body.clone(), red, blue, lambda).expect("counterexample instance is valid");
    Ok(Counterexample {
        instance,
        witnesses,
        blue_segment: (at([0.0, 0.0], -half), at([0.0, 0.0], half)),
        red_segment: (at(tangency, -half), at(tangency, half)),
    })
}

/// Which norm body a random generator should use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomBody {
    Euclidean,
    Linf,
}

/// Parameters for the seeded random generators.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomSpec {
    pub seed: u64,
    pub n_red: usize,
    pub dim: usize,
    pub body: RandomBody,
    /// Uniform range for homothety ratios.
    pub radius_range: (f64, f64),
    /// Centers are drawn uniformly from `[0, box_side]^dim`.
    pub box_side: f64,
    pub lambda: f64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            seed: 0,
            n_red: 10,
            dim: 2,
            body: RandomBody::Euclidean,
            radius_range: (0.25, 1.0),
            box_side: 4.0,
            lambda: 1.0,
        }
    }
}

impl RandomSpec {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<(), GeneratorError> {
        if self.n_red == 0 {
            return Err(GeneratorError::InvalidParameter("n_red must be at least 1".into()));
        }
        if self.dim == 0 {
            return Err(GeneratorError::InvalidParameter("dim must be at least 1".into()));
        }
        let (lo, hi) = self.radius_range;
        if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo <= hi) {
            return Err(GeneratorError::InvalidParameter(format!(
                "radius range ({lo}, {hi}) must satisfy 0 < lo <= hi"
            )));
        }
        if !(self.box_side.is_finite() && self.box_side > 0.0) {
            return Err(GeneratorError::InvalidParameter(format!(
                "box_side must be positive (got {})",
                self.box_side
            )));
        }
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(GeneratorError::InvalidParameter(format!(
                "lambda must be positive (got {})",
                self.lambda
            )));
        }
        Ok(())
    }

    fn make_body(&self) -> NormBody {
        match self.body {
            RandomBody::Euclidean => NormBody::euclidean(self.dim),
            RandomBody::Linf => NormBody::linf(self.dim),
        }
        .expect("dimension validated")
    }

    fn sample_member(&self, rng: &mut ChaCha8Rng) -> Homothet {
        let coords = (0..self.dim).map(|_| rng.random_range(0.0..=self.box_side)).collect();
        let (lo, hi) = self.radius_range;
        let ratio = if lo == hi { lo } else { rng.random_range(lo..=hi) };
        Homothet::new(Point::new(coords), ratio)
    }
}

/// A seeded random family with no structural constraints.
pub fn random_family(spec: &RandomSpec) -> Result<Family, GeneratorError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let members = (0..spec.n_red).map(|_| spec.sample_member(&mut rng)).collect();
    Ok(Family::new(spec.make_body(), members).expect("sampled members are valid"))
}

/// A seeded random strict Minkowski arrangement, built by rejection: a
/// candidate member is discarded if it contains an accepted center or an
/// accepted member contains its center. If a slot cannot be filled the
/// family is returned with fewer members; it is strict either way.
pub fn random_strict_family(spec: &RandomSpec) -> Result<Family, GeneratorError> {
    spec.validate()?;
    const ATTEMPTS_PER_SLOT: usize = 1000;
    let body = spec.make_body();
    let tol = crate::geometry::TolerancePolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut members: Vec<Homothet> = Vec::with_capacity(spec.n_red);
    'slots: for _ in 0..spec.n_red {
        for _ in 0..ATTEMPTS_PER_SLOT {
            let candidate = spec.sample_member(&mut rng);
            let clashes = members.iter().any(|m| {
                m.contains_deflated(&body, &candidate.center, &tol)
                    || candidate.contains_deflated(&body, &m.center, &tol)
            });
            if !clashes {
                members.push(candidate);
                continue 'slots;
            }
        }
        break;
    }
    Ok(Family::new(body, members).expect("sampled members are valid"))
}

/// A seeded random instance that satisfies the local hypothesis by
/// construction: red members are sampled like [`random_family`], then a
/// satisfier pass adds blue points at deficient members' centers until every
/// member sees `blue ≥ lambda · red`. Adding blue points never hurts another
/// member, so the pass reaches a fixed point.
pub fn random_instance(spec: &RandomSpec) -> Result<Instance, GeneratorError> {
    let family = random_family(spec)?;
    let body = family.body().clone();
    let tol = crate::geometry::TolerancePolicy::default();
    let red_counts: Vec<usize> = family
        .members()
        .iter()
        .map(|m| {
            family
                .members()
                .iter()
                .filter(|r| m.contains(&body, &r.center, &tol))
                .count()
        })
        .collect();

    let mut blue: Vec<Point> = Vec::new();
    loop {
        let mut changed = false;
        for (i, member) in family.members().iter().enumerate() {
            let blue_count = blue.iter().filter(|b| member.contains(&body, b, &tol)).count();
            let deficit = spec.lambda * red_counts[i] as f64 - blue_count as f64;
            if deficit > HYPOTHESIS_SLACK {
                let add = (deficit.ceil() as usize).max(1);
                for _ in 0..add {
                    blue.push(member.center.clone());
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Instance::new(body, family.members().to_vec(), blue, spec.lambda)
        .expect("satisfier instance is valid"))
}
