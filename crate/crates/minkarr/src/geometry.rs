//! Points, norm bodies, gauge evaluation, and containment predicates.
//!
//! A [`NormBody`] is an origin-symmetric convex body acting as the unit ball
//! of a norm; its gauge `‖v‖ = min{t ≥ 0 : v ∈ tK}` is the norm itself.
//! Everything else in the crate is built on two containment predicates over
//! homothets `p + ρK`:
//!
//! * the *inflated* predicate (`gauge(q − p) ≤ ρ(1 + rel) + abs`), used for
//!   membership and depth counting, and
//! * the *deflated* predicate (`gauge(q − p) ≤ ρ(1 − rel) − abs`), used when
//!   a containment should only count if it holds with margin (strictness
//!   checks on arrangements).
//!
//! The gap between the two means no configuration can flip between "member"
//! and "violation" from rounding noise alone. Bodies are closed: boundary
//! points count as inside under the inflated predicate.

use thiserror::Error;

/// Errors from constructing or combining geometric values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("coordinates must be finite")]
    NonFiniteCoordinate,
    #[error("polygon needs an even vertex count of at least 4 (got {0})")]
    BadVertexCount(usize),
    #[error("polygon vertices must be strictly convex in counterclockwise order")]
    NotStrictlyConvex,
    #[error("polygon must be origin-symmetric: vertex {0} has no antipode")]
    NotOriginSymmetric(usize),
    #[error("polygon must contain the origin strictly in its interior")]
    OriginNotInterior,
    #[error("homothety ratio must be positive and finite (got {0})")]
    InvalidRatio(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tolerance components must be non-negative and finite")]
    InvalidTolerance,
}

/// A point in `ℝ^d`, `d ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point { coords }
    }

    pub fn origin(dim: usize) -> Self {
        Point { coords: vec![0.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_finite(&self) -> bool {
        !self.coords.is_empty() && self.coords.iter().all(|c| c.is_finite())
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point { coords }
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(coords: [f64; N]) -> Self {
        Point { coords: coords.to_vec() }
    }
}

/// A homothet `center + ratio · K` of a norm body `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct Homothet {
    pub center: Point,
    pub ratio: f64,
}

impl Homothet {
    pub fn new(center: impl Into<Point>, ratio: f64) -> Self {
        Homothet { center: center.into(), ratio }
    }

    /// Closed membership, inflated by the tolerance policy.
    pub fn contains(&self, body: &NormBody, q: &Point, tol: &TolerancePolicy) -> bool {
        body.gauge_between(q, &self.center) <= self.ratio * (1.0 + tol.rel_eps) + tol.abs_eps
    }

    /// Membership deflated by the tolerance policy: true only when `q` is
    /// inside with margin. Used for strictness checks so that a pair can
    /// never simultaneously register as "containing" here and as outside
    /// under [`Homothet::contains`].
    pub fn contains_deflated(&self, body: &NormBody, q: &Point, tol: &TolerancePolicy) -> bool {
        body.gauge_between(q, &self.center) <= self.ratio * (1.0 - tol.rel_eps) - tol.abs_eps
    }
}

/// Absolute and relative slack applied by the containment predicates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TolerancePolicy {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl TolerancePolicy {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self, GeometryError> {
        if !(abs_eps.is_finite() && rel_eps.is_finite() && abs_eps >= 0.0 && rel_eps >= 0.0) {
            return Err(GeometryError::InvalidTolerance);
        }
        Ok(TolerancePolicy { abs_eps, rel_eps })
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy { abs_eps: 1e-9, rel_eps: 1e-9 }
    }
}

/// An origin-symmetric convex body: the unit ball of a norm.
///
/// `Euclidean` and `Linf` are valid in any dimension; `Polygon` is a strictly
/// convex origin-symmetric polygon and is restricted to the plane.
#[derive(Clone, Debug, PartialEq)]
pub enum NormBody {
    Euclidean { dim: usize },
    Linf { dim: usize },
    Polygon(Polygon),
}

impl NormBody {
    pub fn euclidean(dim: usize) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        Ok(NormBody::Euclidean { dim })
    }

    pub fn linf(dim: usize) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        Ok(NormBody::Linf { dim })
    }

    pub fn polygon(vertices: Vec<[f64; 2]>) -> Result<Self, GeometryError> {
        Polygon::new(vertices).map(NormBody::Polygon)
    }

    pub fn dim(&self) -> usize {
        match self {
            NormBody::Euclidean { dim } | NormBody::Linf { dim } => *dim,
            NormBody::Polygon(_) => 2,
        }
    }

    /// The gauge (Minkowski functional) of this body: `min{t ≥ 0 : v ∈ tK}`.
    ///
    /// Panics if `v.len()` does not match the body dimension.
    pub fn gauge(&self, v: &[f64]) -> f64 {
        assert!(
            v.len() == self.dim(),
            "gauge: vector dimension {} does not match body dimension {}",
            v.len(),
            self.dim()
        );
        match self {
            NormBody::Euclidean { .. } => v.iter().map(|c| c * c).sum::<f64>().sqrt(),
            NormBody::Linf { .. } => v.iter().fold(0.0f64, |m, c| m.max(c.abs())),
            NormBody::Polygon(p) => p.gauge(v[0], v[1]),
        }
    }

    /// `gauge(a − b)` without materialising the difference vector.
    ///
    /// Panics if the dimensions of `a`, `b`, and the body disagree.
    pub fn gauge_between(&self, a: &Point, b: &Point) -> f64 {
        assert!(
            a.dim() == self.dim() && b.dim() == self.dim(),
            "gauge_between: point dimensions {}/{} do not match body dimension {}",
            a.dim(),
            b.dim(),
            self.dim()
        );
        let (a, b) = (&a.coords, &b.coords);
        match self {
            NormBody::Euclidean { .. } => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            NormBody::Linf { .. } => a
                .iter()
                .zip(b)
                .fold(0.0f64, |m, (x, y)| m.max((x - y).abs())),
            NormBody::Polygon(p) => p.gauge(a[0] - b[0], a[1] - b[1]),
        }
    }
}

/// A strictly convex, origin-symmetric polygon in the plane, stored with its
/// vertices rotated so that their polar angles ascend. Gauge queries locate
/// the boundary edge hit by the ray through the query vector by binary search
/// over those angles and then solve a single 2×2 system.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<[f64; 2]>,
    angles: Vec<f64>,
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

// atan2 distinguishes -0.0 from 0.0; normalise so angles sort consistently.
fn drop_signed_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

impl Polygon {
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self, GeometryError> {
        let m = vertices.len();
        if m < 4 || !m.is_multiple_of(2) {
            return Err(GeometryError::BadVertexCount(m));
        }
        if vertices.iter().any(|v| !v[0].is_finite() || !v[1].is_finite()) {
            return Err(GeometryError::NonFiniteCoordinate);
        }
        // Origin strictly inside every edge's half-plane, edges winding CCW
        // around the origin.
        for i in 0..m {
            if cross2(vertices[i], vertices[(i + 1) % m]) <= 0.0 {
                return Err(GeometryError::OriginNotInterior);
            }
        }
        // Strict convexity at every vertex.
        for i in 0..m {
            let a = vertices[i];
            let b = vertices[(i + 1) % m];
            let c = vertices[(i + 2) % m];
            let ab = [b[0] - a[0], b[1] - a[1]];
            let bc = [c[0] - b[0], c[1] - b[1]];
            if cross2(ab, bc) <= 0.0 {
                return Err(GeometryError::NotStrictlyConvex);
            }
        }
        // Origin symmetry: the antipode of vertex i sits m/2 steps away.
        let scale = vertices
            .iter()
            .fold(0.0f64, |s, v| s.max(v[0].abs()).max(v[1].abs()));
        let sym_tol = 1e-9 * scale.max(1.0);
        for i in 0..m {
            let v = vertices[i];
            let w = vertices[(i + m / 2) % m];
            if (v[0] + w[0]).abs() > sym_tol || (v[1] + w[1]).abs() > sym_tol {
                return Err(GeometryError::NotOriginSymmetric(i));
            }
        }
        // Rotate so polar angles ascend, making sector lookup a plain binary
        // search.
        let angle = |v: [f64; 2]| drop_signed_zero(v[1]).atan2(drop_signed_zero(v[0]));
        let start = (0..m)
            .min_by(|&i, &j| angle(vertices[i]).total_cmp(&angle(vertices[j])))
            .expect("polygon has vertices");
        let mut rotated = Vec::with_capacity(m);
        rotated.extend_from_slice(&vertices[start..]);
        rotated.extend_from_slice(&vertices[..start]);
        let angles: Vec<f64> = rotated.iter().map(|&v| angle(v)).collect();
        if angles.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GeometryError::NotStrictlyConvex);
        }
        Ok(Polygon { vertices: rotated, angles })
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    /// Gauge of `(x, y)`: find the boundary edge `[a, b]` crossed by the ray
    /// from the origin through the vector; the gauge is then
    /// `cross(v, b − a) / cross(a, b)`.
    pub fn gauge(&self, x: f64, y: f64) -> f64 {
        let x = drop_signed_zero(x);
        let y = drop_signed_zero(y);
        if x == 0.0 && y == 0.0 {
            return 0.0;
        }
        let theta = y.atan2(x);
        let m = self.vertices.len();
        let i = self.angles.partition_point(|&a| a <= theta);
        let (a, b) = if i == 0 || i == m {
            (self.vertices[m - 1], self.vertices[0])
        } else {
            (self.vertices[i - 1], self.vertices[i])
        };
        let v = [x, y];
        let edge = [b[0] - a[0], b[1] - a[1]];
        cross2(v, edge) / cross2(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> NormBody {
        NormBody::polygon(vec![[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap()
    }

    #[test]
    fn euclidean_gauge_pythagorean() {
        let body = NormBody::euclidean(2).unwrap();
        assert_eq!(body.gauge(&[3.0, 4.0]), 5.0);
    }

    #[test]
    fn linf_gauge_max_coordinate() {
        let body = NormBody::linf(2).unwrap();
        assert_eq!(body.gauge(&[3.0, -4.0]), 4.0);
    }

    #[test]
    fn square_polygon_gauge_matches_linf() {
        let sq = square();
        let linf = NormBody::linf(2).unwrap();
        assert!((sq.gauge(&[0.5, -0.25]) - 0.5).abs() < 1e-15);
        for &(x, y) in &[(1.0, 1.0), (-0.3, 0.7), (2.0, -0.1), (0.0, -3.0), (1e-4, 1e-4)] {
            let g = sq.gauge(&[x, y]);
            let l = linf.gauge(&[x, y]);
            assert!((g - l).abs() <= 1e-12 * l.max(1.0), "({x},{y}): {g} vs {l}");
        }
    }

    #[test]
    fn gauge_of_zero_vector_is_zero() {
        assert_eq!(NormBody::euclidean(3).unwrap().gauge(&[0.0; 3]), 0.0);
        assert_eq!(NormBody::linf(2).unwrap().gauge(&[0.0; 2]), 0.0);
        assert_eq!(square().gauge(&[0.0, -0.0]), 0.0);
    }

    #[test]
    fn contains_closed_boundary() {
        let body = NormBody::euclidean(2).unwrap();
        let disk = Homothet::new([0.0, 0.0], 1.0);
        let tol = TolerancePolicy::default();
        assert!(disk.contains(&body, &[1.0, 0.0].into(), &tol));
        assert!(!disk.contains(&body, &[1.1, 0.0].into(), &tol));
    }

    #[test]
    fn cube_at_corner_contains_origin() {
        let body = NormBody::linf(2).unwrap();
        let cube = Homothet::new([1.0, 1.0], 1.0);
        let tol = TolerancePolicy::default();
        assert!(cube.contains(&body, &Point::origin(2), &tol));
    }

    #[test]
    fn contains_center_at_zero_ratio_gap() {
        // gauge(0) = 0, so any homothet contains its own center.
        let body = NormBody::euclidean(4).unwrap();
        let h = Homothet::new(Point::new(vec![1.0, 2.0, 3.0, 4.0]), 1e-12);
        assert!(h.contains(&body, &h.center.clone(), &TolerancePolicy::default()));
    }

    #[test]
    fn deflated_predicate_is_stricter() {
        let body = NormBody::euclidean(2).unwrap();
        let disk = Homothet::new([0.0, 0.0], 1.0);
        let tol = TolerancePolicy::default();
        // A boundary point is inside under the inflated predicate but not the
        // deflated one.
        let q: Point = [1.0, 0.0].into();
        assert!(disk.contains(&body, &q, &tol));
        assert!(!disk.contains_deflated(&body, &q, &tol));
        // A clearly interior point passes both.
        let q: Point = [0.5, 0.0].into();
        assert!(disk.contains(&body, &q, &tol) && disk.contains_deflated(&body, &q, &tol));
    }

    #[test]
    #[should_panic(expected = "does not match body dimension")]
    fn gauge_dimension_mismatch_panics() {
        NormBody::euclidean(2).unwrap().gauge(&[1.0, 2.0, 3.0]);
    }

    #[test]
    fn polygon_rejects_bad_inputs() {
        // Odd vertex count.
        assert_eq!(
            NormBody::polygon(vec![[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]]),
            Err(GeometryError::BadVertexCount(3))
        );
        // Asymmetric quadrilateral.
        assert!(matches!(
            NormBody::polygon(vec![[2.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]),
            Err(GeometryError::NotOriginSymmetric(_))
        ));
        // Clockwise order puts the origin on the wrong side of every edge.
        assert_eq!(
            NormBody::polygon(vec![[1.0, -1.0], [-1.0, -1.0], [-1.0, 1.0], [1.0, 1.0]]),
            Err(GeometryError::OriginNotInterior)
        );
        // Collinear vertices are not strictly convex.
        assert_eq!(
            NormBody::polygon(vec![
                [1.0, -1.0],
                [1.0, 0.0],
                [1.0, 1.0],
                [-1.0, 1.0],
                [-1.0, 0.0],
                [-1.0, -1.0],
            ]),
            Err(GeometryError::NotStrictlyConvex)
        );
        // Zero-dimensional bodies.
        assert_eq!(NormBody::euclidean(0), Err(GeometryError::ZeroDimension));
        assert_eq!(NormBody::linf(0), Err(GeometryError::ZeroDimension));
    }

    #[test]
    fn polygon_gauge_on_vertex_direction_is_exact() {
        // A vertex lies on the unit boundary, so its gauge is exactly 1.
        let hexagon = NormBody::polygon(vec![
            [1.0, 0.0],
            [0.5, 1.0],
            [-0.5, 1.0],
            [-1.0, 0.0],
            [-0.5, -1.0],
            [0.5, -1.0],
        ])
        .unwrap();
        for v in [[1.0, 0.0], [0.5, 1.0], [-0.5, -1.0]] {
            assert_eq!(hexagon.gauge(&v), 1.0);
        }
    }

    #[test]
    fn tolerance_policy_validation() {
        assert!(TolerancePolicy::new(0.0, 0.0).is_ok());
        assert!(TolerancePolicy::new(-1e-9, 0.0).is_err());
        assert!(TolerancePolicy::new(0.0, f64::NAN).is_err());
    }
}
