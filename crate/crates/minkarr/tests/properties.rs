//! Property-based invariants: gauge axioms, containment monotonicity,
//! strictness symmetry, greedy-cover guarantees, oracle self-consistency,
//! chain monotonicity, and instance JSON round-trips.

use proptest::prelude::*;

use minkarr::arrangement::Family;
use minkarr::cover::greedy_cover;
use minkarr::density::{check_hypothesis, default_depth_bound, make_certificate, verify_certificate};
use minkarr::generators::{random_instance, random_strict_family, RandomBody, RandomSpec};
use minkarr::geometry::{Homothet, NormBody, Point, TolerancePolicy};
use minkarr::io::{read_instance, write_instance};

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn coord() -> impl Strategy<Value = f64> {
    -100.0..100.0f64
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(coord(), dim)
}

/// Invertible affine images of regular 2m-gons: strictly convex,
/// origin-symmetric, counterclockwise.
fn polygon_body() -> impl Strategy<Value = NormBody> {
    (2usize..=9, 0.0..std::f64::consts::PI, 0.2..5.0f64, -1.5..1.5f64, 0.3..3.0f64).prop_map(
        |(half, rot, scale, shear, aspect)| {
            let m = 2 * half;
            let vertices: Vec<[f64; 2]> = (0..m)
                .map(|k| {
                    let a = rot + 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                    let (x, y) = (scale * a.cos(), scale * aspect * a.sin());
                    [x + shear * y, y]
                })
                .collect();
            NormBody::polygon(vertices).expect("affine image of a regular polygon is valid")
        },
    )
}

fn any_body() -> impl Strategy<Value = NormBody> {
    prop_oneof![
        (1usize..=5).prop_map(|d| NormBody::euclidean(d).unwrap()),
        (1usize..=5).prop_map(|d| NormBody::linf(d).unwrap()),
        polygon_body(),
    ]
}

fn body_and_vec() -> impl Strategy<Value = (NormBody, Vec<f64>)> {
    any_body().prop_flat_map(|body| {
        let d = body.dim();
        (Just(body), vector(d))
    })
}

proptest! {
    #[test]
    fn gauge_is_homogeneous((body, v) in body_and_vec(), s in 1e-3..1e3f64) {
        let scaled: Vec<f64> = v.iter().map(|c| s * c).collect();
        let lhs = body.gauge(&scaled);
        let rhs = s * body.gauge(&v);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs), "{lhs} vs {rhs}");
    }

    #[test]
    fn gauge_is_symmetric_exactly_for_euclid_and_linf(dim in 1usize..=5, v in prop::collection::vec(coord(), 1..=5)) {
        let dim = dim.min(v.len());
        let v = &v[..dim];
        let neg: Vec<f64> = v.iter().map(|c| -c).collect();
        for body in [NormBody::euclidean(dim).unwrap(), NormBody::linf(dim).unwrap()] {
            prop_assert_eq!(body.gauge(v), body.gauge(&neg));
        }
    }

    #[test]
    fn polygon_gauge_is_symmetric(body in polygon_body(), v in vector(2)) {
        let neg: Vec<f64> = v.iter().map(|c| -c).collect();
        let a = body.gauge(&v);
        let b = body.gauge(&neg);
        prop_assert!((a - b).abs() <= 1e-12 * a.max(b).max(1e-300), "{a} vs {b}");
    }

    #[test]
    fn gauge_satisfies_triangle_inequality((body, u) in body_and_vec(), t in prop::collection::vec(coord(), 5)) {
        let v = &t[..body.dim()];
        let sum: Vec<f64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
        prop_assert!(body.gauge(&sum) <= body.gauge(&u) + body.gauge(v) + 1e-9);
    }

    #[test]
    fn square_polygon_agrees_with_linf(v in vector(2)) {
        let square = NormBody::polygon(vec![[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap();
        let linf = NormBody::linf(2).unwrap();
        let a = square.gauge(&v);
        let b = linf.gauge(&v);
        prop_assert!((a - b).abs() <= 1e-12 * b.max(1e-300), "{a} vs {b}");
    }

    #[test]
    fn contains_is_monotone_in_ratio(
        (body, c) in body_and_vec(),
        q_seed in prop::collection::vec(coord(), 5),
        r in 0.01..5.0f64,
        bump in 1e-9..5.0f64,
    ) {
        let q = Point::new(q_seed[..body.dim()].to_vec());
        let small = Homothet::new(Point::new(c.clone()), r);
        let large = Homothet::new(Point::new(c), r + bump);
        if small.contains(&body, &q, &tol()) {
            prop_assert!(large.contains(&body, &q, &tol()));
        }
    }
}

fn arbitrary_family() -> impl Strategy<Value = Family> {
    (
        prop_oneof![
            (1usize..=3).prop_map(|d| NormBody::euclidean(d).unwrap()),
            (1usize..=3).prop_map(|d| NormBody::linf(d).unwrap()),
        ],
        1usize..=18,
    )
        .prop_flat_map(|(body, n)| {
            let d = body.dim();
            (
                Just(body),
                prop::collection::vec((prop::collection::vec(-5.0..5.0f64, d), 0.05..3.0f64), n),
            )
        })
        .prop_map(|(body, raw)| {
            let members = raw
                .into_iter()
                .map(|(coords, ratio)| Homothet::new(Point::new(coords), ratio))
                .collect();
            Family::new(body, members).expect("members are valid")
        })
}

proptest! {
    #[test]
    fn greedy_cover_invariants(family in arbitrary_family()) {
        let result = greedy_cover(&family, &tol());

        // Coverage by the inflated predicate, witness indices selected.
        prop_assert_eq!(result.covered_by.len(), family.len());
        for (j, &by) in result.covered_by.iter().enumerate() {
            prop_assert!(result.selected.contains(&by));
            prop_assert!(family.member(by).contains(family.body(), &family.member(j).center, &tol()));
        }

        // Strictness of the selection under the deflated predicate.
        let sub = family.restrict(&result.selected);
        prop_assert!(sub.strictness_violations(&tol()).is_empty());

        // Non-increasing ratios, index tie-break.
        for w in result.selected.windows(2) {
            let (a, b) = (family.member(w[0]).ratio, family.member(w[1]).ratio);
            prop_assert!(a > b || (a == b && w[0] < w[1]));
        }

        // Idempotence under restriction and determinism.
        let restricted = greedy_cover(&sub, &tol());
        let mapped: Vec<usize> = restricted.selected.iter().map(|&k| result.selected[k]).collect();
        prop_assert_eq!(&mapped, &result.selected);
        prop_assert_eq!(greedy_cover(&family, &tol()), result);
    }

    #[test]
    fn equal_ratio_violations_come_in_pairs(
        dim in 1usize..=3,
        centers in prop::collection::vec(prop::collection::vec(-2.0..2.0f64, 3), 2..=12),
        ratio in 0.5..2.0f64,
        euclid in any::<bool>(),
    ) {
        let body = if euclid { NormBody::euclidean(dim).unwrap() } else { NormBody::linf(dim).unwrap() };
        let members: Vec<Homothet> = centers
            .into_iter()
            .map(|c| Homothet::new(Point::new(c[..dim].to_vec()), ratio))
            .collect();
        let family = Family::new(body, members).unwrap();
        let violations = family.strictness_violations(&tol());
        for v in &violations {
            prop_assert!(
                violations.iter().any(|w| w.container == v.center && w.center == v.container),
                "violation {v:?} has no mirror"
            );
        }
    }

    #[test]
    fn polygon_strict_families_respect_generic_depth_ceiling(
        body in polygon_body(),
        raw in prop::collection::vec((prop::collection::vec(-4.0..4.0f64, 2), 0.05..3.0f64), 2..=14),
    ) {
        // The generic intersecting-strict-arrangement ceiling in the plane.
        let ceiling = 9;
        let members: Vec<Homothet> = raw
            .into_iter()
            .map(|(c, r)| Homothet::new(Point::new(c), r))
            .collect();
        let family = Family::new(body, members).unwrap();

        // Keep a maximal strict prefix-subfamily by rejection.
        let mut kept: Vec<usize> = Vec::new();
        for i in 0..family.len() {
            let m = family.member(i);
            let clashes = kept.iter().any(|&j| {
                let k = family.member(j);
                k.contains_deflated(family.body(), &m.center, &tol())
                    || m.contains_deflated(family.body(), &k.center, &tol())
            });
            if !clashes {
                kept.push(i);
            }
        }
        let strict = family.restrict(&kept);
        prop_assert!(strict.strictness_violations(&tol()).is_empty());

        let mut probes: Vec<Point> = strict.members().iter().map(|m| m.center.clone()).collect();
        for i in 0..strict.len() {
            for j in (i + 1)..strict.len() {
                let (a, b) = (strict.member(i), strict.member(j));
                let denom = a.ratio + b.ratio;
                let coords = a
                    .center
                    .coords
                    .iter()
                    .zip(&b.center.coords)
                    .map(|(x, y)| (b.ratio * x + a.ratio * y) / denom)
                    .collect();
                probes.push(Point::new(coords));
            }
        }
        for probe in &probes {
            let depth = strict.depth(probe, &tol()).depth;
            prop_assert!(depth <= ceiling, "depth {depth} exceeds {ceiling}");
        }
    }

    #[test]
    fn oracle_is_consistent_with_depth(seed in any::<u64>()) {
        let spec = RandomSpec { seed, n_red: 10, ..Default::default() };
        let family = random_strict_family(&spec).unwrap();
        let mut probes: Vec<Point> = family.members().iter().map(|m| m.center.clone()).collect();
        probes.push(Point::origin(2));
        let best = family.max_intersecting_strict_subfamily(&tol(), &probes).unwrap();

        let max_probe_depth = probes.iter().map(|p| family.depth(p, &tol()).depth).max().unwrap();
        prop_assert!(best.size >= max_probe_depth, "{} < {}", best.size, max_probe_depth);
        prop_assert_eq!(best.size, best.indices.len());
        let sub = family.restrict(&best.indices);
        prop_assert!(sub.strictness_violations(&tol()).is_empty());
        for &i in &best.indices {
            prop_assert!(family.member(i).contains(family.body(), &best.probe, &tol()));
        }
    }

    #[test]
    fn random_instances_round_trip_through_json(seed in any::<u64>(), linf in any::<bool>(), dim in 1usize..=3) {
        let spec = RandomSpec {
            seed,
            n_red: 12,
            dim,
            body: if linf { RandomBody::Linf } else { RandomBody::Euclidean },
            ..Default::default()
        };
        let inst = random_instance(&spec).unwrap();
        let back = read_instance(&write_instance(&inst)).unwrap();
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn certificates_chain_monotonically(seed in any::<u64>(), lambda_idx in 0usize..3) {
        let lambda = [0.5, 1.0, 2.0][lambda_idx];
        let spec = RandomSpec { seed, n_red: 15, lambda, ..Default::default() };
        let inst = random_instance(&spec).unwrap();
        prop_assert!(check_hypothesis(&inst, &tol()).all_satisfied);

        let bound = default_depth_bound(inst.body()).unwrap();
        let cert = make_certificate(&inst, bound, &tol()).unwrap();
        let red_sum = cert.chain.red_sum as f64;
        prop_assert!(red_sum >= inst.red().len() as f64);
        prop_assert!(red_sum <= cert.chain.blue_over_lambda + 1e-9 * cert.chain.blue_over_lambda.max(1.0));
        prop_assert!(cert.chain.blue_over_lambda <= cert.chain.depth_term + 1e-9 * cert.chain.depth_term.max(1.0));
        prop_assert!(verify_certificate(&inst, &cert, &tol()).is_valid());
    }
}
