mod common;

use std::f64::consts::{PI, TAU};

use common::*;
use metriq::geometry::{plane_reduce, reflect_across_line, sector_power_map, sector_power_map_inverse, TildeSet};
use metriq::{Domain, Point};
use proptest::prelude::*;

const RECT: [(f64, f64); 4] = [(-1.0, 0.0), (1.0, 0.0), (1.0, 1.0), (-1.0, 1.0)];
const PENTAGON: [(f64, f64); 5] = [(0.0, 0.0), (2.0, -0.5), (3.0, 1.0), (1.5, 2.5), (-0.5, 1.5)];

fn pt(z: C) -> Point {
    Point::from(z)
}

/// Boundary distance by brute force over a sampled boundary.
fn dense_boundary_distance(pieces: &[Piece], z: C) -> f64 {
    let mut best = f64::INFINITY;
    for p in pieces {
        for i in 0..=20_000 {
            best = best.min((p(i as f64 / 20_000.0) - z).norm());
        }
    }
    best
}

#[test]
fn rectangle_nearest_point_counts() {
    let d = Domain::convex_polygon(&RECT).unwrap();
    assert_eq!(d.nearest_boundary_points(&Point::xy(0.0, 0.5)).unwrap().points.len(), 2);
    let n = d.nearest_boundary_points(&Point::xy(0.5, 0.5)).unwrap();
    assert_eq!(n.points.len(), 3);
    assert!((n.distance - 0.5).abs() < 1e-15);
}

#[test]
fn vertices_near_a_foot_are_not_ties() {
    // the vertex is only ~4e-10 farther than the foot, inside the tie tolerance
    let h = Domain::sector(PI).unwrap();
    let x = Point::xy(6e-5, 4.75);
    let n = h.nearest_boundary_points(&x).unwrap();
    assert_eq!(n.points.len(), 1);
    assert!((n.points[0].dist(&Point::xy(6e-5, 0.0))) < 1e-15);

    let d = Domain::convex_polygon(&RECT).unwrap();
    assert_eq!(d.nearest_boundary_points(&Point::xy(1.0 - 1e-5, 0.9)).unwrap().points.len(), 1);
    // a genuine vertex in the reflex part of a wide sector
    let s = Domain::sector(1.5 * PI).unwrap();
    let n = s.nearest_boundary_points(&pt(C::from_polar(1.0, 0.75 * PI))).unwrap();
    assert_eq!(n.points, vec![Point::xy(0.0, 0.0)]);
}

#[test]
fn polygon_orientation_and_convexity_are_checked() {
    let mut cw = RECT.to_vec();
    cw.reverse();
    assert!(Domain::convex_polygon(&cw).is_err());
    assert!(Domain::convex_polygon(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.2), (2.0, 1.0), (0.0, 1.0)]).is_err());
    assert!(Domain::convex_polygon(&PENTAGON).is_ok());
}

#[test]
fn domain_literals_round_trip() {
    for lit in [
        "halfspace:n=3",
        "ball:n=2",
        "sector:theta=1.5707963",
        "polygon:(-1,0);(1,0);(1,1);(-1,1)",
        "punctured:(0,0);(1,0)",
    ] {
        let d: Domain = lit.parse().unwrap();
        assert_eq!(d.to_string().parse::<Domain>().unwrap(), d);
    }
    for bad in ["ball", "ball:n=1", "sector:theta=7", "disk:n=2", "polygon:(0,0);(1,0)"] {
        assert!(bad.parse::<Domain>().is_err(), "{bad}");
    }
}

#[test]
fn sector_boundary_distance_beyond_the_bisector_cone() {
    // wide sector: points in the reflex part are closest to the vertex
    let d = Domain::sector(1.75 * PI).unwrap();
    let z = C::from_polar(2.0, 0.875 * PI);
    let dist = d.boundary_distance(&pt(z)).unwrap();
    assert!((dist - 2.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polygon_distance_matches_brute_force(a in -0.5..3.0f64, b in -0.5..2.5f64) {
        let d = Domain::convex_polygon(&PENTAGON).unwrap();
        let z = c(a, b);
        prop_assume!(d.contains(&pt(z)).unwrap());
        let exact = PENTAGON.iter().zip(PENTAGON.iter().cycle().skip(1))
            .map(|(p, q)| seg_dist(z, c(p.0, p.1), c(q.0, q.1)))
            .fold(f64::INFINITY, f64::min);
        prop_assert!((d.boundary_distance(&pt(z)).unwrap() - exact).abs() < 1e-12);
        let dense = dense_boundary_distance(&polygon_pieces(&PENTAGON), z);
        prop_assert!((d.boundary_distance(&pt(z)).unwrap() - dense).abs() < 1e-3);
    }

    #[test]
    fn sector_distance_matches_brute_force(theta in 0.2..6.2f64, r in 0.1..3.0f64, f in 0.01..0.99f64) {
        let d = Domain::sector(theta).unwrap();
        let z = C::from_polar(r, f * theta);
        let dense = dense_boundary_distance(&sector_pieces(theta, 10.0), z);
        prop_assert!((d.boundary_distance(&pt(z)).unwrap() - dense).abs() < 1e-3);
    }

    #[test]
    fn nearest_points_sit_on_the_boundary_at_the_distance(a in -0.95..0.95f64, b in 0.02..0.98f64) {
        let d = Domain::convex_polygon(&RECT).unwrap();
        let z = pt(c(a, b));
        let n = d.nearest_boundary_points(&z).unwrap();
        prop_assert!(!n.points.is_empty());
        for q in &n.points {
            prop_assert!((q.dist(&z) - n.distance).abs() < 1e-12);
            prop_assert!(!d.contains(q).unwrap());
        }
    }

    #[test]
    fn tilde_points_reflect_through_nearest_points(r in 0.0..0.95f64, t in 0.0..TAU) {
        let d = Domain::unit_ball(2).unwrap();
        let z = C::from_polar(r, t);
        match d.tilde_set(&pt(z)).unwrap() {
            TildeSet::Points(ps) => {
                prop_assert!(r > 0.0);
                for p in ps {
                    let m = (p.to_complex() + z) / 2.0;
                    prop_assert!((m.norm() - 1.0).abs() < 1e-12);
                    prop_assert!((p.to_complex() - z).norm() - 2.0 * (1.0 - r) < 1e-12);
                }
            }
            TildeSet::Sphere { radius, .. } => {
                prop_assert_eq!(r, 0.0);
                prop_assert!((radius - 2.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn power_map_round_trip(theta in 0.2..6.2f64, r in 0.01..10.0f64, f in 0.001..0.999f64) {
        let z = pt(C::from_polar(r, f * theta));
        let w = sector_power_map(theta, &z).unwrap();
        prop_assert!(w.coords()[1] > 0.0);
        let back = sector_power_map_inverse(theta, &w).unwrap();
        prop_assert!(back.dist(&z) < 1e-9 * (1.0 + r));
    }

    #[test]
    fn reflection_is_an_isometric_involution(a in -3.0..3.0f64, b in -3.0..3.0f64, t in 0.0..3.1f64) {
        let (p, q) = (Point::xy(0.3, -0.2), pt(c(0.3, -0.2) + C::from_polar(1.0, t)));
        let z = Point::xy(a, b);
        let r = reflect_across_line(&z, &p, &q).unwrap();
        prop_assert!(reflect_across_line(&r, &p, &q).unwrap().dist(&z) < 1e-12);
        prop_assert!((r.dist(&p) - z.dist(&p)).abs() < 1e-12);
    }

    #[test]
    fn plane_reduction_preserves_norms_and_distance(v in proptest::collection::vec(-0.5..0.5f64, 8)) {
        let x = Point::new(v[..4].iter().copied()).unwrap();
        let y = Point::new(v[4..].iter().copied()).unwrap();
        let (a, b) = plane_reduce(&x, &y).unwrap();
        prop_assert_eq!(a.dim(), 2);
        prop_assert!((a.norm() - x.norm()).abs() < 1e-12);
        prop_assert!((b.norm() - y.norm()).abs() < 1e-12);
        prop_assert!((a.dist(&b) - x.dist(&y)).abs() < 1e-12);
    }
}
