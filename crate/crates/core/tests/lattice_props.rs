use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vanishing::lattice::{convex_hull, pt, rectangle, triangle, Adjoint, LatticePoint, LatticePolygon};
use vanishing::samples::{random_convex_polygon, random_smooth_polygon, random_unimodular};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Area and boundary count straight from the vertex list.
fn pick_oracle(v: &[LatticePoint]) -> i64 {
    let n = v.len();
    let mut twice = 0;
    let mut b = 0;
    for i in 0..n {
        let (p, q) = (v[i], v[(i + 1) % n]);
        twice += p.x * q.y - q.x * p.y;
        b += gcd(q.x - p.x, q.y - p.y);
    }
    (twice.abs() - b + 2) / 2
}

/// Interior points by scanning the bounding box with strict half-plane tests.
fn scan_interior(v: &[LatticePoint]) -> Vec<LatticePoint> {
    let (x0, x1) = (v.iter().map(|p| p.x).min().unwrap(), v.iter().map(|p| p.x).max().unwrap());
    let (y0, y1) = (v.iter().map(|p| p.y).min().unwrap(), v.iter().map(|p| p.y).max().unwrap());
    let n = v.len();
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            let inside = (0..n).all(|i| {
                let (a, b) = (v[i], v[(i + 1) % n]);
                (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) > 0
            });
            if inside {
                out.push(pt(x, y));
            }
        }
    }
    out
}

#[test]
fn pick_oracle_on_random_polygons() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..150 {
        let p = random_convex_polygon(&mut rng, 10);
        let g = p.genus() as i64;
        assert_eq!(g, pick_oracle(p.vertices()), "{p}");
        assert_eq!(g, scan_interior(p.vertices()).len() as i64, "{p}");
    }
}

#[test]
fn plane_curve_family() {
    for d in 4..=8i64 {
        let p = triangle(d);
        let r = p.adjoint().polygon().map(|a| a.divisibility());
        assert_eq!(p.genus() as i64, (d - 1) * (d - 2) / 2);
        assert_eq!(r, Some(d - 3));
    }
}

#[test]
fn rectangle_family() {
    for a in 3..=8i64 {
        for b in 3..=8i64 {
            let p = rectangle(a, b);
            assert_eq!(p.genus() as i64, (a - 1) * (b - 1));
            assert_eq!(p.adjoint().polygon().map(|q| q.divisibility()), Some(gcd(a - 2, b - 2)));
        }
    }
}

#[test]
fn adjoint_examples() {
    let t = triangle(6);
    let Adjoint::Polygon { polygon } = t.adjoint() else { panic!("two-dimensional") };
    assert_eq!(polygon, LatticePolygon::from_coords(&[(1, 1), (4, 1), (1, 4)]).unwrap());
    let h = LatticePolygon::from_coords(&[(0, 0), (6, 0), (0, 2)]).unwrap();
    assert!(matches!(h.adjoint(), Adjoint::Segment { .. }));
    assert!(h.is_hyperelliptic().unwrap());
    assert!(matches!(triangle(3).adjoint(), Adjoint::Point { .. }));
    assert!(matches!(triangle(2).adjoint(), Adjoint::Empty));
}

fn small_points() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-10i64..=10, -10i64..=10), 3..12)
}

proptest! {
    #[test]
    fn hull_contains_inputs_and_is_ccw(pts in small_points()) {
        let pts: Vec<LatticePoint> = pts.into_iter().map(LatticePoint::from).collect();
        if let Ok(h) = convex_hull(&pts) {
            prop_assert!(pts.iter().all(|&p| h.contains(p)));
            prop_assert!(h.twice_area() > 0);
            let v = h.vertices();
            let n = v.len();
            for i in 0..n {
                let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
                prop_assert!((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) > 0);
            }
            prop_assert_eq!(convex_hull(v).unwrap(), h.clone());
            prop_assert_eq!(h.genus() as i64, pick_oracle(v));
        }
    }

    #[test]
    fn invariants_under_unimodular_maps(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_convex_polygon(&mut rng, 6);
        let m = random_unimodular(&mut rng);
        let q = p.transform(&m);
        prop_assert_eq!(p.genus(), q.genus());
        prop_assert_eq!(p.boundary_count(), q.boundary_count());
        prop_assert_eq!(p.twice_area(), q.twice_area());
        prop_assert_eq!(p.adjoint().tag(), q.adjoint().tag());
        prop_assert_eq!(p.adjoint().polygon().map(|a| a.divisibility()), q.adjoint().polygon().map(|a| a.divisibility()));
        prop_assert_eq!(p.normal_form().0, q.normal_form().0);
        let (nf, map) = p.normal_form();
        prop_assert_eq!(p.transform(&map), nf);
    }

    #[test]
    fn smooth_generator_is_smooth(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_smooth_polygon(&mut rng);
        prop_assert!(p.is_smooth());
        let json = serde_json::to_string(&p).unwrap();
        let back: LatticePolygon = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }
}
