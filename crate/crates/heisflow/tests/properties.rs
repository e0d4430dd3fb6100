//! Property tests for the algebraic identities the geometry relies on.

use proptest::prelude::*;

use heisflow::geodesic::{geodesic_closed_form, geodesic_residual, GeodesicParams};
use heisflow::heis::{
    coord_to_frame, frame_cross, frame_to_coord, inner, metric_at, CoordVector, FrameVector, Point,
};
use heisflow::isometry::{flow_apply, isometry_residual, IsometryGenerator};
use heisflow::surface::linspace;

fn point_strategy() -> impl Strategy<Value = Point> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y, z)| Point::new(x, y, z))
}

fn coord_strategy() -> impl Strategy<Value = CoordVector> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y, z)| CoordVector::new(x, y, z))
}

fn frame_strategy() -> impl Strategy<Value = FrameVector> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b, c)| FrameVector::new(a, b, c))
}

fn gen_strategy() -> impl Strategy<Value = IsometryGenerator> {
    prop_oneof![
        Just(IsometryGenerator::Rotation),
        Just(IsometryGenerator::TranslateX),
        Just(IsometryGenerator::TranslateY),
        Just(IsometryGenerator::TranslateZ),
    ]
}

proptest! {
    #[test]
    fn metric_determinant_is_one(p in point_strategy()) {
        prop_assert!((metric_at(&p).det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn frame_round_trip_is_identity(p in point_strategy(), v in coord_strategy()) {
        let back = frame_to_coord(&p, &coord_to_frame(&p, &v));
        prop_assert!(back.sub(&v).chart_norm() < 1e-13);
    }

    #[test]
    fn inner_product_two_routes_agree(
        p in point_strategy(),
        v in coord_strategy(),
        w in coord_strategy(),
    ) {
        let via_matrix = inner(&p, &v, &w);
        let via_frame = coord_to_frame(&p, &v).dot(&coord_to_frame(&p, &w));
        prop_assert!((via_matrix - via_frame).abs() < 1e-12);
    }

    #[test]
    fn cross_product_orthogonality_and_lagrange(
        a in frame_strategy(),
        b in frame_strategy(),
    ) {
        let c = frame_cross(&a, &b);
        prop_assert!(c.dot(&a).abs() < 1e-12);
        prop_assert!(c.dot(&b).abs() < 1e-12);
        // |a×b|² = |a|²|b|² − (a·b)²
        let lhs = c.dot(&c);
        let rhs = a.dot(&a) * b.dot(&b) - a.dot(&b) * a.dot(&b);
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn flow_group_law(gen in gen_strategy(), s in -2.0..2.0f64, t in -2.0..2.0f64, p in point_strategy()) {
        let two = flow_apply(gen, s, &flow_apply(gen, t, &p));
        let one = flow_apply(gen, s + t, &p);
        prop_assert!(two.chart_dist(&one) < 1e-12);
    }

    #[test]
    fn flows_preserve_the_metric(gen in gen_strategy(), t in -2.0..2.0f64, p in point_strategy()) {
        prop_assert!(isometry_residual(gen, t, &p) < 1e-8);
    }

    #[test]
    fn closed_form_geodesics_have_small_residual(
        a in -2.0..2.0f64,
        b in -3.0..3.0f64,
        c in prop_oneof![0.3..2.0f64, -2.0..-0.3f64],
    ) {
        let params = GeodesicParams::new(a, b, c).unwrap();
        let grid = linspace(-2.0, 2.0, 9);
        let r = geodesic_residual(|u| geodesic_closed_form(&params, u), &grid).unwrap();
        prop_assert!(r < 1e-6, "residual {} for {:?}", r, params);
    }
}
