//! Geodesics of the Heisenberg group: the closed-form family through the
//! origin, a fixed-step RK4 integrator of the geodesic equation, and a
//! residual oracle.
//!
//! In the orthonormal frame the geodesic equation reads ȧ₁ = −a₂a₃,
//! ȧ₂ = a₁a₃, ȧ₃ = 0: the vertical frame component a₃ is conserved and the
//! horizontal components rotate at rate a₃. Integrating through the frame
//! relations gives, for initial velocity (A cos B, A sin B, C) at the
//! origin with C ≠ 0,
//!
//! ```text
//! x(u) = (A/C)[sin(Cu + B) − sin B]
//! y(u) = (A/C)[cos B − cos(Cu + B)]
//! z(u) = (C + A²/2C)·u − (A²/2C²)·sin(Cu)
//! ```
//!
//! These are helices; A = 0 gives the vertical line (0, 0, Cu), and the
//! C = 0 limit degenerates to the horizontal lines (Au, Bu, 0), which are
//! provided by [`geodesic_horizontal`]. The parametrization is not
//! unit-speed in general: the speed is √(A² + C²) and is reported by
//! [`GeodesicParams::speed`], not assumed to be 1.

use thiserror::Error;

use crate::heis::{christoffel_at, inner, CoordVector, Point};

#[derive(Debug, Error, PartialEq)]
pub enum GeodesicError {
    #[error("C must be nonzero for the helix family; use geodesic_horizontal for C = 0")]
    VerticalParamZero,
    #[error("residual grid needs at least 3 points, got {0}")]
    GridTooShort(usize),
    #[error("integrator needs at least 2 steps, got {0}")]
    TooFewSteps(usize),
    #[error("initial velocity must be nonzero")]
    ZeroVelocity,
}

/// Parameters (A, B, C) of the closed-form family through the origin;
/// C != 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl GeodesicParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, GeodesicError> {
        if c == 0.0 {
            return Err(GeodesicError::VerticalParamZero);
        }
        Ok(GeodesicParams { a, b, c })
    }

    /// Initial velocity implied by the parametrization (derivative of the
    /// closed form at u = 0).
    pub fn initial_velocity(&self) -> CoordVector {
        CoordVector::new(self.a * self.b.cos(), self.a * self.b.sin(), self.c)
    }

    /// Constant speed of the parametrization.
    pub fn speed(&self) -> f64 {
        (self.a * self.a + self.c * self.c).sqrt()
    }
}

/// Closed-form geodesic through the origin with parameters (A, B, C), C ≠ 0.
pub fn geodesic_closed_form(params: &GeodesicParams, u: f64) -> Point {
    let (a, b, c) = (params.a, params.b, params.c);
    let x = a / c * ((c * u + b).sin() - b.sin());
    let y = a / c * (b.cos() - (c * u + b).cos());
    let z = (c + a * a / (2.0 * c)) * u - a * a / (2.0 * c * c) * (c * u).sin();
    Point::new(x, y, z)
}

/// Velocity of the closed form at parameter u.
pub fn geodesic_closed_form_velocity(params: &GeodesicParams, u: f64) -> CoordVector {
    let (a, b, c) = (params.a, params.b, params.c);
    CoordVector::new(
        a * (c * u + b).cos(),
        a * (c * u + b).sin(),
        c + a * a / (2.0 * c) * (1.0 - (c * u).cos()),
    )
}

/// Horizontal line geodesic (Au, Bu, 0).
pub fn geodesic_horizontal(a: f64, b: f64, u: f64) -> Point {
    Point::new(a * u, b * u, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicSample {
    pub u: f64,
    pub point: Point,
    pub velocity: CoordVector,
}

/// Sampled numeric geodesic.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub samples: Vec<GeodesicSample>,
}

impl GeodesicPath {
    pub fn end(&self) -> &GeodesicSample {
        self.samples
            .last()
            .expect("path has at least the initial sample")
    }

    /// Metric speed² at the first and last sample, for conservation checks.
    pub fn speed_sq_drift(&self) -> f64 {
        let first = &self.samples[0];
        let last = self.end();
        let s0 = inner(&first.point, &first.velocity, &first.velocity);
        let s1 = inner(&last.point, &last.velocity, &last.velocity);
        (s1 - s0).abs()
    }
}

fn geodesic_rhs(p: &Point, v: &CoordVector) -> (CoordVector, CoordVector) {
    let gamma = christoffel_at(p);
    let acc = gamma.contract(v, v).scale(-1.0);
    (*v, acc)
}

/// Fixed-step RK4 integration of γ̈^k + Γ^k_{ij} γ̇^i γ̇^j = 0.
pub fn geodesic_integrate(
    p0: &Point,
    v0: &CoordVector,
    length: f64,
    steps: usize,
) -> Result<GeodesicPath, GeodesicError> {
    if steps < 2 {
        return Err(GeodesicError::TooFewSteps(steps));
    }
    if v0.chart_norm() == 0.0 {
        return Err(GeodesicError::ZeroVelocity);
    }
    let h = length / steps as f64;
    let mut p = *p0;
    let mut v = *v0;
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(GeodesicSample {
        u: 0.0,
        point: p,
        velocity: v,
    });
    for i in 0..steps {
        let (k1p, k1v) = geodesic_rhs(&p, &v);
        let (k2p, k2v) = geodesic_rhs(&offset(&p, &k1p, h / 2.0), &v.add(&k1v.scale(h / 2.0)));
        let (k3p, k3v) = geodesic_rhs(&offset(&p, &k2p, h / 2.0), &v.add(&k2v.scale(h / 2.0)));
        let (k4p, k4v) = geodesic_rhs(&offset(&p, &k3p, h), &v.add(&k3v.scale(h)));
        let dp = k1p
            .add(&k2p.scale(2.0))
            .add(&k3p.scale(2.0))
            .add(&k4p)
            .scale(h / 6.0);
        let dv = k1v
            .add(&k2v.scale(2.0))
            .add(&k3v.scale(2.0))
            .add(&k4v)
            .scale(h / 6.0);
        p = Point::new(p.x + dp.vx, p.y + dp.vy, p.z + dp.vz);
        v = v.add(&dv);
        samples.push(GeodesicSample {
            u: (i + 1) as f64 * h,
            point: p,
            velocity: v,
        });
    }
    Ok(GeodesicPath { samples })
}

fn offset(p: &Point, d: &CoordVector, s: f64) -> Point {
    Point::new(p.x + s * d.vx, p.y + s * d.vy, p.z + s * d.vz)
}

/// Step used by the residual oracle's five-point stencils.
pub const RESIDUAL_FD_STEP: f64 = 1e-3;

/// Max over the grid of |γ̈^k + Γ^k_{ij} γ̇^i γ̇^j| for an arbitrary curve,
/// with derivatives by five-point central differences around each node.
///
/// Near zero on geodesics; O(1) on generically accelerating curves.
pub fn geodesic_residual(curve: impl Fn(f64) -> Point, grid: &[f64]) -> Result<f64, GeodesicError> {
    if grid.len() < 3 {
        return Err(GeodesicError::GridTooShort(grid.len()));
    }
    let h = RESIDUAL_FD_STEP;
    let mut worst: f64 = 0.0;
    for &u in grid {
        let pts: Vec<Point> = (-2..=2).map(|k| curve(u + k as f64 * h)).collect();
        let comp = |f: fn(&Point) -> f64| -> (f64, f64) {
            let s: Vec<f64> = pts.iter().map(f).collect();
            let d1 = (-s[4] + 8.0 * s[3] - 8.0 * s[1] + s[0]) / (12.0 * h);
            let d2 = (-s[4] + 16.0 * s[3] - 30.0 * s[2] + 16.0 * s[1] - s[0]) / (12.0 * h * h);
            (d1, d2)
        };
        let (xd, xdd) = comp(|p| p.x);
        let (yd, ydd) = comp(|p| p.y);
        let (zd, zdd) = comp(|p| p.z);
        let vel = CoordVector::new(xd, yd, zd);
        let gamma = christoffel_at(&pts[2]);
        let gterm = gamma.contract(&vel, &vel);
        let res = CoordVector::new(xdd + gterm.vx, ydd + gterm.vy, zdd + gterm.vz);
        worst = worst.max(res.chart_norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::linspace;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_params(rng: &mut impl Rng) -> GeodesicParams {
        let a = rng.random_range(-2.0..2.0);
        let b = rng.random_range(-3.0..3.0);
        let mut c: f64 = rng.random_range(-2.0..2.0);
        if c.abs() < 0.3 {
            c = 0.3_f64.copysign(if c == 0.0 { 1.0 } else { c });
        }
        GeodesicParams::new(a, b, c).unwrap()
    }

    #[test]
    fn construction_rejects_zero_c() {
        assert_eq!(
            GeodesicParams::new(1.0, 0.0, 0.0),
            Err(GeodesicError::VerticalParamZero)
        );
    }

    #[test]
    fn starts_at_origin() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for _ in 0..20 {
            let params = rand_params(&mut rng);
            let p = geodesic_closed_form(&params, 0.0);
            assert!(p.chart_dist(&Point::ORIGIN) < 1e-15, "{params:?}");
        }
    }

    #[test]
    fn vertical_line_case() {
        // A = 0, C = 1: straight vertical line (0, 0, u).
        let params = GeodesicParams::new(0.0, 0.4, 1.0).unwrap();
        for &u in &[-2.0, -0.3, 0.0, 1.1, 3.0] {
            let p = geodesic_closed_form(&params, u);
            assert!(p.chart_dist(&Point::new(0.0, 0.0, u)) < 1e-15);
        }
    }

    #[test]
    fn horizontal_line_case() {
        assert_eq!(
            geodesic_horizontal(1.0, 0.0, 2.0),
            Point::new(2.0, 0.0, 0.0)
        );
        assert_eq!(geodesic_horizontal(0.7, -0.2, 0.0), Point::ORIGIN);
        let grid = linspace(-2.0, 2.0, 41);
        let r = geodesic_residual(|u| geodesic_horizontal(1.3, 2.0, u), &grid).unwrap();
        assert!(r < 1e-8, "horizontal residual {r}");
    }

    #[test]
    fn closed_form_velocity_matches_fd() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let params = rand_params(&mut rng);
            let u = rng.random_range(-2.0..2.0);
            let h = 1e-6;
            let pp = geodesic_closed_form(&params, u + h);
            let pm = geodesic_closed_form(&params, u - h);
            let fd = CoordVector::new(
                (pp.x - pm.x) / (2.0 * h),
                (pp.y - pm.y) / (2.0 * h),
                (pp.z - pm.z) / (2.0 * h),
            );
            let an = geodesic_closed_form_velocity(&params, u);
            assert!(fd.sub(&an).chart_norm() < 1e-7);
        }
    }

    #[test]
    fn initial_velocity_matches_derivative_at_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let params = rand_params(&mut rng);
            let v0 = params.initial_velocity();
            let an = geodesic_closed_form_velocity(&params, 0.0);
            assert!(v0.sub(&an).chart_norm() < 1e-12);
            // speed of the parametrization is √(A²+C²)
            let s = inner(&Point::ORIGIN, &v0, &v0).sqrt();
            assert!((s - params.speed()).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_has_small_geodesic_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let grid = linspace(-3.0, 3.0, 31);
        for _ in 0..50 {
            let params = rand_params(&mut rng);
            let r = geodesic_residual(|u| geodesic_closed_form(&params, u), &grid).unwrap();
            assert!(r < 1e-6, "residual {r} for {params:?}");
        }
    }

    #[test]
    fn accelerating_curve_detected() {
        let grid = linspace(0.0, 1.0, 21);
        let r = geodesic_residual(|u| Point::new(u, u * u, 0.0), &grid).unwrap();
        assert!(r >= 1e-2, "control curve residual {r}");
    }

    #[test]
    fn residual_rejects_short_grid() {
        assert_eq!(
            geodesic_residual(|u| Point::new(u, 0.0, 0.0), &[0.0, 1.0]),
            Err(GeodesicError::GridTooShort(2))
        );
    }

    #[test]
    fn integrator_stays_on_z_axis_for_vertical_start() {
        let path = geodesic_integrate(&Point::ORIGIN, &CoordVector::DZ, 3.0, 300).unwrap();
        for s in &path.samples {
            assert!(s.point.x.abs() < 1e-14 && s.point.y.abs() < 1e-14);
        }
        assert!((path.end().point.z - 3.0).abs() < 1e-10);
    }

    #[test]
    fn integrator_matches_closed_form() {
        let params = GeodesicParams::new(1.0, 0.0, 1.0).unwrap();
        let path =
            geodesic_integrate(&Point::ORIGIN, &params.initial_velocity(), 5.0, 5000).unwrap();
        let mut worst: f64 = 0.0;
        for s in &path.samples {
            let expect = geodesic_closed_form(&params, s.u);
            worst = worst.max(s.point.chart_dist(&expect));
        }
        assert!(worst < 1e-6, "max deviation {worst}");
        assert!(
            path.speed_sq_drift() < 1e-8,
            "speed drift {}",
            path.speed_sq_drift()
        );
    }

    #[test]
    fn integrator_is_fourth_order() {
        let params = GeodesicParams::new(1.3, 0.7, 0.9).unwrap();
        let dev = |steps: usize| -> f64 {
            let path =
                geodesic_integrate(&Point::ORIGIN, &params.initial_velocity(), 3.0, steps).unwrap();
            let end = path.end();
            end.point.chart_dist(&geodesic_closed_form(&params, end.u))
        };
        let e1 = dev(30);
        let e2 = dev(60);
        let ratio = e1 / e2;
        assert!(
            (8.0..=32.0).contains(&ratio),
            "order ratio {ratio} (e1={e1:e}, e2={e2:e})"
        );
    }

    #[test]
    fn integrator_rejects_bad_input() {
        assert!(matches!(
            geodesic_integrate(&Point::ORIGIN, &CoordVector::DZ, 1.0, 1),
            Err(GeodesicError::TooFewSteps(1))
        ));
        assert!(matches!(
            geodesic_integrate(&Point::ORIGIN, &CoordVector::ZERO, 1.0, 10),
            Err(GeodesicError::ZeroVelocity)
        ));
    }
}
