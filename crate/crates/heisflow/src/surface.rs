//! Parametrized surfaces (and time families of surfaces) in the Heisenberg
//! group: second-order jets, unit normal, first and second fundamental
//! forms, mean curvature, and the normal-speed defect that drives the
//! soliton verification.
//!
//! An immersion here is a map Φ(u, v, t) into the group; a fixed-t slice is
//! the surface at that time. Jets carry the coordinate partials up to second
//! order plus the frame conversions; everything extrinsic is then computed
//! in the orthonormal frame, where the metric is the Euclidean dot product
//! and covariant derivatives reduce to the constant connection table
//! (see [`crate::heis::covderiv_field`]).
//!
//! Conventions for the second fundamental form, against the outward
//! normal N = Φu×Φv/|Φu×Φv|:
//!
//! ```text
//! l = −⟨Φu, ∇_{Φu}N⟩,   m = ⟨∇_{Φv}Φu, N⟩,   n = ⟨∇_{Φv}Φv, N⟩,
//! H = ½ (lG − 2mF + En) / (EG − F²).
//! ```
//!
//! `l` is also ⟨∇_{Φu}Φu, N⟩ on the surface; [`l_via_surface_accel`]
//! exposes that second route so tests can assert the two agree.

use std::sync::Arc;

use thiserror::Error;

use crate::heis::{coord_to_frame, covderiv_field, frame_cross, CoordVector, FrameVector, Point};

/// Threshold below which |Φu×Φv| marks a jet as degenerate.
pub const DEGENERACY_EPS: f64 = 1e-12;
/// Central-difference step for first-order partials in FD mode.
pub const FD_STEP_FIRST: f64 = 1e-5;
/// Central-difference step for second-order partials in FD mode.
pub const FD_STEP_SECOND: f64 = 1e-4;

#[derive(Debug, Error, PartialEq)]
pub enum SurfaceError {
    #[error("parameter ({u}, {v}) outside declared rectangle [{u0}, {u1}]×[{v0}, {v1}]")]
    OutsideRectangle {
        u: f64,
        v: f64,
        u0: f64,
        u1: f64,
        v0: f64,
        v1: f64,
    },
    #[error("degenerate jet at (u, v) = ({u}, {v}): |Φu×Φv| = {norm:e}")]
    DegenerateJet { u: f64, v: f64, norm: f64 },
    #[error("non-finite surface data at (u, v) = ({u}, {v})")]
    NonFinite { u: f64, v: f64 },
}

/// Parameter rectangle [u0, u1] × [v0, v1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamRect {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl ParamRect {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Self {
        ParamRect { u0, u1, v0, v1 }
    }

    pub fn contains(&self, u: f64, v: f64, margin: f64) -> bool {
        u >= self.u0 + margin
            && u <= self.u1 - margin
            && v >= self.v0 + margin
            && v <= self.v1 - margin
    }

    /// `n` evenly spaced u-samples (n ≥ 2).
    pub fn u_samples(&self, n: usize) -> Vec<f64> {
        linspace(self.u0, self.u1, n)
    }

    pub fn v_samples(&self, n: usize) -> Vec<f64> {
        linspace(self.v0, self.v1, n)
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two samples");
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(|i| a + h * i as f64).collect()
}

/// Coordinate partial derivatives of an immersion at a parameter point,
/// up to second order in (u, v) and first order in t.
#[derive(Debug, Clone, Copy, Default)]
pub struct CoordPartials {
    pub du: CoordVector,
    pub dv: CoordVector,
    pub dt: CoordVector,
    pub duu: CoordVector,
    pub duv: CoordVector,
    pub dvv: CoordVector,
}

/// A parametrized (time family of) surface(s).
///
/// `position` must be defined on the spec's rectangle for every t of
/// interest; `partials` returns `None` when no analytic derivatives are
/// available, in which case jets fall back to central differences.
pub trait Immersion: Send + Sync {
    fn position(&self, u: f64, v: f64, t: f64) -> Point;

    fn partials(&self, _u: f64, _v: f64, _t: f64) -> Option<CoordPartials> {
        None
    }
}

/// Closure-backed immersion without analytic partials.
pub struct FnSurface<F>(pub F);

impl<F> Immersion for FnSurface<F>
where
    F: Fn(f64, f64, f64) -> Point + Send + Sync,
{
    fn position(&self, u: f64, v: f64, t: f64) -> Point {
        (self.0)(u, v, t)
    }
}

/// Ruled surface Φ(u, v) = α(u) + v·β(u) (chart-wise sum in ℝ³), constant
/// in t. No analytic partials; use FD mode.
pub struct RuledSurface {
    pub alpha: Arc<dyn Fn(f64) -> Point + Send + Sync>,
    pub beta: Arc<dyn Fn(f64) -> CoordVector + Send + Sync>,
}

impl Immersion for RuledSurface {
    fn position(&self, u: f64, v: f64, _t: f64) -> Point {
        let a = (self.alpha)(u);
        let b = (self.beta)(u);
        Point::new(a.x + v * b.vx, a.y + v * b.vy, a.z + v * b.vz)
    }
}

/// How jets obtain their partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivMode {
    Analytic,
    FiniteDifference,
}

/// An immersion together with its declared parameter rectangle and
/// derivative mode.
#[derive(Clone)]
pub struct ImmersionSpec {
    surface: Arc<dyn Immersion>,
    mode: DerivMode,
    rect: ParamRect,
}

impl ImmersionSpec {
    pub fn new(surface: Arc<dyn Immersion>, mode: DerivMode, rect: ParamRect) -> Self {
        ImmersionSpec {
            surface,
            mode,
            rect,
        }
    }

    pub fn analytic(surface: Arc<dyn Immersion>, rect: ParamRect) -> Self {
        Self::new(surface, DerivMode::Analytic, rect)
    }

    pub fn finite_difference(surface: Arc<dyn Immersion>, rect: ParamRect) -> Self {
        Self::new(surface, DerivMode::FiniteDifference, rect)
    }

    pub fn rect(&self) -> ParamRect {
        self.rect
    }

    pub fn mode(&self) -> DerivMode {
        self.mode
    }

    pub fn position(&self, u: f64, v: f64, t: f64) -> Point {
        self.surface.position(u, v, t)
    }

    fn fd_partials(&self, u: f64, v: f64, t: f64) -> CoordPartials {
        let h1 = FD_STEP_FIRST;
        let h2 = FD_STEP_SECOND;
        let f = |u: f64, v: f64, t: f64| self.surface.position(u, v, t);
        let diff = |a: Point, b: Point, s: f64| {
            CoordVector::new((a.x - b.x) / s, (a.y - b.y) / s, (a.z - b.z) / s)
        };
        let du = diff(f(u + h1, v, t), f(u - h1, v, t), 2.0 * h1);
        let dv = diff(f(u, v + h1, t), f(u, v - h1, t), 2.0 * h1);
        let dt = diff(f(u, v, t + h1), f(u, v, t - h1), 2.0 * h1);
        let second = |pp: Point, pc: Point, pm: Point, s: f64| {
            CoordVector::new(
                (pp.x - 2.0 * pc.x + pm.x) / (s * s),
                (pp.y - 2.0 * pc.y + pm.y) / (s * s),
                (pp.z - 2.0 * pc.z + pm.z) / (s * s),
            )
        };
        let center = f(u, v, t);
        let duu = second(f(u + h2, v, t), center, f(u - h2, v, t), h2);
        let dvv = second(f(u, v + h2, t), center, f(u, v - h2, t), h2);
        let pp = f(u + h2, v + h2, t);
        let pm = f(u + h2, v - h2, t);
        let mp = f(u - h2, v + h2, t);
        let mm = f(u - h2, v - h2, t);
        let duv = CoordVector::new(
            (pp.x - pm.x - mp.x + mm.x) / (4.0 * h2 * h2),
            (pp.y - pm.y - mp.y + mm.y) / (4.0 * h2 * h2),
            (pp.z - pm.z - mp.z + mm.z) / (4.0 * h2 * h2),
        );
        CoordPartials {
            du,
            dv,
            dt,
            duu,
            duv,
            dvv,
        }
    }

    pub fn coord_partials(&self, u: f64, v: f64, t: f64) -> CoordPartials {
        match self.mode {
            DerivMode::Analytic => self
                .surface
                .partials(u, v, t)
                .unwrap_or_else(|| self.fd_partials(u, v, t)),
            DerivMode::FiniteDifference => self.fd_partials(u, v, t),
        }
    }
}

/// Second-order jet of an immersion at (u, v, t).
///
/// `phi_u`, `phi_v`, `phi_t` are frame coefficients at the base point;
/// the coordinate partials are kept for the frame-derivative computations
/// in [`fundamental_forms`]. A jet with |Φu×Φv| below [`DEGENERACY_EPS`]
/// is flagged rather than turned into NaNs, so grid sweeps can report
/// partial coverage.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceJet2 {
    pub u: f64,
    pub v: f64,
    pub t: f64,
    pub p: Point,
    pub phi_u: FrameVector,
    pub phi_v: FrameVector,
    pub phi_t: FrameVector,
    pub coord: CoordPartials,
    pub degenerate: bool,
}

/// Evaluate the jet at (u, v, t); (u, v) must lie in the declared rectangle
/// (with an FD margin in FD mode).
pub fn jet_at(spec: &ImmersionSpec, u: f64, v: f64, t: f64) -> Result<SurfaceJet2, SurfaceError> {
    let margin = match spec.mode {
        DerivMode::Analytic => 0.0,
        DerivMode::FiniteDifference => 2.0 * FD_STEP_SECOND,
    };
    let r = spec.rect;
    // tiny slack so that rectangle endpoints are usable in analytic mode
    if !r.contains(u, v, margin - 1e-12) {
        return Err(SurfaceError::OutsideRectangle {
            u,
            v,
            u0: r.u0,
            u1: r.u1,
            v0: r.v0,
            v1: r.v1,
        });
    }
    let p = spec.position(u, v, t);
    let coord = spec.coord_partials(u, v, t);
    if !p.is_finite() || !coord.du.chart_norm().is_finite() || !coord.dv.chart_norm().is_finite() {
        return Err(SurfaceError::NonFinite { u, v });
    }
    let phi_u = coord_to_frame(&p, &coord.du);
    let phi_v = coord_to_frame(&p, &coord.dv);
    let phi_t = coord_to_frame(&p, &coord.dt);
    let degenerate = frame_cross(&phi_u, &phi_v).norm() < DEGENERACY_EPS;
    Ok(SurfaceJet2 {
        u,
        v,
        t,
        p,
        phi_u,
        phi_v,
        phi_t,
        coord,
        degenerate,
    })
}

/// Coefficients of the first (E, F, G) and second (l, m, n) fundamental forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl FundamentalForms {
    pub fn area_det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
}

/// Derivative of the frame coefficients of a coordinate vector field along a
/// parameter direction.
///
/// If V(s) are coordinate components along a path with velocity `dp`, the
/// frame coefficients are (Vx, Vy, Vz + (y·Vx − x·Vy)/2); differentiating
/// gives the formula below.
fn frame_coeff_derivative(
    p: &Point,
    dp: &CoordVector,
    val: &CoordVector,
    dval: &CoordVector,
) -> FrameVector {
    FrameVector::new(
        dval.vx,
        dval.vy,
        dval.vz + (dp.vy * val.vx + p.y * dval.vx - dp.vx * val.vy - p.x * dval.vy) / 2.0,
    )
}

fn ensure_regular(jet: &SurfaceJet2) -> Result<(), SurfaceError> {
    if jet.degenerate {
        Err(SurfaceError::DegenerateJet {
            u: jet.u,
            v: jet.v,
            norm: frame_cross(&jet.phi_u, &jet.phi_v).norm(),
        })
    } else {
        Ok(())
    }
}

/// Unit normal N = Φu×Φv / |Φu×Φv| in frame coefficients.
pub fn unit_normal(jet: &SurfaceJet2) -> Result<FrameVector, SurfaceError> {
    ensure_regular(jet)?;
    let w = frame_cross(&jet.phi_u, &jet.phi_v);
    Ok(w.scale(1.0 / w.norm()))
}

struct FrameDerivs {
    du_phi_u: FrameVector,
    dv_phi_u: FrameVector,
    du_phi_v: FrameVector,
    dv_phi_v: FrameVector,
}

fn frame_derivs(jet: &SurfaceJet2) -> FrameDerivs {
    let c = &jet.coord;
    FrameDerivs {
        du_phi_u: frame_coeff_derivative(&jet.p, &c.du, &c.du, &c.duu),
        dv_phi_u: frame_coeff_derivative(&jet.p, &c.dv, &c.du, &c.duv),
        du_phi_v: frame_coeff_derivative(&jet.p, &c.du, &c.dv, &c.duv),
        dv_phi_v: frame_coeff_derivative(&jet.p, &c.dv, &c.dv, &c.dvv),
    }
}

/// First and second fundamental form coefficients at a jet.
pub fn fundamental_forms(jet: &SurfaceJet2) -> Result<FundamentalForms, SurfaceError> {
    ensure_regular(jet)?;
    let d = frame_derivs(jet);

    let e = jet.phi_u.dot(&jet.phi_u);
    let f = jet.phi_u.dot(&jet.phi_v);
    let g = jet.phi_v.dot(&jet.phi_v);

    let w = frame_cross(&jet.phi_u, &jet.phi_v);
    let q = w.norm();
    let nvec = w.scale(1.0 / q);

    // ∂u(Φu×Φv) on frame coefficients, then ∂u of the normalized field.
    let du_w = frame_cross(&d.du_phi_u, &jet.phi_v).add(&frame_cross(&jet.phi_u, &d.du_phi_v));
    let du_n = du_w
        .scale(1.0 / q)
        .sub(&w.scale(w.dot(&du_w) / (q * q * q)));

    let nabla_u_n = covderiv_field(&nvec, &du_n, &jet.phi_u);
    let l = -jet.phi_u.dot(&nabla_u_n);

    let nabla_v_phi_u = covderiv_field(&jet.phi_u, &d.dv_phi_u, &jet.phi_v);
    let m = nabla_v_phi_u.dot(&nvec);

    let nabla_v_phi_v = covderiv_field(&jet.phi_v, &d.dv_phi_v, &jet.phi_v);
    let n = nabla_v_phi_v.dot(&nvec);

    Ok(FundamentalForms { e, f, g, l, m, n })
}

/// Alternative route to l, via the surface acceleration: ⟨∇_{Φu}Φu, N⟩.
/// Agrees with the primary −⟨Φu, ∇_{Φu}N⟩ on immersed surfaces.
pub fn l_via_surface_accel(jet: &SurfaceJet2) -> Result<f64, SurfaceError> {
    let nvec = unit_normal(jet)?;
    let d = frame_derivs(jet);
    let nabla_u_phi_u = covderiv_field(&jet.phi_u, &d.du_phi_u, &jet.phi_u);
    Ok(nabla_u_phi_u.dot(&nvec))
}

/// Mean curvature H = ½ (lG − 2mF + En)/(EG − F²).
pub fn mean_curvature(jet: &SurfaceJet2) -> Result<f64, SurfaceError> {
    let ff = fundamental_forms(jet)?;
    Ok(0.5 * (ff.l * ff.g - 2.0 * ff.m * ff.f + ff.e * ff.n) / ff.area_det())
}

/// Normal-speed defect r = ⟨∂ₜΦ, N⟩ − H.
///
/// Vanishes identically exactly when the family solves mean curvature flow
/// in the normal direction.
pub fn normal_speed_residual(jet: &SurfaceJet2) -> Result<f64, SurfaceError> {
    let nvec = unit_normal(jet)?;
    let h = mean_curvature(jet)?;
    Ok(jet.phi_t.dot(&nvec) - h)
}
