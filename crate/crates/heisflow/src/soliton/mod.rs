//! Mean curvature flow solitons on ruled surfaces of the Heisenberg group.
//!
//! A soliton here is a family Φᵗ = Ψᵗ∘Φ where Ψᵗ is the flow of a Killing
//! field with linear time scale ε(t) = A·t; the family solves MCF in the
//! normal direction exactly when the normal-speed defect
//! r = ⟨∂ₜΦᵗ, Nᵗ⟩ − Hᵗ vanishes, which reduces to an ODE for the ruled
//! initial surface's profile functions.
//!
//! Six families are modeled, tagged by the serialized names used in the
//! JSON spec format:
//!
//! | tag | rulings | flow | initial surface |
//! |-----|---------|------|-----------------|
//! | `T1R` | vertical lines | rotation | (u, f(u), v), f′ = tan[A(u²+f²)+B] |
//! | `T1X` | vertical lines | x-translation | (u, f(u), v), closed-form arctan profile |
//! | `T1Y` | vertical lines | y-translation | (u, f(u), v), −(1/2A)·log profile (Grim Reaper) |
//! | `T2R` | horizontal lines | rotation | (Cv−Bf, Cf+Bv, g), Riccati profile at v★ |
//! | `T2X` | horizontal lines | x-translation | same, B = 0, C = 1 reduction |
//! | `T2Z` | horizontal lines | z-translation | same, Riccati y′ = 4A[y²/(4+u²)+1] |
//!
//! For the horizontal families the profile pair (f, g) enters through the
//! substitution y = 2g′ − v at a single caller-chosen v★; the residual is
//! reported over the whole (u, v) grid so the v-dependence is visible data
//! rather than a hidden assumption.

pub mod profiles;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::heis::{CoordVector, Point};
use crate::isometry::{flow_apply, flow_jacobian, IsometryGenerator};
use crate::surface::{
    jet_at, linspace, normal_speed_residual, CoordPartials, Immersion, ImmersionSpec, ParamRect,
    SurfaceError,
};

pub use profiles::{
    fd_derivative_5pt, riccati_solve, t1r_profile, ClosureProfile, GrimProfile, ProfileFn,
    ProfileJet, ProfileMethod, ProfileSolution, RiccatiKind, RiccatiSolution, SampledProfile,
    TranslatorXProfile, POLE_MARGIN, RICCATI_CAP,
};

#[derive(Debug, Error)]
pub enum SolitonError {
    #[error("flow speed A must be nonzero")]
    ZeroSpeed,
    #[error("D must be positive, got {0}")]
    NonPositiveD(f64),
    #[error("profile domain violated at u = {u}: {why}")]
    ProfileDomain { u: f64, why: String },
    #[error("tan pole at the start of integration (u = {0})")]
    PoleAtStart(f64),
    #[error("u-range must satisfy u0 < u1, got [{0}, {1}]")]
    BadRange(f64, f64),
    #[error("profile solver needs at least 4 steps, got {0}")]
    TooFewSteps(usize),
    #[error("ruling constants must satisfy B² + C² = 1, got B = {b}, C = {c}")]
    RulingNotUnit { b: f64, c: f64 },
    #[error("the x-translating horizontal family's built-in solver requires B = 0, C = 1")]
    UnsupportedRuling,
    #[error("profile constants B and C must not both vanish")]
    DegenerateProfileConstants,
    #[error("v* is required for horizontal families")]
    MissingVStar,
    #[error("field {0} is required for family {1}")]
    MissingField(&'static str, &'static str),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Family tag; the serialized names are part of the JSON spec format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolitonFamily {
    T1R,
    T1X,
    T1Y,
    T2R,
    T2X,
    T2Z,
}

impl SolitonFamily {
    pub const ALL: [SolitonFamily; 6] = [
        SolitonFamily::T1R,
        SolitonFamily::T1X,
        SolitonFamily::T1Y,
        SolitonFamily::T2R,
        SolitonFamily::T2X,
        SolitonFamily::T2Z,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SolitonFamily::T1R => "T1R",
            SolitonFamily::T1X => "T1X",
            SolitonFamily::T1Y => "T1Y",
            SolitonFamily::T2R => "T2R",
            SolitonFamily::T2X => "T2X",
            SolitonFamily::T2Z => "T2Z",
        }
    }

    /// Vertical rulings (initial surface (u, f(u), v))?
    pub fn is_vertical(&self) -> bool {
        matches!(
            self,
            SolitonFamily::T1R | SolitonFamily::T1X | SolitonFamily::T1Y
        )
    }

    /// The isometry flow moving the family.
    pub fn generator(&self) -> IsometryGenerator {
        match self {
            SolitonFamily::T1R | SolitonFamily::T2R => IsometryGenerator::Rotation,
            SolitonFamily::T1X | SolitonFamily::T2X => IsometryGenerator::TranslateX,
            SolitonFamily::T1Y => IsometryGenerator::TranslateY,
            SolitonFamily::T2Z => IsometryGenerator::TranslateZ,
        }
    }
}

impl std::fmt::Display for SolitonFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A fully assembled soliton family: flow constants, profile functions,
/// and the parameter rectangle the profiles are valid on.
#[derive(Clone)]
pub struct SolitonSpec {
    pub family: SolitonFamily,
    /// Flow speed; ε(t) = A·t.
    pub a: f64,
    /// Constant B (profile constant for vertical families, ruling component
    /// for horizontal ones).
    pub b: f64,
    /// Constant C (same split as B).
    pub c: f64,
    pub f: Arc<dyn ProfileFn>,
    /// Second profile; horizontal families only.
    pub g: Option<Arc<dyn ProfileFn>>,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    /// The v at which g was reconstructed (horizontal families).
    pub v_star: Option<f64>,
    profile_nodes: Option<Vec<f64>>,
}

impl std::fmt::Debug for SolitonSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SolitonSpec")
            .field("family", &self.family)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("c", &self.c)
            .field("u_range", &self.u_range)
            .field("v_range", &self.v_range)
            .field("v_star", &self.v_star)
            .finish_non_exhaustive()
    }
}

fn check_unit_ruling(b: f64, c: f64) -> Result<(), SolitonError> {
    if (b * b + c * c - 1.0).abs() > 1e-12 {
        return Err(SolitonError::RulingNotUnit { b, c });
    }
    Ok(())
}

impl SolitonSpec {
    /// Rotating soliton with vertical rulings; profile by RK4 on
    /// f′ = tan[A(u² + f²) + B].
    pub fn t1r(
        a: f64,
        b: f64,
        f0: f64,
        u_range: (f64, f64),
        v_range: (f64, f64),
        steps: usize,
    ) -> Result<Self, SolitonError> {
        let sol = t1r_profile(a, b, f0, u_range, steps)?;
        let range = (sol.u_start(), sol.u_end());
        let nodes = sol.us.clone();
        Ok(SolitonSpec {
            family: SolitonFamily::T1R,
            a,
            b,
            c: 0.0,
            f: Arc::new(SampledProfile(Arc::new(sol))),
            g: None,
            u_range: range,
            v_range,
            v_star: None,
            profile_nodes: Some(nodes),
        })
    }

    /// x-translating soliton with vertical rulings; closed-form profile.
    pub fn t1x(
        a: f64,
        d: f64,
        b: f64,
        u_range: (f64, f64),
        v_range: (f64, f64),
    ) -> Result<Self, SolitonError> {
        if u_range.1 <= u_range.0 {
            return Err(SolitonError::BadRange(u_range.0, u_range.1));
        }
        let prof = TranslatorXProfile::new(a, d, b, true)?;
        for u in [u_range.0, u_range.1] {
            if !prof.contains(u) {
                return Err(SolitonError::ProfileDomain {
                    u,
                    why: format!(
                        "D·e^(4Au) ≤ 1; domain boundary at u = {}",
                        prof.domain_boundary()
                    ),
                });
            }
        }
        Ok(SolitonSpec {
            family: SolitonFamily::T1X,
            a,
            b,
            c: 0.0,
            f: Arc::new(prof),
            g: None,
            u_range,
            v_range,
            v_star: None,
            profile_nodes: None,
        })
    }

    /// y-translating soliton with vertical rulings (Grim Reaper family);
    /// closed-form logarithmic profile.
    pub fn t1y(
        a: f64,
        b: f64,
        c: f64,
        u_range: (f64, f64),
        v_range: (f64, f64),
    ) -> Result<Self, SolitonError> {
        if u_range.1 <= u_range.0 {
            return Err(SolitonError::BadRange(u_range.0, u_range.1));
        }
        let prof = GrimProfile::new(a, b, c)?;
        for &u in linspace(u_range.0, u_range.1, 129).iter() {
            prof.jet(u)?;
        }
        Ok(SolitonSpec {
            family: SolitonFamily::T1Y,
            a,
            b,
            c,
            f: Arc::new(prof),
            g: None,
            u_range,
            v_range,
            v_star: None,
            profile_nodes: None,
        })
    }

    /// Rotating soliton with horizontal rulings; f(u) = u, g from the
    /// Riccati reduction at v★.
    #[allow(clippy::too_many_arguments)]
    pub fn t2r(
        a: f64,
        b: f64,
        c: f64,
        y0: f64,
        g0: f64,
        v_star: f64,
        u_range: (f64, f64),
        v_range: (f64, f64),
        steps: usize,
    ) -> Result<Self, SolitonError> {
        check_unit_ruling(b, c)?;
        let sol = riccati_solve(RiccatiKind::RotatingAtV, a, y0, v_star, g0, u_range, steps)?;
        Self::horizontal_from_riccati(SolitonFamily::T2R, a, b, c, sol, v_range)
    }

    /// x-translating soliton with horizontal rulings; the built-in solver
    /// covers the B = 0, C = 1 reduction.
    pub fn t2x(
        a: f64,
        y0: f64,
        g0: f64,
        v_star: f64,
        u_range: (f64, f64),
        v_range: (f64, f64),
        steps: usize,
    ) -> Result<Self, SolitonError> {
        let sol = riccati_solve(RiccatiKind::TranslatingX, a, y0, v_star, g0, u_range, steps)?;
        Self::horizontal_from_riccati(SolitonFamily::T2X, a, 0.0, 1.0, sol, v_range)
    }

    /// Vertically translating soliton with horizontal rulings; f(u) = u,
    /// g from y′ = 4A[y²/(4+u²)+1].
    #[allow(clippy::too_many_arguments)]
    pub fn t2z(
        a: f64,
        b: f64,
        c: f64,
        y0: f64,
        g0: f64,
        v_star: f64,
        u_range: (f64, f64),
        v_range: (f64, f64),
        steps: usize,
    ) -> Result<Self, SolitonError> {
        check_unit_ruling(b, c)?;
        let sol = riccati_solve(RiccatiKind::TranslatingZ, a, y0, v_star, g0, u_range, steps)?;
        Self::horizontal_from_riccati(SolitonFamily::T2Z, a, b, c, sol, v_range)
    }

    fn horizontal_from_riccati(
        family: SolitonFamily,
        a: f64,
        b: f64,
        c: f64,
        sol: RiccatiSolution,
        v_range: (f64, f64),
    ) -> Result<Self, SolitonError> {
        let range = (sol.g.u_start(), sol.g.u_end());
        let nodes = sol.g.us.clone();
        let v_star = sol.v_star;
        Ok(SolitonSpec {
            family,
            a,
            b,
            c,
            f: Arc::new(ClosureProfile::identity()),
            g: Some(Arc::new(SampledProfile(Arc::new(sol.g)))),
            u_range: range,
            v_range,
            v_star: Some(v_star),
            profile_nodes: Some(nodes),
        })
    }

    /// Assemble a spec from arbitrary profile providers. Used by the
    /// falsification harnesses (wrong profiles, mismatched constants);
    /// ruling constants are still validated for horizontal families.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        family: SolitonFamily,
        a: f64,
        b: f64,
        c: f64,
        f: Arc<dyn ProfileFn>,
        g: Option<Arc<dyn ProfileFn>>,
        u_range: (f64, f64),
        v_range: (f64, f64),
        v_star: Option<f64>,
    ) -> Result<Self, SolitonError> {
        if a == 0.0 {
            return Err(SolitonError::ZeroSpeed);
        }
        if u_range.1 <= u_range.0 {
            return Err(SolitonError::BadRange(u_range.0, u_range.1));
        }
        if !family.is_vertical() {
            check_unit_ruling(b, c)?;
            if g.is_none() {
                return Err(SolitonError::MissingField("g-profile", family.name()));
            }
        }
        Ok(SolitonSpec {
            family,
            a,
            b,
            c,
            f,
            g,
            u_range,
            v_range,
            v_star,
            profile_nodes: None,
        })
    }

    /// The immersion family Φᵗ(u, v) with analytic partial derivatives.
    pub fn immersion(&self) -> ImmersionSpec {
        let rect = ParamRect::new(
            self.u_range.0,
            self.u_range.1,
            self.v_range.0,
            self.v_range.1,
        );
        ImmersionSpec::analytic(
            Arc::new(SolitonImmersion {
                family: self.family,
                a: self.a,
                b: self.b,
                c: self.c,
                f: self.f.clone(),
                g: self.g.clone(),
            }),
            rect,
        )
    }

    /// A u-grid of `n` points aligned with the profile solver nodes when the
    /// profile is sampled (so jets see node-exact data), evenly spaced
    /// otherwise.
    pub fn aligned_u_grid(&self, n: usize) -> Vec<f64> {
        assert!(n >= 2);
        match &self.profile_nodes {
            None => linspace(self.u_range.0, self.u_range.1, n),
            Some(nodes) => {
                let m = nodes.len();
                if n >= m {
                    return nodes.clone();
                }
                (0..n).map(|i| nodes[i * (m - 1) / (n - 1)]).collect()
            }
        }
    }

    pub fn v_grid(&self, n: usize) -> Vec<f64> {
        linspace(self.v_range.0, self.v_range.1, n)
    }

    fn profile_pair(&self, u: f64) -> Result<(ProfileJet, Option<ProfileJet>), SolitonError> {
        let fj = self.f.jet(u)?;
        let gj = match &self.g {
            None => None,
            Some(g) => Some(g.jet(u)?),
        };
        Ok((fj, gj))
    }
}

/// Trivial-solution screens for the horizontal families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrivialKind {
    /// f″g′ − f′g″ ≡ 0 on the sampled range, so H ≡ 0 (constant f or g,
    /// and affine relations f = B·g + C, all land here).
    MinimalSurface,
    /// The x-translating family's bracket (C/2·f² + Bvf + 2Bg)′ ≡ 0 for
    /// every v, so the profile ODE's left side vanishes identically.
    StationaryNormalSpeed,
}

/// Detect the trivial screens on a horizontal-family spec by sampling.
/// Returns `None` for vertical families and for genuinely curved data.
pub fn trivial_screen(spec: &SolitonSpec) -> Option<TrivialKind> {
    if spec.family.is_vertical() {
        return None;
    }
    let us = spec.aligned_u_grid(33);
    let mut wronskian: f64 = 0.0;
    let mut bracket_b: f64 = 0.0;
    let mut bracket_rest: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &u in &us {
        let Ok((fj, Some(gj))) = spec.profile_pair(u) else {
            return None;
        };
        wronskian = wronskian.max((fj.d2 * gj.d1 - fj.d1 * gj.d2).abs());
        bracket_b = bracket_b.max((spec.b * fj.d1).abs());
        bracket_rest = bracket_rest.max((spec.c * fj.f * fj.d1 + 2.0 * spec.b * gj.d1).abs());
        scale = scale
            .max(fj.d1.abs())
            .max(fj.d2.abs())
            .max(gj.d1.abs())
            .max(gj.d2.abs());
    }
    let tol = 1e-10 * scale.max(1.0);
    if wronskian < tol {
        return Some(TrivialKind::MinimalSurface);
    }
    if spec.family == SolitonFamily::T2X && bracket_b < tol && bracket_rest < tol {
        return Some(TrivialKind::StationaryNormalSpeed);
    }
    None
}

struct SolitonImmersion {
    family: SolitonFamily,
    a: f64,
    b: f64,
    c: f64,
    f: Arc<dyn ProfileFn>,
    g: Option<Arc<dyn ProfileFn>>,
}

struct BaseJet {
    p: Point,
    du: CoordVector,
    dv: CoordVector,
    duu: CoordVector,
}

const NAN_POINT: Point = Point {
    x: f64::NAN,
    y: f64::NAN,
    z: f64::NAN,
};

impl SolitonImmersion {
    fn base_jet(&self, u: f64, v: f64) -> Option<BaseJet> {
        let fj = self.f.jet(u).ok()?;
        if self.family.is_vertical() {
            Some(BaseJet {
                p: Point::new(u, fj.f, v),
                du: CoordVector::new(1.0, fj.d1, 0.0),
                dv: CoordVector::DZ,
                duu: CoordVector::new(0.0, fj.d2, 0.0),
            })
        } else {
            let gj = self.g.as_ref()?.jet(u).ok()?;
            let (b, c) = (self.b, self.c);
            Some(BaseJet {
                p: Point::new(c * v - b * fj.f, c * fj.f + b * v, gj.f),
                du: CoordVector::new(-b * fj.d1, c * fj.d1, gj.d1),
                dv: CoordVector::new(c, b, 0.0),
                duu: CoordVector::new(-b * fj.d2, c * fj.d2, gj.d2),
            })
        }
    }

    /// Time derivative ∂ₜΦᵗ in coordinates, from differentiating the flow's
    /// closed form at the (t-independent) base point.
    fn time_derivative(&self, base: &Point, t: f64) -> CoordVector {
        let a = self.a;
        match self.family.generator() {
            IsometryGenerator::Rotation => {
                let (s, co) = (a * t).sin_cos();
                CoordVector::new(
                    a * (-base.x * s - base.y * co),
                    a * (base.x * co - base.y * s),
                    0.0,
                )
            }
            IsometryGenerator::TranslateX => CoordVector::new(a, 0.0, a / 2.0 * base.y),
            IsometryGenerator::TranslateY => CoordVector::new(0.0, a, -a / 2.0 * base.x),
            IsometryGenerator::TranslateZ => CoordVector::new(0.0, 0.0, a),
        }
    }
}

fn mat_vec(m: &[[f64; 3]; 3], v: &CoordVector) -> CoordVector {
    CoordVector::new(
        m[0][0] * v.vx + m[0][1] * v.vy + m[0][2] * v.vz,
        m[1][0] * v.vx + m[1][1] * v.vy + m[1][2] * v.vz,
        m[2][0] * v.vx + m[2][1] * v.vy + m[2][2] * v.vz,
    )
}

impl Immersion for SolitonImmersion {
    fn position(&self, u: f64, v: f64, t: f64) -> Point {
        match self.base_jet(u, v) {
            None => NAN_POINT,
            Some(base) => flow_apply(self.family.generator(), self.a * t, &base.p),
        }
    }

    fn partials(&self, u: f64, v: f64, t: f64) -> Option<CoordPartials> {
        let base = self.base_jet(u, v)?;
        let j = flow_jacobian(self.family.generator(), self.a * t);
        Some(CoordPartials {
            du: mat_vec(&j, &base.du),
            dv: mat_vec(&j, &base.dv),
            dt: self.time_derivative(&base.p, t),
            duu: mat_vec(&j, &base.duu),
            duv: CoordVector::ZERO,
            dvv: CoordVector::ZERO,
        })
    }
}

/// Pointwise soliton residuals r(u, v, t) = ⟨∂ₜΦᵗ, Nᵗ⟩ − Hᵗ on a grid,
/// with summary statistics. Failed points (degenerate jets, profile
/// domain edges) are stored as NaN and counted, not fatal.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub t: f64,
    pub us: Vec<f64>,
    pub vs: Vec<f64>,
    /// Row-major (u-major) residual values; NaN marks a failed point.
    pub values: Vec<f64>,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub degenerate_count: usize,
    pub trivial: Option<TrivialKind>,
}

impl ResidualReport {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.vs.len() + j]
    }

    /// Recompute (max, mean, failures) from the stored grid; the stored
    /// statistics must match (bitwise, so all-NaN grids compare too).
    pub fn stats_consistent(&self) -> bool {
        let (max, mean, degen) = stats_of(&self.values);
        max.to_bits() == self.max_abs.to_bits()
            && mean.to_bits() == self.mean_abs.to_bits()
            && degen == self.degenerate_count
    }
}

fn stats_of(values: &[f64]) -> (f64, f64, usize) {
    let mut max = 0.0f64;
    let mut sum = 0.0;
    let mut count = 0usize;
    let mut degen = 0usize;
    for &v in values {
        if v.is_nan() {
            degen += 1;
        } else {
            max = max.max(v.abs());
            sum += v.abs();
            count += 1;
        }
    }
    let mean = if count > 0 {
        sum / count as f64
    } else {
        f64::NAN
    };
    (max, mean, degen)
}

/// Evaluate the residual grid at time `t`. Points are processed in
/// parallel over an indexed iterator, so the row-major (u-major) layout is
/// identical regardless of scheduling.
pub fn soliton_residual(spec: &SolitonSpec, us: &[f64], vs: &[f64], t: f64) -> ResidualReport {
    let imm = spec.immersion();
    let nv = vs.len();
    let values: Vec<f64> = (0..us.len() * nv)
        .into_par_iter()
        .map(|idx| {
            let (u, v) = (us[idx / nv], vs[idx % nv]);
            jet_at(&imm, u, v, t)
                .and_then(|jet| normal_speed_residual(&jet))
                .unwrap_or(f64::NAN)
        })
        .collect();
    let (max_abs, mean_abs, degenerate_count) = stats_of(&values);
    ResidualReport {
        t,
        us: us.to_vec(),
        vs: vs.to_vec(),
        values,
        max_abs,
        mean_abs,
        degenerate_count,
        trivial: trivial_screen(spec),
    }
}

/// The family's governing profile ODE, evaluated literally as
/// left side − right side at (u, v); zero along exact soliton profiles.
///
/// Orientation: each equation is arranged so that the defect has the same
/// sign as the normal-speed residual (see [`residual_ode_equivalence`]);
/// for the rotating vertical family that reads f″ − A(1+f′²)(u²+f²)′.
pub fn family_ode_residual(spec: &SolitonSpec, u: f64, v: f64) -> Result<f64, SolitonError> {
    let (fj, gj) = spec.profile_pair(u)?;
    let a = spec.a;
    match spec.family {
        SolitonFamily::T1X => Ok(fj.d2 + 2.0 * a * fj.d1 * (1.0 + fj.d1 * fj.d1)),
        SolitonFamily::T1Y => Ok(fj.d2 - 2.0 * a * (1.0 + fj.d1 * fj.d1)),
        SolitonFamily::T1R => {
            Ok(fj.d2 - a * (1.0 + fj.d1 * fj.d1) * (2.0 * u + 2.0 * fj.f * fj.d1))
        }
        SolitonFamily::T2R | SolitonFamily::T2X | SolitonFamily::T2Z => {
            let gj = gj.expect("horizontal spec carries g");
            let w = 2.0 * gj.d1 - v * fj.d1;
            let brace = fj.d1 * fj.d1 * (4.0 + fj.f * fj.f) + w * w;
            let rhs = (4.0 + fj.f * fj.f) * (fj.d2 * gj.d1 - fj.d1 * gj.d2);
            let lhs = match spec.family {
                SolitonFamily::T2R => 2.0 * v * a * gj.d1 * brace,
                SolitonFamily::T2X => {
                    -a * brace * (spec.c * fj.f * fj.d1 + spec.b * v * fj.d1 + 2.0 * spec.b * gj.d1)
                }
                SolitonFamily::T2Z => -2.0 * a * fj.d1 * brace,
                _ => unreachable!(),
            };
            Ok(lhs - rhs)
        }
    }
}

/// Side-by-side comparison of the geometric residual and the profile-ODE
/// defect at one point.
#[derive(Debug, Clone, Copy)]
pub struct EquivalenceSample {
    /// r = ⟨∂ₜΦ, N⟩ − H through the surface pipeline.
    pub residual: f64,
    /// Left − right of the family's profile ODE.
    pub ode_mismatch: f64,
    /// ode_mismatch / residual; NaN when the residual is below 1e-14.
    pub ratio: f64,
}

/// Evaluate both the geometric residual and the profile-ODE defect
/// at (u, v, t). Along the soliton families the two vanish together; away
/// from solutions their ratio is a positive, t-independent conversion
/// factor (2(1+f′²)^{3/2} for vertical families, 8(EG−F²)^{3/2} for
/// horizontal ones).
pub fn residual_ode_equivalence(
    spec: &SolitonSpec,
    u: f64,
    v: f64,
    t: f64,
) -> Result<EquivalenceSample, SolitonError> {
    let imm = spec.immersion();
    let jet = jet_at(&imm, u, v, t)?;
    let residual = normal_speed_residual(&jet)?;
    let ode_mismatch = family_ode_residual(spec, u, v)?;
    let ratio = if residual.abs() > 1e-14 {
        ode_mismatch / residual
    } else {
        f64::NAN
    };
    Ok(EquivalenceSample {
        residual,
        ode_mismatch,
        ratio,
    })
}

fn default_steps_for(range: (f64, f64)) -> usize {
    (((range.1 - range.0) / 1e-3).ceil() as usize).max(4)
}

/// Serialized description of a soliton spec.
///
/// Field semantics per family:
///
/// - `T1R`: `A`, `B` (profile ODE constants), `f0` = f(u₀); `D`, `g0`,
///   `vStar` unused.
/// - `T1X`: `A`, `D` (> 0), `B` (additive profile constant).
/// - `T1Y`: `A`, `B`, `C` (log-argument constants, not both zero).
/// - `T2R`/`T2X`/`T2Z`: `A`, ruling constants `B`, `C` with B²+C²=1
///   (forced to 0, 1 for `T2X`), `f0` = y(u₀) for the Riccati reduction,
///   `g0` = g(u₀), `vStar` = reconstruction v★.
///
/// `steps` defaults to a 1e-3 step over `uRange`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolitonSpecFile {
    pub family: SolitonFamily,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B", default)]
    pub b: f64,
    #[serde(rename = "C", default)]
    pub c: f64,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g0: Option<f64>,
    #[serde(rename = "vStar", default, skip_serializing_if = "Option::is_none")]
    pub v_star: Option<f64>,
    #[serde(rename = "uRange")]
    pub u_range: [f64; 2],
    #[serde(rename = "vRange")]
    pub v_range: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
}

impl SolitonSpecFile {
    pub fn build(&self) -> Result<SolitonSpec, SolitonError> {
        let u_range = (self.u_range[0], self.u_range[1]);
        let v_range = (self.v_range[0], self.v_range[1]);
        let steps = self.steps.unwrap_or_else(|| default_steps_for(u_range));
        match self.family {
            SolitonFamily::T1R => SolitonSpec::t1r(
                self.a,
                self.b,
                self.f0.unwrap_or(0.0),
                u_range,
                v_range,
                steps,
            ),
            SolitonFamily::T1X => {
                let d = self.d.ok_or(SolitonError::MissingField("D", "T1X"))?;
                SolitonSpec::t1x(self.a, d, self.b, u_range, v_range)
            }
            SolitonFamily::T1Y => SolitonSpec::t1y(self.a, self.b, self.c, u_range, v_range),
            SolitonFamily::T2R => SolitonSpec::t2r(
                self.a,
                self.b,
                self.c,
                self.f0.unwrap_or(0.0),
                self.g0.unwrap_or(0.0),
                self.v_star.ok_or(SolitonError::MissingVStar)?,
                u_range,
                v_range,
                steps,
            ),
            SolitonFamily::T2X => {
                if !(self.b == 0.0 && self.c == 1.0) {
                    return Err(SolitonError::UnsupportedRuling);
                }
                SolitonSpec::t2x(
                    self.a,
                    self.f0.unwrap_or(0.0),
                    self.g0.unwrap_or(0.0),
                    self.v_star.ok_or(SolitonError::MissingVStar)?,
                    u_range,
                    v_range,
                    steps,
                )
            }
            SolitonFamily::T2Z => SolitonSpec::t2z(
                self.a,
                self.b,
                self.c,
                self.f0.unwrap_or(0.0),
                self.g0.unwrap_or(0.0),
                self.v_star.ok_or(SolitonError::MissingVStar)?,
                u_range,
                v_range,
                steps,
            ),
        }
    }
}
