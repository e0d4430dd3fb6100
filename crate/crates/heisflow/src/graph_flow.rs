//! Direct mean curvature flow for vertical-ruled graph surfaces
//! Φ = (u, f(u, t), v).
//!
//! For such a graph the normal is N = (f′E₁ − E₂)/√(1+f′²), the time
//! velocity is ∂ₜΦ = fₜ·∂y, and ⟨∂ₜΦ, N⟩ = −fₜ/√(1+f′²); equating with
//! H = −f″/(2(1+f′²)^{3/2}) reduces the flow to the scalar PDE
//!
//! ```text
//! fₜ = f″ / (2(1 + f′²))
//! ```
//!
//! (both sides carry the minus sign from this orientation of N; it cancels).
//! The solver below is a plain explicit central-difference scheme — the
//! point is an independent cross-check of the soliton families against
//! genuine flow, not performance.

use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("time step {dt:e} violates the explicit stability bound {bound:e}")]
    StabilityViolation { dt: f64, bound: f64 },
    #[error("non-finite value at step {step} (t = {t})")]
    NonFinite { step: usize, t: f64 },
    #[error("profile grids do not match")]
    GridMismatch,
    #[error("profile needs at least 3 nodes, got {0}")]
    GridTooSmall(usize),
    #[error("grid must be uniform")]
    NonUniformGrid,
    #[error("final time must be positive, got {0}")]
    NonPositiveTime(f64),
}

/// Boundary handling during evolution.
#[derive(Clone)]
pub enum BoundaryMode {
    /// Hold the initial boundary values fixed.
    Fixed,
    /// Pin the two boundary nodes to an external solution u, t ↦ f(u, t);
    /// isolates interior PDE accuracy from boundary artifacts in
    /// cross-check runs.
    DirichletOracle(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for BoundaryMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryMode::Fixed => f.write_str("Fixed"),
            BoundaryMode::DirichletOracle(_) => f.write_str("DirichletOracle(..)"),
        }
    }
}

/// A graph profile sampled on a uniform u-grid at one instant.
#[derive(Debug, Clone)]
pub struct FlowProfile {
    pub us: Vec<f64>,
    pub f: Vec<f64>,
    pub t: f64,
    pub boundary: BoundaryMode,
}

impl FlowProfile {
    pub fn new(us: Vec<f64>, f: Vec<f64>, boundary: BoundaryMode) -> Result<Self, FlowError> {
        if us.len() < 3 {
            return Err(FlowError::GridTooSmall(us.len()));
        }
        if us.len() != f.len() {
            return Err(FlowError::GridMismatch);
        }
        let h = us[1] - us[0];
        for w in us.windows(2) {
            if ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0) {
                return Err(FlowError::NonUniformGrid);
            }
        }
        Ok(FlowProfile {
            us,
            f,
            t: 0.0,
            boundary,
        })
    }

    /// Sample u ↦ f(u, 0) on `n` nodes over [u0, u1].
    pub fn sample(
        u0: f64,
        u1: f64,
        n: usize,
        f: impl Fn(f64) -> f64,
        boundary: BoundaryMode,
    ) -> Result<Self, FlowError> {
        let us = crate::surface::linspace(u0, u1, n);
        let fs = us.iter().map(|&u| f(u)).collect();
        FlowProfile::new(us, fs, boundary)
    }

    pub fn dx(&self) -> f64 {
        self.us[1] - self.us[0]
    }
}

/// min over interior nodes of (1 + f′²); sets the stable step size.
fn min_one_plus_slope_sq(f: &[f64], dx: f64) -> f64 {
    let mut min = f64::INFINITY;
    for i in 1..f.len() - 1 {
        let fp = (f[i + 1] - f[i - 1]) / (2.0 * dx);
        min = min.min(1.0 + fp * fp);
    }
    min
}

/// Time step selection for [`evolve`].
#[derive(Debug, Clone, Copy)]
pub enum StepSize {
    /// Fixed dt; rejected up front if it exceeds dx² (the bound at
    /// diffusion coefficient ½).
    Fixed(f64),
    /// dt = 0.2·dx²·min(1 + f′²), refreshed every step.
    Auto,
}

/// Evolve fₜ = f″/(2(1+f′²)) to `t_end` with explicit central differences.
///
/// Snapshots: the initial profile, every `record_every`-th step when
/// nonzero, and the final profile at exactly `t_end` (last step truncated).
pub fn evolve(
    profile0: &FlowProfile,
    step: StepSize,
    t_end: f64,
    record_every: usize,
) -> Result<Vec<FlowProfile>, FlowError> {
    if t_end <= 0.0 {
        return Err(FlowError::NonPositiveTime(t_end));
    }
    let dx = profile0.dx();
    if let StepSize::Fixed(dt) = step {
        let bound = dx * dx;
        if dt > bound {
            return Err(FlowError::StabilityViolation { dt, bound });
        }
    }
    let n = profile0.us.len();
    let mut f = profile0.f.clone();
    let mut t = profile0.t;
    let target = profile0.t + t_end;
    let mut out = vec![FlowProfile {
        t,
        f: f.clone(),
        ..clone_grid(profile0)
    }];
    let mut next = vec![0.0; n];
    let mut step_index = 0usize;
    while t < target - 1e-15 {
        let dt_nominal = match step {
            StepSize::Fixed(dt) => dt,
            StepSize::Auto => 0.2 * dx * dx * min_one_plus_slope_sq(&f, dx),
        };
        let dt = dt_nominal.min(target - t);
        for i in 1..n - 1 {
            let fp = (f[i + 1] - f[i - 1]) / (2.0 * dx);
            let fpp = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (dx * dx);
            next[i] = f[i] + dt * fpp / (2.0 * (1.0 + fp * fp));
        }
        let t_new = t + dt;
        match &profile0.boundary {
            BoundaryMode::Fixed => {
                next[0] = f[0];
                next[n - 1] = f[n - 1];
            }
            BoundaryMode::DirichletOracle(oracle) => {
                next[0] = oracle(profile0.us[0], t_new);
                next[n - 1] = oracle(profile0.us[n - 1], t_new);
            }
        }
        std::mem::swap(&mut f, &mut next);
        t = t_new;
        step_index += 1;
        if f.iter().any(|x| !x.is_finite()) {
            return Err(FlowError::NonFinite {
                step: step_index,
                t,
            });
        }
        if record_every != 0 && step_index.is_multiple_of(record_every) && t < target - 1e-15 {
            out.push(FlowProfile {
                t,
                f: f.clone(),
                ..clone_grid(profile0)
            });
        }
    }
    out.push(FlowProfile {
        t,
        f,
        ..clone_grid(profile0)
    });
    Ok(out)
}

fn clone_grid(p: &FlowProfile) -> FlowProfile {
    FlowProfile {
        us: p.us.clone(),
        f: Vec::new(),
        t: 0.0,
        boundary: p.boundary.clone(),
    }
}

/// Interior L∞ distance between an evolved profile and a reference
/// solution u, t ↦ f(u, t).
pub fn compare_to_oracle(evolved: &FlowProfile, oracle: impl Fn(f64, f64) -> f64) -> f64 {
    let n = evolved.us.len();
    let mut worst: f64 = 0.0;
    for i in 1..n - 1 {
        worst = worst.max((evolved.f[i] - oracle(evolved.us[i], evolved.t)).abs());
    }
    worst
}

/// Interior L∞ distance between two profiles on the same grid.
pub fn linf_diff(a: &FlowProfile, b: &FlowProfile) -> Result<f64, FlowError> {
    if a.us.len() != b.us.len()
        || a.us
            .iter()
            .zip(&b.us)
            .any(|(x, y)| (x - y).abs() > 1e-12 * x.abs().max(1.0))
    {
        return Err(FlowError::GridMismatch);
    }
    let n = a.us.len();
    let mut worst: f64 = 0.0;
    for i in 1..n - 1 {
        worst = worst.max((a.f[i] - b.f[i]).abs());
    }
    Ok(worst)
}

/// The translating graph solution with speed A: f(u, t) = −(1/2A)·ln cos(2Au) + A·t.
///
/// Its slice at t = 0 is the y-translating vertical soliton's profile with
/// C = 0, B = −1, and it solves the graph PDE exactly (fₜ = A on the nose).
/// Defined for |2Au| < π/2.
pub fn grim_reaper_solution(a: f64) -> impl Fn(f64, f64) -> f64 + Send + Sync + Copy {
    move |u: f64, t: f64| -(2.0 * a * u).cos().ln() / (2.0 * a) + a * t
}

/// Initial Grim Reaper profile on [−u_max, u_max] with oracle Dirichlet
/// boundaries, ready for cross-check runs.
pub fn grim_reaper_profile(a: f64, u_max: f64, dx: f64) -> Result<FlowProfile, FlowError> {
    let n = ((2.0 * u_max) / dx).round() as usize + 1;
    let oracle = grim_reaper_solution(a);
    FlowProfile::sample(
        -u_max,
        u_max,
        n,
        move |u| oracle(u, 0.0),
        BoundaryMode::DirichletOracle(Arc::new(oracle)),
    )
}
