//! Profile functions for the soliton families: closed forms where the
//! defining ODE integrates explicitly, fixed-step RK4 solutions otherwise.
//!
//! A profile is a scalar function together with its first two derivatives.
//! For sampled (RK4) profiles the first derivative comes from the ODE's
//! right-hand side evaluated on the samples, while the second derivative is
//! a five-point finite difference of the sampled first derivative — never
//! the chain rule through the ODE itself, so that downstream residual
//! checks measure something rather than restating the construction.

use std::sync::Arc;

use super::SolitonError;

/// Value and first two derivatives of a profile at a parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileJet {
    pub f: f64,
    pub d1: f64,
    pub d2: f64,
}

/// A scalar profile u ↦ (f, f′, f″).
pub trait ProfileFn: Send + Sync {
    fn jet(&self, u: f64) -> Result<ProfileJet, SolitonError>;
}

/// Profile defined by explicit closures; the main vehicle for tests and
/// falsification harnesses.
#[derive(Clone)]
pub struct ClosureProfile {
    pub f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub d1: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub d2: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl ClosureProfile {
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ClosureProfile {
            f: Arc::new(f),
            d1: Arc::new(d1),
            d2: Arc::new(d2),
        }
    }

    /// The identity profile f(u) = u.
    pub fn identity() -> Self {
        ClosureProfile::new(|u| u, |_| 1.0, |_| 0.0)
    }

    pub fn constant(c: f64) -> Self {
        ClosureProfile::new(move |_| c, |_| 0.0, |_| 0.0)
    }
}

impl ProfileFn for ClosureProfile {
    fn jet(&self, u: f64) -> Result<ProfileJet, SolitonError> {
        Ok(ProfileJet {
            f: (self.f)(u),
            d1: (self.d1)(u),
            d2: (self.d2)(u),
        })
    }
}

/// Closed-form profile of the x-translating vertical family:
///
/// ```text
/// f(u) = ±(1/2A)·arctan(√(D·e^{4Au} − 1)) + B,   D·e^{4Au} > 1,
/// f′(u) = ±(D·e^{4Au} − 1)^{−1/2},
/// f″(u) = ∓2A·D·e^{4Au}·(D·e^{4Au} − 1)^{−3/2},
/// ```
///
/// which solves y′ + 2Ay(1 + y²) = 0 for y = f′.
#[derive(Debug, Clone, Copy)]
pub struct TranslatorXProfile {
    pub a: f64,
    pub d: f64,
    pub b: f64,
    pub positive_branch: bool,
}

impl TranslatorXProfile {
    pub fn new(a: f64, d: f64, b: f64, positive_branch: bool) -> Result<Self, SolitonError> {
        if a == 0.0 {
            return Err(SolitonError::ZeroSpeed);
        }
        if d <= 0.0 {
            return Err(SolitonError::NonPositiveD(d));
        }
        Ok(TranslatorXProfile {
            a,
            d,
            b,
            positive_branch,
        })
    }

    /// Lower endpoint of the maximal domain: u with D·e^{4Au} = 1 is
    /// excluded; for A > 0 the domain is (u*, ∞), for A < 0 it is (−∞, u*).
    pub fn domain_boundary(&self) -> f64 {
        -(self.d.ln()) / (4.0 * self.a)
    }

    pub fn contains(&self, u: f64) -> bool {
        self.d * (4.0 * self.a * u).exp() > 1.0
    }
}

impl ProfileFn for TranslatorXProfile {
    fn jet(&self, u: f64) -> Result<ProfileJet, SolitonError> {
        let e = self.d * (4.0 * self.a * u).exp();
        if e <= 1.0 {
            return Err(SolitonError::ProfileDomain {
                u,
                why: format!("D·e^(4Au) = {e} must exceed 1"),
            });
        }
        let sign = if self.positive_branch { 1.0 } else { -1.0 };
        let root = (e - 1.0).sqrt();
        Ok(ProfileJet {
            f: sign / (2.0 * self.a) * root.atan() + self.b,
            d1: sign / root,
            d2: -sign * 2.0 * self.a * e / ((e - 1.0) * root),
        })
    }
}

/// Closed-form profile of the y-translating vertical family (the Grim
/// Reaper family):
///
/// ```text
/// f(u) = −(1/2A)·log[C·sin(2Au) − B·cos(2Au)],
/// ```
///
/// defined where h(u) = C·sin(2Au) − B·cos(2Au) > 0; solves
/// f″ − 2A(1 + f′²) = 0. The quotient-rule derivatives are used as written
/// (f″ = 2A + h′²/(2A·h²)); the agreement with 2A(1+f′²) is asserted by
/// tests, not baked in.
#[derive(Debug, Clone, Copy)]
pub struct GrimProfile {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl GrimProfile {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, SolitonError> {
        if a == 0.0 {
            return Err(SolitonError::ZeroSpeed);
        }
        if b == 0.0 && c == 0.0 {
            return Err(SolitonError::DegenerateProfileConstants);
        }
        Ok(GrimProfile { a, b, c })
    }

    fn h(&self, u: f64) -> (f64, f64) {
        let (s, co) = (2.0 * self.a * u).sin_cos();
        (
            self.c * s - self.b * co,
            2.0 * self.a * (self.c * co + self.b * s),
        )
    }
}

impl ProfileFn for GrimProfile {
    fn jet(&self, u: f64) -> Result<ProfileJet, SolitonError> {
        let (h, hp) = self.h(u);
        if h <= 0.0 {
            return Err(SolitonError::ProfileDomain {
                u,
                why: format!("C·sin(2Au) − B·cos(2Au) = {h} must be positive"),
            });
        }
        let a2 = 2.0 * self.a;
        Ok(ProfileJet {
            f: -h.ln() / a2,
            d1: -hp / (a2 * h),
            d2: a2 + hp * hp / (a2 * h * h),
        })
    }
}

/// How a sampled profile was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileMethod {
    ClosedForm,
    Rk4,
}

/// A profile sampled on a uniform grid, with derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSolution {
    pub us: Vec<f64>,
    pub f: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
    pub method: ProfileMethod,
    /// Set when integration stopped early (tan pole margin or blow-up cap);
    /// the samples then cover only `[us[0], us.last()]`.
    pub truncated: bool,
}

impl ProfileSolution {
    pub fn step(&self) -> f64 {
        self.us[1] - self.us[0]
    }

    pub fn u_start(&self) -> f64 {
        self.us[0]
    }

    pub fn u_end(&self) -> f64 {
        *self.us.last().unwrap()
    }

    /// Max |FD(f) − d1| over the grid; the derivative-consistency defect.
    pub fn derivative_consistency(&self) -> f64 {
        let fd = fd_derivative_5pt(&self.f, self.step());
        fd.iter()
            .zip(&self.d1)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Five-point finite-difference first derivative on a uniform grid
/// (central in the interior, one-sided at the two nodes on each end).
/// Needs at least 5 samples.
pub fn fd_derivative_5pt(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 5, "five-point stencil needs at least 5 samples");
    let v = values;
    let mut out = vec![0.0; n];
    out[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h);
    out[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / (12.0 * h);
    for i in 2..n - 2 {
        out[i] = (-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]) / (12.0 * h);
    }
    out[n - 2] = (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5])
        / (12.0 * h);
    out[n - 1] = (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4]
        + 3.0 * v[n - 5])
        / (12.0 * h);
    out
}

/// Margin on |cos θ| below which the rotating-family integration stops
/// rather than chase the tan pole.
pub const POLE_MARGIN: f64 = 1e-3;
/// Blow-up cap for the Riccati solutions.
pub const RICCATI_CAP: f64 = 1e6;

fn rk4_scalar(
    rhs: &impl Fn(f64, f64) -> f64,
    u0: f64,
    f0: f64,
    h: f64,
    steps: usize,
    stop: &impl Fn(f64, f64) -> bool,
) -> (Vec<f64>, Vec<f64>, bool) {
    let mut us = Vec::with_capacity(steps + 1);
    let mut fs = Vec::with_capacity(steps + 1);
    let mut f = f0;
    us.push(u0);
    fs.push(f);
    let mut truncated = false;
    for i in 0..steps {
        let u = u0 + i as f64 * h;
        if stop(u, f) {
            truncated = true;
            break;
        }
        let k1 = rhs(u, f);
        let k2 = rhs(u + h / 2.0, f + h / 2.0 * k1);
        let k3 = rhs(u + h / 2.0, f + h / 2.0 * k2);
        let k4 = rhs(u + h, f + h * k3);
        f += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let u_next = u0 + (i + 1) as f64 * h;
        if !f.is_finite() || stop(u_next, f) {
            truncated = true;
            break;
        }
        us.push(u_next);
        fs.push(f);
    }
    (us, fs, truncated)
}

/// RK4 solution of the rotating vertical family's profile ODE
/// f′(u) = tan[A(u² + f²) + B] from f(u₀) = f0 over [u₀, u₁].
///
/// Integration stops (truncated solution) when |cos(A(u²+f²)+B)| drops
/// below [`POLE_MARGIN`]; a pole at the start point is an error.
pub fn t1r_profile(
    a: f64,
    b: f64,
    f0: f64,
    u_range: (f64, f64),
    steps: usize,
) -> Result<ProfileSolution, SolitonError> {
    if a == 0.0 {
        return Err(SolitonError::ZeroSpeed);
    }
    if u_range.1 <= u_range.0 {
        return Err(SolitonError::BadRange(u_range.0, u_range.1));
    }
    if steps < 4 {
        return Err(SolitonError::TooFewSteps(steps));
    }
    let theta = move |u: f64, f: f64| a * (u * u + f * f) + b;
    if theta(u_range.0, f0).cos().abs() < POLE_MARGIN {
        return Err(SolitonError::PoleAtStart(u_range.0));
    }
    let h = (u_range.1 - u_range.0) / steps as f64;
    let rhs = move |u: f64, f: f64| theta(u, f).tan();
    let stop = move |u: f64, f: f64| theta(u, f).cos().abs() < POLE_MARGIN;
    let (us, fs, truncated) = rk4_scalar(&rhs, u_range.0, f0, h, steps, &stop);
    if us.len() < 5 {
        return Err(SolitonError::PoleAtStart(u_range.0));
    }
    let d1: Vec<f64> = us.iter().zip(&fs).map(|(&u, &f)| rhs(u, f)).collect();
    let d2 = fd_derivative_5pt(&d1, h);
    Ok(ProfileSolution {
        us,
        f: fs,
        d1,
        d2,
        method: ProfileMethod::Rk4,
        truncated,
    })
}

/// Which Riccati reduction to integrate, for the horizontal families with
/// f(u) = u and the substitution y = 2g′ − v★:
///
/// - `RotatingAtV`: y′ = −2·v★·A·(y + v★)·[y²/(4+u²) + 1] (rotating family,
///   valid at the single v = v★ used for the reduction),
/// - `TranslatingX`: y′ = 2Au·[y²/(4+u²) + 1] (x-translating family with
///   B = 0, C = 1),
/// - `TranslatingZ`: y′ = 4A·[y²/(4+u²) + 1] (vertically translating
///   family).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiccatiKind {
    RotatingAtV,
    TranslatingX,
    TranslatingZ,
}

/// Result of a Riccati integration: the y samples and the reconstructed g.
#[derive(Debug, Clone, PartialEq)]
pub struct RiccatiSolution {
    pub y: ProfileSolution,
    pub g: ProfileSolution,
    pub v_star: f64,
}

/// Fixed-step RK4 integration of the selected Riccati reduction, plus
/// reconstruction of g from g′ = (y + v★)/2 by the trapezoid rule with
/// g(u₀) = g0. g″ is a five-point finite difference of the y samples over
/// two, so it stays independent of the integrated right-hand side.
pub fn riccati_solve(
    kind: RiccatiKind,
    a: f64,
    y0: f64,
    v_star: f64,
    g0: f64,
    u_range: (f64, f64),
    steps: usize,
) -> Result<RiccatiSolution, SolitonError> {
    if a == 0.0 {
        return Err(SolitonError::ZeroSpeed);
    }
    if u_range.1 <= u_range.0 {
        return Err(SolitonError::BadRange(u_range.0, u_range.1));
    }
    if steps < 4 {
        return Err(SolitonError::TooFewSteps(steps));
    }
    let h = (u_range.1 - u_range.0) / steps as f64;
    let rhs = move |u: f64, y: f64| -> f64 {
        let bracket = y * y / (4.0 + u * u) + 1.0;
        match kind {
            RiccatiKind::RotatingAtV => -2.0 * v_star * a * (y + v_star) * bracket,
            RiccatiKind::TranslatingX => 2.0 * a * u * bracket,
            RiccatiKind::TranslatingZ => 4.0 * a * bracket,
        }
    };
    let stop = |_u: f64, y: f64| y.abs() > RICCATI_CAP;
    let (us, ys, truncated) = rk4_scalar(&rhs, u_range.0, y0, h, steps, &stop);
    if us.len() < 5 {
        return Err(SolitonError::ProfileDomain {
            u: u_range.0,
            why: "Riccati solution blows up immediately".into(),
        });
    }
    let y_d1: Vec<f64> = us.iter().zip(&ys).map(|(&u, &y)| rhs(u, y)).collect();
    let y_d2 = fd_derivative_5pt(&y_d1, h);

    // g′ = (y + v★)/2, g by trapezoid, g″ = (FD of y)/2.
    let g_d1: Vec<f64> = ys.iter().map(|y| (y + v_star) / 2.0).collect();
    let mut g = Vec::with_capacity(us.len());
    let mut acc = g0;
    g.push(acc);
    for i in 1..us.len() {
        acc += 0.5 * h * (g_d1[i - 1] + g_d1[i]);
        g.push(acc);
    }
    let g_d2: Vec<f64> = fd_derivative_5pt(&ys, h).iter().map(|d| d / 2.0).collect();

    let y_sol = ProfileSolution {
        us: us.clone(),
        f: ys,
        d1: y_d1,
        d2: y_d2,
        method: ProfileMethod::Rk4,
        truncated,
    };
    let g_sol = ProfileSolution {
        us,
        f: g,
        d1: g_d1,
        d2: g_d2,
        method: ProfileMethod::Rk4,
        truncated,
    };
    Ok(RiccatiSolution {
        y: y_sol,
        g: g_sol,
        v_star,
    })
}

/// [`ProfileFn`] view of a sampled solution.
///
/// Queries within 1e-9 of a grid node return the node data unchanged (the
/// intended use: evaluate on grids aligned with the solver nodes, see
/// `SolitonSpec::aligned_u_grid`); elsewhere the value and first derivative
/// come from cubic Hermite interpolation and the second derivative from
/// linear interpolation.
#[derive(Debug, Clone)]
pub struct SampledProfile(pub Arc<ProfileSolution>);

impl ProfileFn for SampledProfile {
    fn jet(&self, u: f64) -> Result<ProfileJet, SolitonError> {
        let sol = &self.0;
        let h = sol.step();
        let n = sol.us.len();
        let pos = (u - sol.us[0]) / h;
        if pos < -1e-9 || pos > (n - 1) as f64 + 1e-9 {
            return Err(SolitonError::ProfileDomain {
                u,
                why: format!("outside sampled range [{}, {}]", sol.u_start(), sol.u_end()),
            });
        }
        let nearest = pos.round() as usize;
        let nearest = nearest.min(n - 1);
        if (u - sol.us[nearest]).abs() < 1e-9 {
            return Ok(ProfileJet {
                f: sol.f[nearest],
                d1: sol.d1[nearest],
                d2: sol.d2[nearest],
            });
        }
        let i = (pos.floor() as usize).min(n - 2);
        let s = (u - sol.us[i]) / h;
        let (f0, f1) = (sol.f[i], sol.f[i + 1]);
        let (d0, d1) = (sol.d1[i], sol.d1[i + 1]);
        let s2 = s * s;
        let s3 = s2 * s;
        let value = f0 * (2.0 * s3 - 3.0 * s2 + 1.0)
            + h * d0 * (s3 - 2.0 * s2 + s)
            + f1 * (-2.0 * s3 + 3.0 * s2)
            + h * d1 * (s3 - s2);
        let deriv = (f0 * (6.0 * s2 - 6.0 * s)
            + h * d0 * (3.0 * s2 - 4.0 * s + 1.0)
            + f1 * (-6.0 * s2 + 6.0 * s)
            + h * d1 * (3.0 * s2 - 2.0 * s))
            / h;
        let second = sol.d2[i] * (1.0 - s) + sol.d2[i + 1] * s;
        Ok(ProfileJet {
            f: value,
            d1: deriv,
            d2: second,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translator_profile_slope_at_zero() {
        let p = TranslatorXProfile::new(1.0, 2.0, 0.0, true).unwrap();
        let jet = p.jet(0.0).unwrap();
        assert!((jet.d1 - 1.0).abs() < 1e-15, "f'(0) = {}", jet.d1);
    }

    #[test]
    fn translator_profile_solves_first_order_ode() {
        // y′ + 2Ay(1+y²) = 0 with y = f′.
        let p = TranslatorXProfile::new(0.8, 1.7, 0.3, true).unwrap();
        let h = 1e-5;
        for i in 0..40 {
            let u = 0.1 + 0.02 * i as f64;
            let jet = p.jet(u).unwrap();
            let yp_fd = (p.jet(u + h).unwrap().d1 - p.jet(u - h).unwrap().d1) / (2.0 * h);
            assert!((jet.d2 - yp_fd).abs() < 1e-5, "d2 vs FD at u={u}");
            let res = jet.d2 + 2.0 * p.a * jet.d1 * (1.0 + jet.d1 * jet.d1);
            assert!(res.abs() < 1e-8, "ODE residual {res} at u={u}");
        }
    }

    #[test]
    fn translator_profile_b_only_shifts() {
        let p0 = TranslatorXProfile::new(1.0, 2.0, 0.0, true).unwrap();
        let p1 = TranslatorXProfile::new(1.0, 2.0, 1.5, true).unwrap();
        for &u in &[0.0, 0.4, 1.0] {
            let j0 = p0.jet(u).unwrap();
            let j1 = p1.jet(u).unwrap();
            assert!((j1.f - j0.f - 1.5).abs() < 1e-15);
            assert_eq!(j1.d1, j0.d1);
            assert_eq!(j1.d2, j0.d2);
        }
    }

    #[test]
    fn translator_profile_domain() {
        let p = TranslatorXProfile::new(1.0, 2.0, 0.0, true).unwrap();
        assert!(p.jet(-1.0).is_err()); // 2e⁻⁴ < 1
        assert!(p.contains(0.0));
        assert!(!p.contains(p.domain_boundary()));
        assert!(TranslatorXProfile::new(1.0, -1.0, 0.0, true).is_err());
        assert!(TranslatorXProfile::new(0.0, 2.0, 0.0, true).is_err());
    }

    #[test]
    fn grim_profile_is_log_sec() {
        // A = ½, C = 0, B = −1: f(u) = −log cos u, the Grim Reaper profile.
        let p = GrimProfile::new(0.5, -1.0, 0.0).unwrap();
        for &u in &[-1.2, -0.4, 0.0, 0.9] {
            let jet = p.jet(u).unwrap();
            assert!((jet.f - -(u.cos().ln())).abs() < 1e-14);
            assert!((jet.d1 - u.tan()).abs() < 1e-13);
            let res = jet.d2 - (1.0 + jet.d1 * jet.d1); // f″ = 1 + f′² here (2A = 1)
            assert!(res.abs() < 1e-12, "residual {res} at u={u}");
        }
        // peak of h: f′ vanishes there
        assert!(p.jet(0.0).unwrap().d1.abs() < 1e-15);
        // outside the domain: cos u ≤ 0
        assert!(p.jet(2.0).is_err());
    }

    #[test]
    fn grim_profile_solves_its_ode_for_random_params() {
        for (a, b, c) in [(0.5, -1.0, 0.3), (1.2, -0.4, 0.9), (-0.7, 0.8, 0.6)] {
            let p = GrimProfile::new(a, b, c).unwrap();
            // find a point in the domain by scanning
            let mut u0 = None;
            for i in -200..200 {
                let u = i as f64 * 0.01;
                if p.jet(u).is_ok() {
                    u0 = Some(u);
                    break;
                }
            }
            let u0 = u0.expect("domain nonempty");
            for k in 0..10 {
                let u = u0 + 0.01 * k as f64;
                if let Ok(jet) = p.jet(u) {
                    let res = jet.d2 - 2.0 * a * (1.0 + jet.d1 * jet.d1);
                    assert!(
                        res.abs() < 1e-8,
                        "residual {res} at u={u} for ({a},{b},{c})"
                    );
                }
            }
        }
    }

    #[test]
    fn t1r_initial_slopes() {
        let sol = t1r_profile(0.7, 0.0, 0.0, (0.0, 0.5), 500).unwrap();
        assert_eq!(sol.d1[0], 0.0); // tan(0)
        let sol = t1r_profile(1.0, std::f64::consts::FRAC_PI_4, 0.0, (0.0, 0.3), 300).unwrap();
        assert!((sol.d1[0] - 1.0).abs() < 1e-15); // tan(π/4)
    }

    #[test]
    fn t1r_detects_pole_at_start() {
        // A(u²+f²)+B = π/2 at the start
        let err = t1r_profile(1.0, std::f64::consts::FRAC_PI_2, 0.0, (0.0, 1.0), 100);
        assert!(matches!(err, Err(SolitonError::PoleAtStart(_))));
    }

    #[test]
    fn t1r_truncates_before_pole() {
        // With A = 1, B = 0, f0 = 0 the phase A(u²+f²) reaches π/2 near
        // u ≈ 1.2; a range beyond that must truncate, not blow up.
        let sol = t1r_profile(1.0, 0.0, 0.0, (0.0, 2.0), 2000).unwrap();
        assert!(sol.truncated);
        assert!(sol.u_end() < 2.0);
        assert!(sol.f.iter().all(|f| f.is_finite()));
    }

    #[test]
    fn t1r_derivative_consistency() {
        let sol = t1r_profile(1.0, 0.0, 0.0, (0.0, 0.8), 800).unwrap();
        assert!(
            sol.derivative_consistency() < 1e-6,
            "{}",
            sol.derivative_consistency()
        );
    }

    #[test]
    fn riccati_slopes_at_zero() {
        let a = 0.3;
        let y0 = 0.8;
        let sol =
            riccati_solve(RiccatiKind::TranslatingZ, a, y0, 0.5, 0.0, (0.0, 0.5), 500).unwrap();
        let expect = 4.0 * a * (y0 * y0 / 4.0 + 1.0);
        assert!((sol.y.d1[0] - expect).abs() < 1e-15);
        let sol =
            riccati_solve(RiccatiKind::TranslatingX, a, y0, 0.5, 0.0, (0.0, 0.5), 500).unwrap();
        assert_eq!(sol.y.d1[0], 0.0); // 2Au factor at u = 0
    }

    #[test]
    fn riccati_step_halving_agrees() {
        let coarse = riccati_solve(
            RiccatiKind::TranslatingZ,
            0.25,
            0.2,
            0.7,
            0.1,
            (0.0, 1.0),
            1000,
        )
        .unwrap();
        let fine = riccati_solve(
            RiccatiKind::TranslatingZ,
            0.25,
            0.2,
            0.7,
            0.1,
            (0.0, 1.0),
            2000,
        )
        .unwrap();
        let mut worst: f64 = 0.0;
        for (i, &u) in coarse.y.us.iter().enumerate() {
            let j = fine
                .y
                .us
                .iter()
                .position(|&x| (x - u).abs() < 1e-12)
                .unwrap();
            worst = worst.max((coarse.y.f[i] - fine.y.f[j]).abs());
        }
        assert!(worst < 1e-8, "Richardson defect {worst}");
    }

    #[test]
    fn riccati_blowup_truncates_with_flag() {
        // strong A over a long range forces blow-up of y′ = 4A(y²/(4+u²)+1)
        let sol = riccati_solve(
            RiccatiKind::TranslatingZ,
            5.0,
            0.0,
            0.0,
            0.0,
            (0.0, 40.0),
            40000,
        )
        .unwrap();
        assert!(sol.y.truncated);
        assert!(sol.y.u_end() < 40.0);
    }

    #[test]
    fn g_reconstruction_derivative() {
        let sol = riccati_solve(
            RiccatiKind::TranslatingZ,
            0.25,
            0.3,
            0.7,
            0.2,
            (0.0, 1.0),
            1000,
        )
        .unwrap();
        assert_eq!(sol.g.f[0], 0.2);
        for i in 0..sol.g.us.len() {
            assert!((sol.g.d1[i] - (sol.y.f[i] + 0.7) / 2.0).abs() < 1e-15);
        }
        assert!(sol.g.derivative_consistency() < 1e-6);
    }

    #[test]
    fn sampled_profile_snaps_to_nodes_and_interpolates() {
        let sol = t1r_profile(1.0, 0.0, 0.0, (0.0, 0.8), 800).unwrap();
        let h = sol.step();
        let prof = SampledProfile(Arc::new(sol.clone()));
        let jet = prof.jet(sol.us[100]).unwrap();
        assert_eq!(jet.f, sol.f[100]);
        assert_eq!(jet.d1, sol.d1[100]);
        // halfway between nodes: Hermite stays O(h⁴)-close to a re-solve
        let mid = sol.us[100] + h / 2.0;
        let jet_mid = prof.jet(mid).unwrap();
        assert!((jet_mid.f - (sol.f[100] + sol.f[101]) / 2.0).abs() < 1e-3);
        assert!(prof.jet(2.0).is_err());
    }

    #[test]
    fn fd_derivative_matches_analytic() {
        let h = 1e-3;
        let us: Vec<f64> = (0..1001).map(|i| i as f64 * h).collect();
        let vals: Vec<f64> = us.iter().map(|u| (2.0 * u).sin()).collect();
        let ders = fd_derivative_5pt(&vals, h);
        for (i, &u) in us.iter().enumerate() {
            let expect = 2.0 * (2.0 * u).cos();
            assert!(
                (ders[i] - expect).abs() < 1e-9,
                "at u={u}: {} vs {expect}",
                ders[i]
            );
        }
    }
}
