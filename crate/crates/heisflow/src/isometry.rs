//! Killing fields and one-parameter isometry flows of the Heisenberg group.
//!
//! The Lie algebra of the isometry group is spanned by
//!
//! ```text
//! X₁ = y∂x − x∂y,  X₂ = ∂x + (y/2)∂z,  X₃ = ∂y − (x/2)∂z,  X₄ = ∂z,
//! ```
//!
//! with the closed-form flows
//!
//! ```text
//! Ψ₁ᵗ(x,y,z) = (x cos t − y sin t, x sin t + y cos t, z)
//! Ψ₂ᵗ(x,y,z) = (t+x, y, ½ty + z)
//! Ψ₃ᵗ(x,y,z) = (x, t+y, −½tx + z)
//! Ψ₄ᵗ(x,y,z) = (x, y, t+z)
//! ```
//!
//! Note the orientation of the rotation: Ψ₁ᵗ is the counterclockwise
//! rotation, whose generator is x∂y − y∂x = −X₁. The basis vector X₁ above
//! is kept as listed, so the flow↔generator association carries that sign
//! (see [`IsometryGenerator::killing_field`]). Ψ₂, Ψ₃, Ψ₄ are generated by
//! X₂, X₃, X₄ on the nose.
//!
//! General one-parameter families are modeled as ordered compositions of
//! the four basic flows; exact exponentials of mixed generators are out of
//! scope.

use crate::heis::{
    christoffel_at, frame_to_coord, inner, CoordVector, FrameVector, Point, FD_STEP_FIRST,
};

/// One of the four basic flow generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryGenerator {
    /// Rotation about the z-axis (fixes the origin).
    Rotation,
    /// x-translation with z-shear.
    TranslateX,
    /// y-translation with z-shear.
    TranslateY,
    /// Vertical translation.
    TranslateZ,
}

impl IsometryGenerator {
    pub const ALL: [IsometryGenerator; 4] = [
        IsometryGenerator::Rotation,
        IsometryGenerator::TranslateX,
        IsometryGenerator::TranslateY,
        IsometryGenerator::TranslateZ,
    ];

    /// 1-based index matching the Ψᵢ numbering.
    pub fn index(&self) -> usize {
        match self {
            IsometryGenerator::Rotation => 1,
            IsometryGenerator::TranslateX => 2,
            IsometryGenerator::TranslateY => 3,
            IsometryGenerator::TranslateZ => 4,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            1 => Some(IsometryGenerator::Rotation),
            2 => Some(IsometryGenerator::TranslateX),
            3 => Some(IsometryGenerator::TranslateY),
            4 => Some(IsometryGenerator::TranslateZ),
            _ => None,
        }
    }

    /// The Killing field whose flow this is: −X₁ for the rotation,
    /// X₂, X₃, X₄ for the translations.
    pub fn killing_field(&self) -> KillingField {
        match self {
            IsometryGenerator::Rotation => KillingField::new(-1.0, 0.0, 0.0, 0.0),
            IsometryGenerator::TranslateX => KillingField::new(0.0, 1.0, 0.0, 0.0),
            IsometryGenerator::TranslateY => KillingField::new(0.0, 0.0, 1.0, 0.0),
            IsometryGenerator::TranslateZ => KillingField::new(0.0, 0.0, 0.0, 1.0),
        }
    }
}

/// Linear combination c₁X₁ + c₂X₂ + c₃X₃ + c₄X₄ of the Killing basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KillingField {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl KillingField {
    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Self {
        KillingField { c1, c2, c3, c4 }
    }

    pub fn basis(i: usize) -> Option<Self> {
        match i {
            1 => Some(KillingField::new(1.0, 0.0, 0.0, 0.0)),
            2 => Some(KillingField::new(0.0, 1.0, 0.0, 0.0)),
            3 => Some(KillingField::new(0.0, 0.0, 1.0, 0.0)),
            4 => Some(KillingField::new(0.0, 0.0, 0.0, 1.0)),
            _ => None,
        }
    }

    /// Evaluate the field at `p` in coordinate components.
    pub fn eval(&self, p: &Point) -> CoordVector {
        CoordVector::new(
            self.c1 * p.y + self.c2,
            -self.c1 * p.x + self.c3,
            self.c2 * p.y / 2.0 - self.c3 * p.x / 2.0 + self.c4,
        )
    }
}

/// Evaluate a Killing basis combination at a point.
pub fn killing_eval(field: &KillingField, p: &Point) -> CoordVector {
    field.eval(p)
}

/// Apply the closed-form flow Ψᵢᵗ to a point.
pub fn flow_apply(gen: IsometryGenerator, t: f64, p: &Point) -> Point {
    match gen {
        IsometryGenerator::Rotation => {
            let (s, c) = t.sin_cos();
            Point::new(p.x * c - p.y * s, p.x * s + p.y * c, p.z)
        }
        IsometryGenerator::TranslateX => Point::new(t + p.x, p.y, t * p.y / 2.0 + p.z),
        IsometryGenerator::TranslateY => Point::new(p.x, t + p.y, -t * p.x / 2.0 + p.z),
        IsometryGenerator::TranslateZ => Point::new(p.x, p.y, t + p.z),
    }
}

/// Closed-form Jacobian dΨᵢᵗ; the flows are affine in (x, y, z) so this is
/// exact and position independent.
pub fn flow_jacobian(gen: IsometryGenerator, t: f64) -> [[f64; 3]; 3] {
    match gen {
        IsometryGenerator::Rotation => {
            let (s, c) = t.sin_cos();
            [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
        }
        IsometryGenerator::TranslateX => [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, t / 2.0, 1.0]],
        IsometryGenerator::TranslateY => [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-t / 2.0, 0.0, 1.0]],
        IsometryGenerator::TranslateZ => [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    }
}

fn apply_matrix(m: &[[f64; 3]; 3], v: &CoordVector) -> CoordVector {
    CoordVector::new(
        m[0][0] * v.vx + m[0][1] * v.vy + m[0][2] * v.vz,
        m[1][0] * v.vx + m[1][1] * v.vy + m[1][2] * v.vz,
        m[2][0] * v.vx + m[2][1] * v.vy + m[2][2] * v.vz,
    )
}

/// An ordered composition of scaled basic flows, applied left to right:
/// the stage `(gen, scale)` maps p ↦ Ψ_gen^{scale·t}(p).
#[derive(Debug, Clone, PartialEq)]
pub struct IsometryFlow {
    pub stages: Vec<(IsometryGenerator, f64)>,
}

impl IsometryFlow {
    pub fn single(gen: IsometryGenerator, scale: f64) -> Self {
        IsometryFlow {
            stages: vec![(gen, scale)],
        }
    }

    pub fn compose(stages: Vec<(IsometryGenerator, f64)>) -> Self {
        IsometryFlow { stages }
    }

    /// Apply at time t; t = 0 is the identity for every flow.
    pub fn apply(&self, t: f64, p: &Point) -> Point {
        let mut q = *p;
        for &(gen, scale) in &self.stages {
            q = flow_apply(gen, scale * t, &q);
        }
        q
    }

    pub fn jacobian(&self, t: f64) -> [[f64; 3]; 3] {
        let mut m = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        for &(gen, scale) in &self.stages {
            let j = flow_jacobian(gen, scale * t);
            let mut out = [[0.0; 3]; 3];
            for r in 0..3 {
                for c in 0..3 {
                    let mut acc = 0.0;
                    for k in 0..3 {
                        acc += j[r][k] * m[k][c];
                    }
                    out[r][c] = acc;
                }
            }
            m = out;
        }
        m
    }
}

/// |d/dt Ψᵗ(p)|ₜ₌₀ − X(p)| with the derivative by central differences;
/// near zero exactly when X generates Ψ.
pub fn flow_generator_check(gen: IsometryGenerator, field: &KillingField, p: &Point) -> f64 {
    let h = FD_STEP_FIRST;
    let fp = flow_apply(gen, h, p);
    let fm = flow_apply(gen, -h, p);
    let fd = CoordVector::new(
        (fp.x - fm.x) / (2.0 * h),
        (fp.y - fm.y) / (2.0 * h),
        (fp.z - fm.z) / (2.0 * h),
    );
    fd.sub(&field.eval(p)).chart_norm()
}

/// Pullback-metric defect of the map q ↦ Ψᵗ(q) at p:
/// max over frame-basis pairs (v, w) of |⟨dΨᵗv, dΨᵗw⟩_{Ψᵗp} − ⟨v, w⟩_p|,
/// with the exact closed-form Jacobian. Zero (to roundoff) for isometries.
pub fn isometry_residual(gen: IsometryGenerator, t: f64, p: &Point) -> f64 {
    let j = flow_jacobian(gen, t);
    let q = flow_apply(gen, t, p);
    pullback_residual_with(&j, p, &q)
}

/// Pullback-metric defect for an arbitrary map, Jacobian by central
/// differences. Used as the control against non-isometries.
pub fn pullback_residual_fd(map: impl Fn(&Point) -> Point, p: &Point) -> f64 {
    let h = 1e-6;
    let mut j = [[0.0; 3]; 3];
    for (axis, col) in [(0usize, 0usize), (1, 1), (2, 2)] {
        let mut pp = *p;
        let mut pm = *p;
        match axis {
            0 => {
                pp.x += h;
                pm.x -= h;
            }
            1 => {
                pp.y += h;
                pm.y -= h;
            }
            _ => {
                pp.z += h;
                pm.z -= h;
            }
        }
        let a = map(&pp);
        let b = map(&pm);
        j[0][col] = (a.x - b.x) / (2.0 * h);
        j[1][col] = (a.y - b.y) / (2.0 * h);
        j[2][col] = (a.z - b.z) / (2.0 * h);
    }
    let q = map(p);
    pullback_residual_with(&j, p, &q)
}

fn pullback_residual_with(jac: &[[f64; 3]; 3], p: &Point, image: &Point) -> f64 {
    let mut worst: f64 = 0.0;
    let basis: Vec<CoordVector> = (1..=3)
        .map(|i| frame_to_coord(p, &FrameVector::basis(i).unwrap()))
        .collect();
    for v in &basis {
        for w in &basis {
            let jv = apply_matrix(jac, v);
            let jw = apply_matrix(jac, w);
            let defect = inner(image, &jv, &jw) - inner(p, v, w);
            worst = worst.max(defect.abs());
        }
    }
    worst
}

/// Killing-equation defect |⟨∇_v X, w⟩ + ⟨v, ∇_w X⟩| maximized over the
/// frame basis at `p`, for an arbitrary coordinate vector field.
///
/// ∇ is assembled from [`christoffel_at`]; the field's partial derivatives
/// are central differences. Near zero exactly for Killing fields.
#[allow(clippy::needless_range_loop)]
pub fn killing_residual(field: impl Fn(&Point) -> CoordVector, p: &Point) -> f64 {
    let h = FD_STEP_FIRST;
    let gamma = christoffel_at(p);
    let x = field(p);
    // ∂ᵢ X^k by FD
    let mut dpart = [[0.0; 3]; 3]; // dpart[i][k] = ∂ᵢ X^k
    for i in 0..3 {
        let mut pp = *p;
        let mut pm = *p;
        match i {
            0 => {
                pp.x += h;
                pm.x -= h;
            }
            1 => {
                pp.y += h;
                pm.y -= h;
            }
            _ => {
                pp.z += h;
                pm.z -= h;
            }
        }
        let a = field(&pp);
        let b = field(&pm);
        dpart[i] = [
            (a.vx - b.vx) / (2.0 * h),
            (a.vy - b.vy) / (2.0 * h),
            (a.vz - b.vz) / (2.0 * h),
        ];
    }
    let nabla = |v: &CoordVector| -> CoordVector {
        let vv = [v.vx, v.vy, v.vz];
        let mut out = [0.0; 3];
        for k in 0..3 {
            let mut acc = 0.0;
            for i in 0..3 {
                acc += vv[i] * dpart[i][k];
            }
            out[k] = acc;
        }
        let gterm = gamma.contract(v, &x);
        CoordVector::new(out[0] + gterm.vx, out[1] + gterm.vy, out[2] + gterm.vz)
    };
    let basis: Vec<CoordVector> = (1..=3)
        .map(|i| frame_to_coord(p, &FrameVector::basis(i).unwrap()))
        .collect();
    let mut worst: f64 = 0.0;
    for v in &basis {
        for w in &basis {
            let defect = inner(p, &nabla(v), w) + inner(p, v, &nabla(w));
            worst = worst.max(defect.abs());
        }
    }
    worst
}

/// Killing residual for a basis combination.
pub fn killing_residual_field(field: &KillingField, p: &Point) -> f64 {
    let f = *field;
    killing_residual(move |q| f.eval(q), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    fn rand_point(rng: &mut impl Rng) -> Point {
        Point::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        )
    }

    #[test]
    fn killing_basis_values() {
        let x1 = KillingField::basis(1).unwrap();
        assert_eq!(
            x1.eval(&Point::new(1.0, 0.0, 0.0)),
            CoordVector::new(0.0, -1.0, 0.0)
        );
        let x4 = KillingField::basis(4).unwrap();
        assert_eq!(x4.eval(&Point::new(0.3, -0.7, 2.0)), CoordVector::DZ);
        let x2 = KillingField::basis(2).unwrap();
        let y = 1.4;
        assert_eq!(
            x2.eval(&Point::new(0.0, y, 0.0)),
            CoordVector::new(1.0, 0.0, y / 2.0)
        );
    }

    #[test]
    fn flow_examples() {
        let t = 0.9;
        assert_eq!(
            flow_apply(IsometryGenerator::TranslateX, t, &Point::ORIGIN),
            Point::new(t, 0.0, 0.0)
        );
        let rotated = flow_apply(
            IsometryGenerator::Rotation,
            FRAC_PI_2,
            &Point::new(1.0, 0.0, 0.0),
        );
        assert!(rotated.chart_dist(&Point::new(0.0, 1.0, 0.0)) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for _ in 0..20 {
            let p = rand_point(&mut rng);
            let q = flow_apply(IsometryGenerator::TranslateY, t, &p);
            assert!((q.z - (-0.5 * t * p.x + p.z)).abs() < 1e-15);
        }
    }

    #[test]
    fn flows_are_identity_at_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for gen in IsometryGenerator::ALL {
            let p = rand_point(&mut rng);
            assert_eq!(flow_apply(gen, 0.0, &p), p);
        }
    }

    #[test]
    fn single_generator_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for gen in IsometryGenerator::ALL {
            for _ in 0..20 {
                let p = rand_point(&mut rng);
                let s = rng.random_range(-2.0..2.0);
                let t = rng.random_range(-2.0..2.0);
                let two_step = flow_apply(gen, s, &flow_apply(gen, t, &p));
                let one_step = flow_apply(gen, s + t, &p);
                assert!(
                    two_step.chart_dist(&one_step) < 1e-12,
                    "{gen:?}: Ψ^s∘Ψ^t != Ψ^(s+t)"
                );
            }
        }
    }

    #[test]
    fn rotation_fixes_origin_translations_do_not() {
        for &t in &[-1.0, 0.3, 2.0] {
            assert_eq!(
                flow_apply(IsometryGenerator::Rotation, t, &Point::ORIGIN),
                Point::ORIGIN
            );
            if t != 0.0 {
                for gen in [
                    IsometryGenerator::TranslateX,
                    IsometryGenerator::TranslateY,
                    IsometryGenerator::TranslateZ,
                ] {
                    assert_ne!(flow_apply(gen, t, &Point::ORIGIN), Point::ORIGIN);
                }
            }
        }
    }

    #[test]
    fn generator_flow_matching() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for gen in IsometryGenerator::ALL {
            let field = gen.killing_field();
            for _ in 0..100 {
                let p = rand_point(&mut rng);
                let err = flow_generator_check(gen, &field, &p);
                assert!(err < 1e-8, "{gen:?} mismatch {err}");
            }
        }
        // constant pair: affine in t, so only rounding of p.z ± h survives
        let p = Point::new(0.4, -1.0, 0.8);
        let err = flow_generator_check(
            IsometryGenerator::TranslateZ,
            &KillingField::basis(4).unwrap(),
            &p,
        );
        assert!(err < 1e-11, "constant pair: {err:e}");
    }

    #[test]
    fn mismatched_generator_detected() {
        // Ψ₂ against X₃ stays bounded away from zero.
        let p = Point::new(1.0, 1.0, 1.0);
        let err = flow_generator_check(
            IsometryGenerator::TranslateX,
            &KillingField::basis(3).unwrap(),
            &p,
        );
        assert!(err > 0.5, "expected detector to fire, got {err}");
        // Ψ₁ against +X₁ (the printed basis vector) also fires: Ψ₁ is
        // generated by −X₁.
        let err = flow_generator_check(
            IsometryGenerator::Rotation,
            &KillingField::basis(1).unwrap(),
            &p,
        );
        assert!(err > 0.5, "rotation sign convention: got {err}");
    }

    #[test]
    fn flows_are_isometries() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for gen in IsometryGenerator::ALL {
            for &t in &[-1.0, 0.0, 0.3, 2.0] {
                for _ in 0..25 {
                    let p = rand_point(&mut rng);
                    let r = isometry_residual(gen, t, &p);
                    assert!(r < 1e-8, "{gen:?} at t={t}: residual {r}");
                }
            }
        }
    }

    #[test]
    fn scaling_map_is_not_an_isometry() {
        let r = pullback_residual_fd(|p| Point::new(2.0 * p.x, p.y, p.z), &Point::ORIGIN);
        assert!((r - 3.0).abs() < 1e-6, "expected ≈3 at the origin, got {r}");
    }

    #[test]
    fn killing_residuals_small_for_basis_and_combinations() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for i in 1..=4 {
            let field = KillingField::basis(i).unwrap();
            for _ in 0..25 {
                let p = rand_point(&mut rng);
                let r = killing_residual_field(&field, &p);
                assert!(r < 1e-6, "X{i} residual {r} at {p:?}");
            }
        }
        for _ in 0..10 {
            let field = KillingField::new(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            );
            let p = rand_point(&mut rng);
            let r = killing_residual_field(&field, &p);
            assert!(r < 1e-6, "combination residual {r}");
        }
    }

    #[test]
    fn non_killing_control_field() {
        // x∂x has ⟨∇_{∂x}(x∂x), ∂x⟩ = 1 at (1,0,0), so the defect is ≥ 1.
        let r = killing_residual(
            |p| CoordVector::new(p.x, 0.0, 0.0),
            &Point::new(1.0, 0.0, 0.0),
        );
        assert!(r >= 1.0, "control field defect {r}");
    }

    #[test]
    fn composed_flow_jacobian_matches_fd() {
        let flow = IsometryFlow::compose(vec![
            (IsometryGenerator::Rotation, 0.7),
            (IsometryGenerator::TranslateX, -1.2),
            (IsometryGenerator::TranslateZ, 0.4),
        ]);
        let p = Point::new(0.3, -0.8, 1.1);
        let t = 0.9;
        let j = flow.jacobian(t);
        let h = 1e-6;
        for (axis, col) in [(0usize, 0usize), (1, 1), (2, 2)] {
            let mut pp = p;
            let mut pm = p;
            match axis {
                0 => {
                    pp.x += h;
                    pm.x -= h;
                }
                1 => {
                    pp.y += h;
                    pm.y -= h;
                }
                _ => {
                    pp.z += h;
                    pm.z -= h;
                }
            }
            let a = flow.apply(t, &pp);
            let b = flow.apply(t, &pm);
            let fd = [
                (a.x - b.x) / (2.0 * h),
                (a.y - b.y) / (2.0 * h),
                (a.z - b.z) / (2.0 * h),
            ];
            for r in 0..3 {
                assert!((j[r][col] - fd[r]).abs() < 1e-8);
            }
        }
        // identity at t = 0
        assert_eq!(flow.apply(0.0, &p), p);
    }
}
