//! The three-dimensional Heisenberg group as a Riemannian manifold.
//!
//! The underlying space is ℝ³ with the left-invariant metric
//!
//! ```text
//! ⟨·,·⟩ = dx² + dy² + (½·y dx − ½·x dy + dz)²
//! ```
//!
//! A global orthonormal frame of left-invariant fields is
//!
//! ```text
//! E₁ = ∂x − (y/2)∂z,   E₂ = ∂y + (x/2)∂z,   E₃ = ∂z,
//! ```
//!
//! with bracket \[E₁,E₂\] = E₃ and the Levi-Civita connection table
//!
//! ```text
//! ∇_{Eᵢ}Eᵢ = 0,   ∇_{E₁}E₂ = ½E₃ = −∇_{E₂}E₁,
//! ∇_{E₁}E₃ = −½E₂ = ∇_{E₃}E₁,   ∇_{E₂}E₃ = ½E₁ = ∇_{E₃}E₂.
//! ```
//!
//! Tangent vectors are carried either as coordinate components (w.r.t.
//! ∂x, ∂y, ∂z) or as frame coefficients (w.r.t. E₁, E₂, E₃). Frame
//! coefficients are the canonical internal representation: the metric is
//! the Euclidean dot product on them, and the frame cross product is the
//! Euclidean cross product on them. Coordinate components are the boundary
//! format for I/O and for anything that differentiates in (x, y, z).

// tensor contractions read better as plain index loops
#![allow(clippy::needless_range_loop)]

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HeisError {
    #[error("frame index {0} out of range (expected 1..=3)")]
    FrameIndex(usize),
}

/// A point of the group, i.e. of ℝ³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point {
    pub const ORIGIN: Point = Point {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Euclidean chart distance; used by oracle comparisons, not a geodesic distance.
    pub fn chart_dist(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Tangent vector in coordinate components (w.r.t. ∂x, ∂y, ∂z).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoordVector {
    pub vx: f64,
    pub vy: f64,
    pub vz: f64,
}

impl CoordVector {
    pub const ZERO: CoordVector = CoordVector {
        vx: 0.0,
        vy: 0.0,
        vz: 0.0,
    };
    pub const DX: CoordVector = CoordVector {
        vx: 1.0,
        vy: 0.0,
        vz: 0.0,
    };
    pub const DY: CoordVector = CoordVector {
        vx: 0.0,
        vy: 1.0,
        vz: 0.0,
    };
    pub const DZ: CoordVector = CoordVector {
        vx: 0.0,
        vy: 0.0,
        vz: 1.0,
    };

    pub fn new(vx: f64, vy: f64, vz: f64) -> Self {
        CoordVector { vx, vy, vz }
    }

    pub fn scale(&self, s: f64) -> Self {
        CoordVector::new(s * self.vx, s * self.vy, s * self.vz)
    }

    pub fn add(&self, o: &CoordVector) -> Self {
        CoordVector::new(self.vx + o.vx, self.vy + o.vy, self.vz + o.vz)
    }

    pub fn sub(&self, o: &CoordVector) -> Self {
        CoordVector::new(self.vx - o.vx, self.vy - o.vy, self.vz - o.vz)
    }

    /// Euclidean norm of the raw components (chart norm, not the metric norm).
    pub fn chart_norm(&self) -> f64 {
        (self.vx * self.vx + self.vy * self.vy + self.vz * self.vz).sqrt()
    }
}

/// Tangent vector in frame coefficients (w.r.t. E₁, E₂, E₃).
///
/// The frame is orthonormal, so the metric inner product of two vectors is
/// the Euclidean dot product of their coefficient triples.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FrameVector {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl FrameVector {
    pub const ZERO: FrameVector = FrameVector {
        a1: 0.0,
        a2: 0.0,
        a3: 0.0,
    };
    pub const E1: FrameVector = FrameVector {
        a1: 1.0,
        a2: 0.0,
        a3: 0.0,
    };
    pub const E2: FrameVector = FrameVector {
        a1: 0.0,
        a2: 1.0,
        a3: 0.0,
    };
    pub const E3: FrameVector = FrameVector {
        a1: 0.0,
        a2: 0.0,
        a3: 1.0,
    };

    pub fn new(a1: f64, a2: f64, a3: f64) -> Self {
        FrameVector { a1, a2, a3 }
    }

    /// Frame basis vector Eᵢ, i ∈ 1..=3.
    pub fn basis(i: usize) -> Result<FrameVector, HeisError> {
        match i {
            1 => Ok(FrameVector::E1),
            2 => Ok(FrameVector::E2),
            3 => Ok(FrameVector::E3),
            _ => Err(HeisError::FrameIndex(i)),
        }
    }

    pub fn dot(&self, o: &FrameVector) -> f64 {
        self.a1 * o.a1 + self.a2 * o.a2 + self.a3 * o.a3
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        FrameVector::new(s * self.a1, s * self.a2, s * self.a3)
    }

    pub fn add(&self, o: &FrameVector) -> Self {
        FrameVector::new(self.a1 + o.a1, self.a2 + o.a2, self.a3 + o.a3)
    }

    pub fn sub(&self, o: &FrameVector) -> Self {
        FrameVector::new(self.a1 - o.a1, self.a2 - o.a2, self.a3 - o.a3)
    }
}

/// Symmetric 3×3 metric matrix gᵢⱼ at a point, index order (x, y, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricMatrix(pub [[f64; 3]; 3]);

impl MetricMatrix {
    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// vᵀ g w on coordinate components.
    pub fn pair(&self, v: &CoordVector, w: &CoordVector) -> f64 {
        let vv = [v.vx, v.vy, v.vz];
        let ww = [w.vx, w.vy, w.vz];
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc += vv[i] * self.0[i][j] * ww[j];
            }
        }
        acc
    }
}

/// The metric matrix at `p`, obtained by expanding the defining one-form:
/// with ω = ½y dx − ½x dy + dz,  g = dx² + dy² + ω ⊗ ω.
pub fn metric_at(p: &Point) -> MetricMatrix {
    let (x, y) = (p.x, p.y);
    MetricMatrix([
        [1.0 + y * y / 4.0, -x * y / 4.0, y / 2.0],
        [-x * y / 4.0, 1.0 + x * x / 4.0, -x / 2.0],
        [y / 2.0, -x / 2.0, 1.0],
    ])
}

/// Inverse metric at `p`. Because the frame is orthonormal, g⁻¹ = Σᵢ Eᵢ Eᵢᵀ
/// on coordinate components.
pub fn metric_inv_at(p: &Point) -> MetricMatrix {
    let (x, y) = (p.x, p.y);
    MetricMatrix([
        [1.0, 0.0, -y / 2.0],
        [0.0, 1.0, x / 2.0],
        [-y / 2.0, x / 2.0, 1.0 + (x * x + y * y) / 4.0],
    ])
}

/// Metric inner product of two coordinate vectors at `p`.
pub fn inner(p: &Point, v: &CoordVector, w: &CoordVector) -> f64 {
    metric_at(p).pair(v, w)
}

/// Coordinate components → frame coefficients at `p`:
/// ∂x ↦ E₁ + (y/2)E₃, ∂y ↦ E₂ − (x/2)E₃, ∂z ↦ E₃.
pub fn coord_to_frame(p: &Point, v: &CoordVector) -> FrameVector {
    FrameVector::new(v.vx, v.vy, v.vz + (p.y * v.vx - p.x * v.vy) / 2.0)
}

/// Frame coefficients → coordinate components at `p` (inverse of
/// [`coord_to_frame`] at every point).
pub fn frame_to_coord(p: &Point, a: &FrameVector) -> CoordVector {
    CoordVector::new(a.a1, a.a2, a.a3 - (p.y * a.a1 - p.x * a.a2) / 2.0)
}

/// Frame cross product: bilinear, antisymmetric, with E₂×E₃ = E₁,
/// E₁×E₃ = −E₂, E₁×E₂ = E₃ — i.e. the Euclidean cross product on frame
/// coefficients.
pub fn frame_cross(a: &FrameVector, b: &FrameVector) -> FrameVector {
    FrameVector::new(
        a.a2 * b.a3 - a.a3 * b.a2,
        a.a3 * b.a1 - a.a1 * b.a3,
        a.a1 * b.a2 - a.a2 * b.a1,
    )
}

/// Constant frame connection coefficients c^k_{ij} with ∇_{Eᵢ}Eⱼ = Σ_k c^k_{ij} E_k.
///
/// Indices are zero-based internally; use [`covderiv_frame`] for the 1-based
/// accessor mirroring the usual notation.
#[derive(Debug, Clone, Copy)]
pub struct ConnectionTable(pub [[[f64; 3]; 3]; 3]);

impl ConnectionTable {
    pub const fn standard() -> Self {
        let mut c = [[[0.0; 3]; 3]; 3];
        // ∇_{E1}E2 = ½E3, ∇_{E2}E1 = −½E3
        c[0][1][2] = 0.5;
        c[1][0][2] = -0.5;
        // ∇_{E1}E3 = −½E2 = ∇_{E3}E1
        c[0][2][1] = -0.5;
        c[2][0][1] = -0.5;
        // ∇_{E2}E3 = ½E1 = ∇_{E3}E2
        c[1][2][0] = 0.5;
        c[2][1][0] = 0.5;
        ConnectionTable(c)
    }
}

pub const CONNECTION: ConnectionTable = ConnectionTable::standard();

/// ∇_{Eᵢ}Eⱼ from the connection table, indices 1-based.
pub fn covderiv_frame(i: usize, j: usize) -> Result<FrameVector, HeisError> {
    if !(1..=3).contains(&i) {
        return Err(HeisError::FrameIndex(i));
    }
    if !(1..=3).contains(&j) {
        return Err(HeisError::FrameIndex(j));
    }
    let c = &CONNECTION.0[i - 1][j - 1];
    Ok(FrameVector::new(c[0], c[1], c[2]))
}

/// ∇_dir W for a frame-coefficient field W, by the Leibniz rule over the
/// connection table:
///
/// ```text
/// ∇_dir W = Σ_k (D_dir w_k) E_k + Σ_k w_k ∇_dir E_k
/// ```
///
/// The caller supplies `dw_along_dir`, the directional derivatives
/// (D_dir w₁, D_dir w₂, D_dir w₃) of W's coefficients along `dir`.
pub fn covderiv_field(
    w: &FrameVector,
    dw_along_dir: &FrameVector,
    dir: &FrameVector,
) -> FrameVector {
    // Table contraction: ∇_d E₁ = −(d₃/2)E₂ − (d₂/2)E₃,
    // ∇_d E₂ = (d₃/2)E₁ + (d₁/2)E₃, ∇_d E₃ = (d₂/2)E₁ − (d₁/2)E₂.
    let table = FrameVector::new(
        (dir.a3 * w.a2 + dir.a2 * w.a3) / 2.0,
        -(dir.a3 * w.a1 + dir.a1 * w.a3) / 2.0,
        (dir.a1 * w.a2 - dir.a2 * w.a1) / 2.0,
    );
    dw_along_dir.add(&table)
}

/// Coordinate Christoffel symbols Γ^k_{ij}(p), symmetric in (i, j);
/// index order (x, y, z).
#[derive(Debug, Clone, Copy)]
pub struct ChristoffelTensor(pub [[[f64; 3]; 3]; 3]);

impl ChristoffelTensor {
    /// Γ^k_{ij}
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> f64 {
        self.0[k][i][j]
    }

    /// Quadratic contraction Γ^k_{ij} v^i w^j for each k.
    pub fn contract(&self, v: &CoordVector, w: &CoordVector) -> CoordVector {
        let vv = [v.vx, v.vy, v.vz];
        let ww = [w.vx, w.vy, w.vz];
        let mut out = [0.0; 3];
        for k in 0..3 {
            let mut acc = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    acc += self.0[k][i][j] * vv[i] * ww[j];
                }
            }
            out[k] = acc;
        }
        CoordVector::new(out[0], out[1], out[2])
    }
}

/// Analytic partial derivatives ∂_a g of the metric matrix at `p`.
/// Only the x- and y-derivatives are nonzero; the metric does not depend on z.
pub fn metric_partials_at(p: &Point) -> [[[f64; 3]; 3]; 3] {
    let (x, y) = (p.x, p.y);
    let dx = [
        [0.0, -y / 4.0, 0.0],
        [-y / 4.0, x / 2.0, -0.5],
        [0.0, -0.5, 0.0],
    ];
    let dy = [
        [y / 2.0, -x / 4.0, 0.5],
        [-x / 4.0, 0.0, 0.0],
        [0.5, 0.0, 0.0],
    ];
    let dz = [[0.0; 3]; 3];
    [dx, dy, dz]
}

/// Coordinate Christoffels in closed form: Koszul formula with the analytic
/// metric derivatives,
///
/// ```text
/// Γ^k_{ij} = ½ g^{km} (∂ᵢ g_{mj} + ∂ⱼ g_{mi} − ∂_m g_{ij}).
/// ```
pub fn christoffel_at(p: &Point) -> ChristoffelTensor {
    let dg = metric_partials_at(p);
    let ginv = metric_inv_at(p).0;
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0.0;
                for m in 0..3 {
                    acc += ginv[k][m] * (dg[i][m][j] + dg[j][m][i] - dg[m][i][j]);
                }
                gamma[k][i][j] = 0.5 * acc;
            }
        }
    }
    ChristoffelTensor(gamma)
}

/// Coordinate components of the frame field Eᵢ at `p` (1-based index).
pub fn frame_field_coord(i: usize, p: &Point) -> Result<CoordVector, HeisError> {
    match i {
        1 => Ok(CoordVector::new(1.0, 0.0, -p.y / 2.0)),
        2 => Ok(CoordVector::new(0.0, 1.0, p.x / 2.0)),
        3 => Ok(CoordVector::new(0.0, 0.0, 1.0)),
        _ => Err(HeisError::FrameIndex(i)),
    }
}

/// Default central-difference step for first derivatives.
pub const FD_STEP_FIRST: f64 = 1e-5;
/// Default step for Koszul-style second-derivative combinations.
pub const FD_STEP_SECOND: f64 = 1e-4;

/// Recover the frame connection table from the coordinate Christoffels at
/// `p` and return the worst deviation from [`covderiv_frame`]:
/// (∇_{Eᵢ}Eⱼ)^k = Eᵢ^m (∂_m Eⱼ^k + Γ^k_{ml} Eⱼ^l), partials by central
/// differences, result converted to frame coefficients.
pub fn frame_table_recovery_error(p: &Point) -> f64 {
    let h = FD_STEP_FIRST;
    let gamma = christoffel_at(p);
    let mut worst: f64 = 0.0;
    for i in 1..=3 {
        for j in 1..=3 {
            let ei = frame_field_coord(i, p).expect("index in range");
            let ej = frame_field_coord(j, p).expect("index in range");
            let mut dpart = [[0.0; 3]; 3]; // dpart[m][k] = ∂_m Eⱼ^k
            for (m, item) in dpart.iter_mut().enumerate() {
                let mut pp = *p;
                let mut pm = *p;
                match m {
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
                let fp = frame_field_coord(j, &pp).expect("index in range");
                let fm = frame_field_coord(j, &pm).expect("index in range");
                *item = [
                    (fp.vx - fm.vx) / (2.0 * h),
                    (fp.vy - fm.vy) / (2.0 * h),
                    (fp.vz - fm.vz) / (2.0 * h),
                ];
            }
            let eic = [ei.vx, ei.vy, ei.vz];
            let gterm = gamma.contract(&ei, &ej);
            let mut out = [gterm.vx, gterm.vy, gterm.vz];
            for k in 0..3 {
                for m in 0..3 {
                    out[k] += eic[m] * dpart[m][k];
                }
            }
            let got = coord_to_frame(p, &CoordVector::new(out[0], out[1], out[2]));
            let expect = covderiv_frame(i, j).expect("index in range");
            worst = worst.max(got.sub(&expect).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_point(rng: &mut impl Rng) -> Point {
        Point::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        )
    }

    #[test]
    fn metric_identity_at_origin() {
        let g = metric_at(&Point::ORIGIN);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_eq!(g.0[i][j], expect, "g[{i}][{j}]");
            }
        }
    }

    #[test]
    fn metric_entries_at_1_2_3() {
        let g = metric_at(&Point::new(1.0, 2.0, 3.0));
        assert_eq!(g.0[0][0], 2.0); // 1 + y²/4
        assert_eq!(g.0[0][2], 1.0); // y/2
        assert_eq!(g.0[1][2], -0.5); // −x/2
        assert_eq!(g.0[0][1], -0.5); // −xy/4
        assert_eq!(g.0[1][1], 1.25); // 1 + x²/4
    }

    #[test]
    fn metric_determinant_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let p = rand_point(&mut rng);
            assert!(
                (metric_at(&p).det() - 1.0).abs() < 1e-12,
                "det g != 1 at {p:?}"
            );
        }
    }

    #[test]
    fn inner_matches_frame_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let p = rand_point(&mut rng);
            let v = CoordVector::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let w = CoordVector::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let via_matrix = inner(&p, &v, &w);
            let via_frame = coord_to_frame(&p, &v).dot(&coord_to_frame(&p, &w));
            assert!(
                (via_matrix - via_frame).abs() < 1e-12,
                "matrix {via_matrix} vs frame {via_frame}"
            );
        }
    }

    #[test]
    fn inner_examples() {
        assert_eq!(
            inner(&Point::ORIGIN, &CoordVector::DX, &CoordVector::DY),
            0.0
        );
        let p = Point::new(1.0, 2.0, 3.0);
        assert_eq!(inner(&p, &CoordVector::DX, &CoordVector::DX), 2.0);
    }

    #[test]
    fn coord_to_frame_examples() {
        let p = Point::new(0.7, -1.3, 2.0);
        let dx = coord_to_frame(&p, &CoordVector::DX);
        assert_eq!(dx, FrameVector::new(1.0, 0.0, -1.3 / 2.0));
        let dz = coord_to_frame(&p, &CoordVector::DZ);
        assert_eq!(dz, FrameVector::E3);
    }

    #[test]
    fn frame_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let p = rand_point(&mut rng);
            let v = CoordVector::new(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
            );
            let back = frame_to_coord(&p, &coord_to_frame(&p, &v));
            assert!(back.sub(&v).chart_norm() < 1e-14);
        }
    }

    #[test]
    fn frame_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..50 {
            let p = rand_point(&mut rng);
            for i in 1..=3 {
                for j in 1..=3 {
                    let ei = frame_to_coord(&p, &FrameVector::basis(i).unwrap());
                    let ej = frame_to_coord(&p, &FrameVector::basis(j).unwrap());
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (inner(&p, &ei, &ej) - expect).abs() < 1e-12,
                        "⟨E{i},E{j}⟩ at {p:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn cross_product_table() {
        let e12 = frame_cross(&FrameVector::E1, &FrameVector::E2);
        assert_eq!(e12, FrameVector::E3);
        let e23 = frame_cross(&FrameVector::E2, &FrameVector::E3);
        assert_eq!(e23, FrameVector::E1);
        let e13 = frame_cross(&FrameVector::E1, &FrameVector::E3);
        assert_eq!(e13, FrameVector::E2.scale(-1.0));
        let a = FrameVector::new(1.0, 2.0, 0.0);
        assert_eq!(frame_cross(&a, &a), FrameVector::ZERO);
        let b = FrameVector::new(0.0, 1.0, 1.0);
        assert_eq!(frame_cross(&a, &b), FrameVector::new(2.0, -1.0, 1.0));
    }

    #[test]
    fn covderiv_frame_table() {
        assert_eq!(
            covderiv_frame(1, 2).unwrap(),
            FrameVector::new(0.0, 0.0, 0.5)
        );
        assert_eq!(covderiv_frame(2, 2).unwrap(), FrameVector::ZERO);
        assert_eq!(
            covderiv_frame(3, 2).unwrap(),
            FrameVector::new(0.5, 0.0, 0.0)
        );
        assert_eq!(
            covderiv_frame(2, 1).unwrap(),
            FrameVector::new(0.0, 0.0, -0.5)
        );
        assert!(covderiv_frame(0, 2).is_err());
        assert!(covderiv_frame(1, 4).is_err());
    }

    #[test]
    fn covderiv_field_constant_fields() {
        // W ≡ E₃ along E₁: table gives −½E₂.
        let d = covderiv_field(&FrameVector::E3, &FrameVector::ZERO, &FrameVector::E1);
        assert_eq!(d, FrameVector::new(0.0, -0.5, 0.0));
        // W ≡ E₁ along E₁: diagonal of the table vanishes.
        let d = covderiv_field(&FrameVector::E1, &FrameVector::ZERO, &FrameVector::E1);
        assert_eq!(d, FrameVector::ZERO);
    }

    #[test]
    fn torsion_free_against_bracket() {
        // ∇_{E₁}E₂ − ∇_{E₂}E₁ = E₃ = [E₁,E₂].
        let t = covderiv_frame(1, 2)
            .unwrap()
            .sub(&covderiv_frame(2, 1).unwrap());
        assert_eq!(t, FrameVector::E3);

        // Numeric bracket of the coordinate expressions of E₁, E₂ at random p.
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let h = FD_STEP_FIRST;
        for _ in 0..20 {
            let p = rand_point(&mut rng);
            // [V,W]^k = V^i ∂ᵢW^k − W^i ∂ᵢV^k with V = E₁, W = E₂.
            let field = |i: usize, q: &Point| frame_field_coord(i, q).unwrap();
            let partial = |i: usize, axis: usize| -> CoordVector {
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
                field(i, &pp).sub(&field(i, &pm)).scale(1.0 / (2.0 * h))
            };
            let v = field(1, &p);
            let w = field(2, &p);
            let vc = [v.vx, v.vy, v.vz];
            let wc = [w.vx, w.vy, w.vz];
            let mut bracket = CoordVector::ZERO;
            for i in 0..3 {
                bracket = bracket
                    .add(&partial(2, i).scale(vc[i]))
                    .sub(&partial(1, i).scale(wc[i]));
            }
            let expect = frame_to_coord(&p, &FrameVector::E3);
            assert!(
                bracket.sub(&expect).chart_norm() < 1e-8,
                "[E1,E2] != E3 at {p:?}"
            );
        }
    }

    /// Finite-difference Koszul oracle for the Christoffels, entirely
    /// independent of `christoffel_at` (it differentiates `metric_at`).
    fn christoffel_fd(p: &Point) -> ChristoffelTensor {
        let h = FD_STEP_SECOND;
        let dg_axis = |axis: usize| -> [[f64; 3]; 3] {
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
            let gp = metric_at(&pp).0;
            let gm = metric_at(&pm).0;
            let mut out = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    out[i][j] = (gp[i][j] - gm[i][j]) / (2.0 * h);
                }
            }
            out
        };
        let dg = [dg_axis(0), dg_axis(1), dg_axis(2)];
        let ginv = metric_inv_at(p).0;
        let mut gamma = [[[0.0; 3]; 3]; 3];
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let mut acc = 0.0;
                    for m in 0..3 {
                        acc += ginv[k][m] * (dg[i][m][j] + dg[j][m][i] - dg[m][i][j]);
                    }
                    gamma[k][i][j] = 0.5 * acc;
                }
            }
        }
        ChristoffelTensor(gamma)
    }

    #[test]
    fn christoffel_symmetric_lower_indices() {
        let gamma = christoffel_at(&Point::ORIGIN);
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(gamma.0[k][i][j], gamma.0[k][j][i]);
                }
            }
        }
    }

    #[test]
    fn christoffel_matches_fd_koszul() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..50 {
            let p = rand_point(&mut rng);
            let a = christoffel_at(&p);
            let b = christoffel_fd(&p);
            for k in 0..3 {
                for i in 0..3 {
                    for j in 0..3 {
                        assert!(
                            (a.0[k][i][j] - b.0[k][i][j]).abs() < 1e-6,
                            "Γ^{k}_{i}{j} analytic {} vs FD {} at {p:?}",
                            a.0[k][i][j],
                            b.0[k][i][j]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn christoffel_metric_compatibility() {
        // ∂ₖ gᵢⱼ = Σ_m (Γ^m_{ki} g_{mj} + Γ^m_{kj} g_{im}), ∂ₖg by FD.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let h = FD_STEP_FIRST;
        for _ in 0..20 {
            let p = rand_point(&mut rng);
            let gamma = christoffel_at(&p);
            let g = metric_at(&p).0;
            for k in 0..3 {
                let mut pp = p;
                let mut pm = p;
                match k {
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
                let gp = metric_at(&pp).0;
                let gm = metric_at(&pm).0;
                for i in 0..3 {
                    for j in 0..3 {
                        let fd = (gp[i][j] - gm[i][j]) / (2.0 * h);
                        let mut conn = 0.0;
                        for m in 0..3 {
                            conn += gamma.0[m][k][i] * g[m][j] + gamma.0[m][k][j] * g[i][m];
                        }
                        assert!(
                            (fd - conn).abs() < 1e-6,
                            "compatibility fails at k={k} i={i} j={j}: {fd} vs {conn}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frame_table_recovered_from_coordinate_christoffels() {
        // (∇_{Eᵢ}Eⱼ)^k = Eᵢ^m (∂_m Eⱼ^k + Γ^k_{ml} Eⱼ^l), then convert to frame.
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let h = FD_STEP_FIRST;
        for _ in 0..20 {
            let p = rand_point(&mut rng);
            let gamma = christoffel_at(&p);
            for i in 1..=3 {
                for j in 1..=3 {
                    let ei = frame_field_coord(i, &p).unwrap();
                    let ej = frame_field_coord(j, &p).unwrap();
                    // FD partials of Eⱼ components.
                    let mut dpart = [[0.0; 3]; 3]; // dpart[m][k] = ∂_m Eⱼ^k
                    for m in 0..3 {
                        let mut pp = p;
                        let mut pm = p;
                        match m {
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
                        let fp = frame_field_coord(j, &pp).unwrap();
                        let fm = frame_field_coord(j, &pm).unwrap();
                        let d = fp.sub(&fm).scale(1.0 / (2.0 * h));
                        dpart[m] = [d.vx, d.vy, d.vz];
                    }
                    let eic = [ei.vx, ei.vy, ei.vz];
                    let gej = gamma.contract(&ei, &ej);
                    let mut out = [gej.vx, gej.vy, gej.vz];
                    for k in 0..3 {
                        for m in 0..3 {
                            out[k] += eic[m] * dpart[m][k];
                        }
                    }
                    let got = coord_to_frame(&p, &CoordVector::new(out[0], out[1], out[2]));
                    let expect = covderiv_frame(i, j).unwrap();
                    assert!(
                        got.sub(&expect).norm() < 1e-6,
                        "∇_E{i}E{j} = {got:?}, table {expect:?} at {p:?}"
                    );
                }
            }
        }
    }
}
