//! File formats: OBJ meshes, CSV grids, JSON summaries.
//!
//! Formatting is pinned for reproducible diffs: OBJ and CSV floats are
//! written with nine significant digits in exponent form, JSON uses
//! serde_json's shortest round-trip representation. Identical inputs
//! produce byte-identical outputs.

use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use crate::geodesic::GeodesicPath;
use crate::graph_flow::{BoundaryMode, FlowProfile};
use crate::soliton::{ResidualReport, SolitonSpec, TrivialKind};
use crate::surface::linspace;
use crate::Point;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("mesh grid must be at least 2×2, got {nu}×{nv}")]
    DegenerateGrid { nu: usize, nv: usize },
    #[error("surface evaluation failed at u = {u}, v = {v} (profile domain?)")]
    SurfaceEval { u: f64, v: f64 },
    #[error("malformed CSV line {line}: {why}")]
    Csv { line: usize, why: String },
}

/// Nine significant digits, exponent form; the fixed float format for OBJ
/// and CSV output.
pub fn fmt_sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// A sampled surface patch at fixed t.
#[derive(Debug, Clone)]
pub struct MeshGrid {
    pub us: Vec<f64>,
    pub vs: Vec<f64>,
    pub t: f64,
    /// Row-major in u: `points[i*nv + j] = Φ(us[i], vs[j], t)`.
    pub points: Vec<Point>,
}

impl MeshGrid {
    pub fn nu(&self) -> usize {
        self.us.len()
    }

    pub fn nv(&self) -> usize {
        self.vs.len()
    }

    /// Sample a soliton family over its declared rectangle.
    pub fn sample(spec: &SolitonSpec, nu: usize, nv: usize, t: f64) -> Result<Self, IoError> {
        if nu < 2 || nv < 2 {
            return Err(IoError::DegenerateGrid { nu, nv });
        }
        let imm = spec.immersion();
        let us = spec.aligned_u_grid(nu);
        let vs = linspace(spec.v_range.0, spec.v_range.1, nv);
        let mut points = Vec::with_capacity(us.len() * vs.len());
        for &u in &us {
            for &v in &vs {
                let p = imm.position(u, v, t);
                if !p.is_finite() {
                    return Err(IoError::SurfaceEval { u, v });
                }
                points.push(p);
            }
        }
        Ok(MeshGrid { us, vs, t, points })
    }
}

/// Wavefront OBJ: one `v` line per grid point (row-major), quads split into
/// two triangles, 1-based indices.
pub fn write_obj(mesh: &MeshGrid, out: &mut impl Write) -> Result<(), IoError> {
    let nv = mesh.nv();
    for p in &mesh.points {
        writeln!(
            out,
            "v {} {} {}",
            fmt_sig9(p.x),
            fmt_sig9(p.y),
            fmt_sig9(p.z)
        )?;
    }
    for i in 0..mesh.nu() - 1 {
        for j in 0..nv - 1 {
            let v00 = i * nv + j + 1;
            let v01 = v00 + 1;
            let v10 = v00 + nv;
            let v11 = v10 + 1;
            writeln!(out, "f {v00} {v10} {v11}")?;
            writeln!(out, "f {v00} {v11} {v01}")?;
        }
    }
    Ok(())
}

/// `<family>_t<value>.obj`; the t value uses the shortest round-trip form.
pub fn mesh_filename(family: &str, t: f64) -> String {
    format!("{family}_t{t}.obj")
}

/// Machine-readable summary written next to residual CSVs.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualSummary {
    pub t: f64,
    pub nu: usize,
    pub nv: usize,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub degenerate_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial: Option<TrivialKind>,
}

impl ResidualSummary {
    pub fn of(report: &ResidualReport) -> Self {
        ResidualSummary {
            t: report.t,
            nu: report.us.len(),
            nv: report.vs.len(),
            max_abs: report.max_abs,
            mean_abs: report.mean_abs,
            degenerate_count: report.degenerate_count,
            trivial: report.trivial,
        }
    }
}

/// CSV with header `u,v,residual`, row-major in u.
pub fn write_residual_csv(report: &ResidualReport, out: &mut impl Write) -> Result<(), IoError> {
    writeln!(out, "u,v,residual")?;
    for (i, &u) in report.us.iter().enumerate() {
        for (j, &v) in report.vs.iter().enumerate() {
            writeln!(
                out,
                "{},{},{}",
                fmt_sig9(u),
                fmt_sig9(v),
                fmt_sig9(report.value(i, j))
            )?;
        }
    }
    Ok(())
}

/// CSV with header `u,x,y,z` from sampled points.
pub fn write_curve_csv(
    samples: impl Iterator<Item = (f64, Point)>,
    out: &mut impl Write,
) -> Result<(), IoError> {
    writeln!(out, "u,x,y,z")?;
    for (u, p) in samples {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_sig9(u),
            fmt_sig9(p.x),
            fmt_sig9(p.y),
            fmt_sig9(p.z)
        )?;
    }
    Ok(())
}

pub fn write_geodesic_csv(path: &GeodesicPath, out: &mut impl Write) -> Result<(), IoError> {
    write_curve_csv(path.samples.iter().map(|s| (s.u, s.point)), out)
}

/// CSV with header `u,f`.
pub fn write_profile_csv(profile: &FlowProfile, out: &mut impl Write) -> Result<(), IoError> {
    writeln!(out, "u,f")?;
    for (u, f) in profile.us.iter().zip(&profile.f) {
        writeln!(out, "{},{}", fmt_sig9(*u), fmt_sig9(*f))?;
    }
    Ok(())
}

/// Parse a `u,f` CSV back into a profile (fixed boundary mode).
pub fn read_profile_csv(text: &str) -> Result<FlowProfile, IoError> {
    let mut us = Vec::new();
    let mut fs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line.trim() != "u,f" {
                return Err(IoError::Csv {
                    line: 1,
                    why: "expected header 'u,f'".into(),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let u = parts
            .next()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .ok_or_else(|| IoError::Csv {
                line: i + 1,
                why: "bad u field".into(),
            })?;
        let f = parts
            .next()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .ok_or_else(|| IoError::Csv {
                line: i + 1,
                why: "bad f field".into(),
            })?;
        us.push(u);
        fs.push(f);
    }
    FlowProfile::new(us, fs, BoundaryMode::Fixed).map_err(|e| IoError::Csv {
        line: 0,
        why: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soliton::SolitonSpec;

    fn demo_spec() -> SolitonSpec {
        SolitonSpec::t1x(1.0, 2.0, 0.0, (0.2, 1.0), (-1.0, 1.0)).unwrap()
    }

    #[test]
    fn obj_has_expected_counts() {
        let mesh = MeshGrid::sample(&demo_spec(), 5, 4, 0.0).unwrap();
        let mut buf = Vec::new();
        write_obj(&mesh, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let vcount = text.lines().filter(|l| l.starts_with("v ")).count();
        let fcount = text.lines().filter(|l| l.starts_with("f ")).count();
        assert_eq!(vcount, 20);
        assert_eq!(fcount, 2 * 4 * 3);
        // indices stay in range
        for line in text.lines().filter(|l| l.starts_with("f ")) {
            for idx in line[2..].split_whitespace() {
                let idx: usize = idx.parse().unwrap();
                assert!(idx >= 1 && idx <= vcount);
            }
        }
    }

    #[test]
    fn degenerate_mesh_rejected() {
        assert!(matches!(
            MeshGrid::sample(&demo_spec(), 1, 4, 0.0),
            Err(IoError::DegenerateGrid { .. })
        ));
    }

    #[test]
    fn filenames_use_shortest_roundtrip() {
        assert_eq!(mesh_filename("T1X", 0.0), "T1X_t0.obj");
        assert_eq!(mesh_filename("T1Y", 0.5), "T1Y_t0.5.obj");
        assert_eq!(mesh_filename("T2Z", 2.0), "T2Z_t2.obj");
    }

    #[test]
    fn sig9_formatting_is_deterministic() {
        assert_eq!(fmt_sig9(1.0), "1.00000000e0");
        assert_eq!(fmt_sig9(-0.125), "-1.25000000e-1");
        assert_eq!(fmt_sig9(1.0 / 3.0), "3.33333333e-1");
    }

    #[test]
    fn profile_csv_round_trip() {
        use crate::graph_flow::{BoundaryMode, FlowProfile};
        let p = FlowProfile::sample(-1.0, 1.0, 21, |u| u * u, BoundaryMode::Fixed).unwrap();
        let mut buf = Vec::new();
        write_profile_csv(&p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("u,f\n"));
        let back = read_profile_csv(&text).unwrap();
        assert_eq!(back.us.len(), 21);
        for (a, b) in back.f.iter().zip(&p.f) {
            assert!((a - b).abs() < 1e-8);
        }
        assert!(read_profile_csv("x,y\n1,2\n").is_err());
    }

    #[test]
    fn residual_csv_header_and_rows() {
        use crate::soliton::soliton_residual;
        let spec = demo_spec();
        let report = soliton_residual(&spec, &[0.3, 0.6], &[-0.5, 0.0, 0.5], 0.0);
        let mut buf = Vec::new();
        write_residual_csv(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("u,v,residual"));
        assert_eq!(lines.count(), 6);
        let summary = ResidualSummary::of(&report);
        let json = serde_json::to_string(&summary).unwrap();
        assert!(json.contains("\"max_abs\""));
    }
}
