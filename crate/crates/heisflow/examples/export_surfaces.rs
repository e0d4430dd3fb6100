//! File export: OBJ meshes of a soliton family at several times plus a
//! residual CSV with its JSON summary sidecar — the same artifacts the
//! `mesh` and `residual` subcommands produce.
//!
//! Run with: cargo run --example export_surfaces

use std::fs;

use heisflow::io::{mesh_filename, write_obj, write_residual_csv, MeshGrid, ResidualSummary};
use heisflow::soliton::{soliton_residual, SolitonSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::temp_dir().join("heisflow-export-demo");
    fs::create_dir_all(&out_dir)?;

    let spec = SolitonSpec::t1y(0.5, -1.0, 0.0, (-1.3, 1.3), (-1.0, 1.0))?;

    for &t in &[0.0, 1.0, 2.0] {
        let mesh = MeshGrid::sample(&spec, 40, 40, t)?;
        let path = out_dir.join(mesh_filename(spec.family.name(), t));
        let mut file = fs::File::create(&path)?;
        write_obj(&mesh, &mut file)?;
        println!(
            "wrote {} ({} vertices, {} triangles)",
            path.display(),
            mesh.nu() * mesh.nv(),
            2 * (mesh.nu() - 1) * (mesh.nv() - 1)
        );
    }

    let report = soliton_residual(&spec, &spec.aligned_u_grid(50), &spec.v_grid(50), 0.5);
    let csv_path = out_dir.join("grim_residual.csv");
    let mut csv = fs::File::create(&csv_path)?;
    write_residual_csv(&report, &mut csv)?;
    let sidecar = csv_path.with_extension("csv.json");
    fs::write(
        &sidecar,
        serde_json::to_string_pretty(&ResidualSummary::of(&report))?,
    )?;
    println!(
        "wrote {} and {} (max |r| = {:.3e})",
        csv_path.display(),
        sidecar.display(),
        report.max_abs
    );
    Ok(())
}
