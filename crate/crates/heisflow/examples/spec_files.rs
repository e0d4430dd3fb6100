//! Loading soliton families from JSON spec files (the format the `mesh`
//! and `residual` subcommands consume). The sample files live next to this
//! example in `examples/specs/`.
//!
//! Run with: cargo run --example spec_files

use heisflow::soliton::{soliton_residual, SolitonSpecFile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/specs");
    for name in [
        "t1x_translator.json",
        "grim_reaper.json",
        "t2z_riccati.json",
    ] {
        let text = std::fs::read_to_string(dir.join(name))?;
        let file: SolitonSpecFile = serde_json::from_str(&text)?;
        let spec = file.build()?;
        let report = soliton_residual(&spec, &spec.aligned_u_grid(15), &spec.v_grid(7), 0.5);
        let v_note = spec
            .v_star
            .map(|v| format!(" (profile reconstructed at v★={v})"))
            .unwrap_or_default();
        println!(
            "{name}: family {} on u∈[{}, {}], max |r| at t=0.5: {:.3e}{v_note}",
            spec.family, spec.u_range.0, spec.u_range.1, report.max_abs
        );
    }
    Ok(())
}
