//! Geodesics: the closed-form helix family, the straight-line limits, and
//! the RK4 integrator checked against the closed form.
//!
//! Run with: cargo run --example geodesics

use heisflow::geodesic::{
    geodesic_closed_form, geodesic_horizontal, geodesic_integrate, geodesic_residual,
    GeodesicParams,
};
use heisflow::heis::Point;
use heisflow::surface::linspace;

fn main() {
    let params = GeodesicParams::new(1.0, 0.0, 1.0).unwrap();
    println!("helix with A=1, B=0, C=1 (speed {:.4}):", params.speed());
    for &u in &[0.0, 1.0, 2.0, 5.0] {
        let p = geodesic_closed_form(&params, u);
        println!("  u={u:>4}: ({:+.5}, {:+.5}, {:+.5})", p.x, p.y, p.z);
    }

    let grid = linspace(-3.0, 3.0, 41);
    let residual = geodesic_residual(|u| geodesic_closed_form(&params, u), &grid).unwrap();
    println!("geodesic-equation residual of the closed form: {residual:.3e}");

    let vertical = GeodesicParams::new(0.0, 0.0, 1.0).unwrap();
    let pv = geodesic_closed_form(&vertical, 2.0);
    println!(
        "\nA=0, C=1 limit (vertical line): u=2 -> ({}, {}, {})",
        pv.x, pv.y, pv.z
    );
    let ph = geodesic_horizontal(1.0, 2.0, 2.0);
    println!(
        "C=0 limit (horizontal line, A=1, B=2): u=2 -> ({}, {}, {})",
        ph.x, ph.y, ph.z
    );
    let horiz_res = geodesic_residual(|u| geodesic_horizontal(1.0, 2.0, u), &grid).unwrap();
    println!("horizontal line residual: {horiz_res:.3e}");

    println!("\nRK4 integrator vs closed form (length 5):");
    for steps in [50usize, 100, 5000] {
        let path =
            geodesic_integrate(&Point::ORIGIN, &params.initial_velocity(), 5.0, steps).unwrap();
        let worst = path
            .samples
            .iter()
            .map(|s| s.point.chart_dist(&geodesic_closed_form(&params, s.u)))
            .fold(0.0, f64::max);
        println!(
            "  {steps:>5} steps: max deviation {worst:.3e}, speed² drift {:.3e}",
            path.speed_sq_drift()
        );
    }
}
