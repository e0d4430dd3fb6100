//! The Grim Reaper: a y-translating soliton with vertical rulings whose
//! profile is −log cos u, verified two independent ways — through the
//! geometric residual r = ⟨∂ₜΦ, N⟩ − H, and by evolving the graph PDE
//! fₜ = f″/(2(1+f′²)) directly from the same initial profile.
//!
//! Run with: cargo run --release --example grim_reaper

use heisflow::graph_flow::{
    compare_to_oracle, evolve, grim_reaper_profile, grim_reaper_solution, StepSize,
};
use heisflow::soliton::{family_ode_residual, soliton_residual, SolitonSpec};

fn main() {
    // A = ½, C = 0, B = −1: profile f(u) = −log cos u on |u| < π/2.
    let spec = SolitonSpec::t1y(0.5, -1.0, 0.0, (-1.3, 1.3), (-1.0, 1.0)).unwrap();

    let us = spec.aligned_u_grid(27);
    let vs = spec.v_grid(9);
    println!("geometric soliton residual on a 27×9 grid:");
    for &t in &[0.0, 0.5, 1.0] {
        let report = soliton_residual(&spec, &us, &vs, t);
        println!(
            "  t={t:>3}: max |r| = {:.3e}, mean |r| = {:.3e}",
            report.max_abs, report.mean_abs
        );
    }

    let worst_ode = us
        .iter()
        .map(|&u| family_ode_residual(&spec, u, 0.0).unwrap().abs())
        .fold(0.0, f64::max);
    println!("profile ODE residual f″ − 2A(1+f′²): max {worst_ode:.3e}");

    println!("\ndirect PDE cross-check (explicit scheme, oracle boundaries):");
    for dx in [4e-3, 2e-3] {
        let profile = grim_reaper_profile(0.5, 1.3, dx).unwrap();
        let snapshots = evolve(&profile, StepSize::Auto, 0.2, 0).unwrap();
        let err = compare_to_oracle(snapshots.last().unwrap(), grim_reaper_solution(0.5));
        println!("  dx={dx:.0e}: interior L∞ error vs f(u,0) + t/2 after T=0.2: {err:.3e}");
    }
    println!("(halving dx divides the error by ≈4: the scheme is second order in space)");
}
