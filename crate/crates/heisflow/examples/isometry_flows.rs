//! The four basic isometry flows and their Killing fields: closed forms,
//! pullback-metric residuals, Killing-equation residuals, and a control
//! map that is not an isometry.
//!
//! Run with: cargo run --example isometry_flows

use heisflow::heis::{CoordVector, Point};
use heisflow::isometry::{
    flow_apply, flow_generator_check, isometry_residual, killing_residual, killing_residual_field,
    pullback_residual_fd, IsometryGenerator, KillingField,
};

fn main() {
    let p = Point::new(0.8, -0.4, 1.1);

    println!("flow images of {:?} at t = 0.7:", (p.x, p.y, p.z));
    for gen in IsometryGenerator::ALL {
        let q = flow_apply(gen, 0.7, &p);
        println!(
            "  Ψ{}^0.7 -> ({:+.4}, {:+.4}, {:+.4})",
            gen.index(),
            q.x,
            q.y,
            q.z
        );
    }

    println!("\npullback-metric residuals (zero for isometries):");
    for gen in IsometryGenerator::ALL {
        for &t in &[-1.0, 0.3, 2.0] {
            let r = isometry_residual(gen, t, &p);
            println!("  Ψ{} at t={t:+.1}: {r:.3e}", gen.index());
        }
    }
    let control = pullback_residual_fd(|q| Point::new(2.0 * q.x, q.y, q.z), &Point::ORIGIN);
    println!("  control map (x,y,z)↦(2x,y,z) at origin: {control:.3e}  <- not an isometry");

    println!("\nKilling-equation residuals of the basis fields:");
    for i in 1..=4 {
        let field = KillingField::basis(i).unwrap();
        println!("  X{i}: {:.3e}", killing_residual_field(&field, &p));
    }
    let non_killing = killing_residual(
        |q| CoordVector::new(q.x, 0.0, 0.0),
        &Point::new(1.0, 0.0, 0.0),
    );
    println!("  control field x∂x at (1,0,0): {non_killing:.3e}  <- not Killing");

    println!("\ngenerator/flow matching |d/dt Ψᵗ(p)|₀ − X(p)|:");
    for gen in IsometryGenerator::ALL {
        let err = flow_generator_check(gen, &gen.killing_field(), &p);
        println!("  Ψ{} vs its generator: {err:.3e}", gen.index());
    }
    let sign_check = flow_generator_check(
        IsometryGenerator::Rotation,
        &KillingField::basis(1).unwrap(),
        &p,
    );
    println!("  Ψ1 vs +X1: {sign_check:.3e}  <- the rotation is generated by −X1, not X1");
}
