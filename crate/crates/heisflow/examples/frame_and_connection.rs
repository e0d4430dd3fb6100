//! Tour of the ambient geometry: metric, orthonormal frame, cross product,
//! connection table, and coordinate Christoffel symbols.
//!
//! Run with: cargo run --example frame_and_connection

use heisflow::heis::{
    christoffel_at, coord_to_frame, covderiv_frame, frame_cross, frame_table_recovery_error,
    frame_to_coord, inner, metric_at, CoordVector, FrameVector, Point,
};

fn main() {
    let p = Point::new(1.0, 2.0, 3.0);

    println!("metric at {:?}:", (p.x, p.y, p.z));
    let g = metric_at(&p);
    for row in &g.0 {
        println!("  {:8.4} {:8.4} {:8.4}", row[0], row[1], row[2]);
    }
    println!("  det g = {}", g.det());

    println!(
        "\nframe decomposition of ∂x at p: {:?}",
        coord_to_frame(&p, &CoordVector::DX)
    );
    println!("round trip ∂y -> frame -> coords: {:?}", {
        let a = coord_to_frame(&p, &CoordVector::DY);
        frame_to_coord(&p, &a)
    });
    println!(
        "⟨∂x, ∂x⟩ at p = {} (matrix) = {} (frame route)",
        inner(&p, &CoordVector::DX, &CoordVector::DX),
        coord_to_frame(&p, &CoordVector::DX).dot(&coord_to_frame(&p, &CoordVector::DX))
    );

    println!("\nframe cross products:");
    println!(
        "  E1 × E2 = {:?}",
        frame_cross(&FrameVector::E1, &FrameVector::E2)
    );
    println!(
        "  E2 × E3 = {:?}",
        frame_cross(&FrameVector::E2, &FrameVector::E3)
    );

    println!("\nconnection table ∇_Ei Ej:");
    for i in 1..=3 {
        for j in 1..=3 {
            let v = covderiv_frame(i, j).unwrap();
            if v.norm() > 0.0 {
                println!("  ∇_E{i} E{j} = ({}, {}, {})", v.a1, v.a2, v.a3);
            }
        }
    }

    let gamma = christoffel_at(&p);
    println!("\nsample coordinate Christoffels at p:");
    println!("  Γ^x_yz = {:.6}", gamma.gamma(0, 1, 2));
    println!("  Γ^y_xz = {:.6}", gamma.gamma(1, 0, 2));
    println!("  Γ^z_xy = {:.6}", gamma.gamma(2, 0, 1));
    println!(
        "frame table recovered from coordinate Christoffels, max deviation: {:.3e}",
        frame_table_recovery_error(&p)
    );
}
