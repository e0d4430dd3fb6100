//! Differential geometry of the three-dimensional Riemannian Heisenberg
//! group, with a focus on mean curvature flow (MCF) solitons whose initial
//! data are ruled surfaces.
//!
//! What lives where:
//!
//! - [`heis`] — the ambient space: metric, orthonormal frame, Levi-Civita
//!   connection, coordinate Christoffel symbols.
//! - [`surface`] — second-order jets of parametrized surfaces, unit normal,
//!   fundamental forms, mean curvature, and the normal-speed defect
//!   r = ⟨∂ₜΦ, N⟩ − H.
//! - [`isometry`] — the Killing fields X₁..X₄, their one-parameter flows
//!   Ψ₁..Ψ₄, and numeric isometry / Killing-equation checks.
//! - [`geodesic`] — closed-form geodesics through the origin plus a fixed
//!   step RK4 integrator and a residual oracle.
//! - [`soliton`] — the six ruled MCF soliton families (three with vertical
//!   rulings, three with horizontal rulings), their profile ODE solvers,
//!   and residual reporting.
//! - [`graph_flow`] — direct explicit evolution of the scalar graph PDE
//!   fₜ = f″/(2(1+f′²)), used to cross-check solitons against genuine flow.
//! - [`io`] — OBJ mesh and CSV grid export with deterministic formatting.
//! - [`verify`] — seeded, machine-readable verification suites behind the
//!   `verify` CLI subcommand.
//!
//! Every quantity is dimensionless; all floats are `f64`. Library
//! operations are pure functions of their inputs and safe to call from
//! multiple threads; residual grids are evaluated in parallel with rayon
//! and assembled deterministically.

pub mod geodesic;
pub mod graph_flow;
pub mod heis;
pub mod io;
pub mod isometry;
pub mod soliton;
pub mod surface;
pub mod verify;

pub use heis::{CoordVector, FrameVector, Point};
