//! Quadrature rules: Gauss–Jacobi, graded radial rules with the endpoint
//! weight built in, adaptive Gauss–Kronrod and the geometric boundary ladder.

mod adaptive;
mod gauss;
mod ladder;
mod radial;

pub use adaptive::{integrate, integrate_endpoint_weighted, Integral, Tolerance};
pub use gauss::{gauss_jacobi, gauss_legendre, Rule};
pub use ladder::{ladder_sup, Ladder, LadderSup, SupStatus, MAX_LADDER_LEVEL};
pub use radial::RadialRule;
