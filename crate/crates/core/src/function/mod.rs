//! Holomorphic functions on the polydisc as truncated coefficient tensors,
//! the test families used by the harness, and the two diagonal operators
//! (fractional derivative and Hadamard multiplier).

pub(crate) mod coeff;
mod corpus;
mod io;
mod kernel;
mod multiplier;
mod torus;

pub use coeff::{CoeffFn, MultiIndex};
pub use corpus::{lacunary_series, random_poly, CoefficientLaw};
pub use io::{parse_coefficients, write_coefficients};
pub use kernel::{
    bergman_kernel, kernel_closed_form, kernel_degree, kernel_tail_bound, Truncation, DEFAULT_TAIL_TOL,
    MAX_KERNEL_DEGREE,
};
pub use multiplier::{hadamard, MultiplierRule, MultiplierSeq};
pub use torus::{evaluate_torus_grid, min_grid_size, TorusValues};
