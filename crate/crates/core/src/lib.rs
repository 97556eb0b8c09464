//! Holomorphic mixed-norm function spaces on the unit polydisc.
//!
//! Functions are truncated coefficient tensors ([`function::CoeffFn`]).
//! [`norms`] evaluates the Hardy, mixed-norm, Lizorkin–Triebel, sup-type and
//! limit-space (quasi) norms by torus × radial quadrature. [`analysis`]
//! checks the identities and inequalities that relate them, and
//! [`multiplier`] probes coefficient-multiplier characterizations between
//! those spaces.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod function;
pub mod multiplier;
pub mod norms;
pub mod par;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};

/// Largest supported number of complex variables.
pub const MAX_DIM: usize = 3;

/// Storage limit for a dense coefficient tensor.
pub const MAX_ENTRIES: usize = 1 << 24;

/// Storage limit for a torus grid.
pub const MAX_GRID_POINTS: usize = 1 << 24;
