//! Quadrature grids and the (quasi) norms of the six space families.

mod grid;
mod means;
mod scan;
mod space;
mod spec;

pub use grid::{fft_size, QuadGrid};
pub use means::m_p_norm;
pub use scan::{ProfilePoint, SupProfile};
pub use space::{space_norm, weighted_sup_profile, NormResult};
pub use spec::SpaceSpec;
