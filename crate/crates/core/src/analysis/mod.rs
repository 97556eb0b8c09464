//! Identities and inequalities relating the norms: the pairing formula,
//! volume-integral embeddings, the DS estimate, the beta-integral bound and
//! power-law fits of boundary growth.

mod beta;
mod fit;
mod pairing;
mod ratio;
mod volume;

pub use beta::{beta_integral, beta_integral_exponent};
pub use fit::{fit_exponent, ladder_window, FitResult, FitWindow, MIN_FIT_POINTS};
pub use pairing::{
    coefficient_pairing, lp_pairing_lhs, lp_pairing_rhs, pairing_diagonal, pairing_rhs_diagonal, PairingDiagonal,
    PairingVariant,
};
pub use ratio::{Ratio, RatioReport};
pub use volume::{ds_ratio, embedding_ratio, mean_growth_ratio, EmbeddingSource};
