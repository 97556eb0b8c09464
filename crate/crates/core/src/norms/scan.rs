use serde::Serialize;

use crate::error::Result;
use crate::norms::QuadGrid;
use crate::par;
use crate::quadrature::{ladder_sup, SupStatus};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfilePoint {
    pub r: Vec<f64>,
    pub value: f64,
    /// `true` for points with all radii equal.
    pub diagonal: bool,
}

/// Samples of a radial profile along the boundary ladder and their supremum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupProfile {
    pub points: Vec<ProfilePoint>,
    pub sup: f64,
    pub argmax: Vec<f64>,
    /// Deepest diagonal level evaluated.
    pub depth: usize,
    pub status: SupStatus,
}

impl SupProfile {
    /// Diagonal samples as `(r, value)`.
    pub fn diagonal(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .filter(|p| p.diagonal)
            .map(|p| (p.r[0], p.value))
            .collect()
    }

    pub fn converged(&self) -> bool {
        self.status == SupStatus::Converged
    }
}

/// Supremum of `eval` over the diagonal ladder plus the seeded off-diagonal
/// points at or below the depth the diagonal scan reached.
pub(crate) fn scan_sup(
    dim: usize,
    grid: &QuadGrid,
    eval: impl Fn(&[f64]) -> Result<f64> + Sync + Send,
) -> Result<SupProfile> {
    let diag = ladder_sup(&grid.ladder, |rho| eval(&vec![rho; dim]))?;
    let mut out = SupProfile {
        points: diag
            .samples
            .iter()
            .map(|&(r, value)| ProfilePoint {
                r: vec![r; dim],
                value,
                diagonal: true,
            })
            .collect(),
        sup: diag.sup,
        argmax: vec![diag.argmax; dim],
        depth: diag.depth,
        status: diag.status,
    };
    let extra: Vec<Vec<f64>> = grid
        .off_diagonal_levels(dim)
        .into_iter()
        .filter(|t| t.iter().all(|&l| l <= diag.depth))
        .map(|t| t.iter().map(|&l| grid.level_radius(l)).collect())
        .collect();
    let vals = par::map(&extra, |r| eval(r));
    for (r, v) in extra.into_iter().zip(vals) {
        let value = v?;
        if value > out.sup {
            out.sup = value;
            out.argmax = r.clone();
        }
        out.points.push(ProfilePoint {
            r,
            value,
            diagonal: false,
        });
    }
    Ok(out)
}

/// `∏_j (1 - r_j)^s`.
pub(crate) fn boundary_weight(r: &[f64], s: f64) -> f64 {
    r.iter().map(|&x| (1.0 - x).powf(s)).product()
}
