use num_complex::Complex64;
use serde::Serialize;

use crate::analysis::{fit_exponent, FitResult, Ratio};
use crate::error::Result;
use crate::function::{bergman_kernel, CoeffFn, MultiplierSeq, Truncation};
use crate::multiplier::TheoremHypothesis;
use crate::norms::{space_norm, weighted_sup_profile, QuadGrid, SpaceSpec, SupProfile};
use crate::quadrature::SupStatus;

/// Fitted slopes at or below this count as flat.
pub const FLAT_SLOPE: f64 = 0.05;

/// Radius window `[1 - 2^{-a}, 1 - 2^{-b}]`.
pub fn level_window(a: usize, b: usize) -> (f64, f64) {
    (1.0 - 0.5f64.powi(a as i32), 1.0 - 0.5f64.powi(b as i32))
}

/// Profile of `r ↦ M_t(D^m g, r)(1-r)^τ` with its supremum and growth fit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionValue {
    pub sup: f64,
    pub status: SupStatus,
    pub tau: f64,
    pub profile: SupProfile,
    /// `None` when the profile vanishes identically.
    pub fit: Option<FitResult>,
    pub flat: bool,
}

impl ConditionValue {
    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }
}

pub(crate) fn condition_profile(
    g: &CoeffFn,
    m: usize,
    t: f64,
    tau: f64,
    grid: &QuadGrid,
    fit_levels: (usize, usize),
) -> Result<ConditionValue> {
    let profile = weighted_sup_profile(g, m, t, tau, grid)?;
    let diag = profile.diagonal();
    let fit = if diag.iter().all(|&(_, v)| v == 0.0) {
        None
    } else {
        Some(fit_exponent(&diag, Some(level_window(fit_levels.0, fit_levels.1)))?)
    };
    Ok(ConditionValue {
        sup: profile.sup,
        status: profile.status,
        tau,
        fit,
        flat: fit.is_none_or(|f| f.slope <= FLAT_SLOPE),
        profile,
    })
}

/// The multiplier condition `sup_r M_t(D^m g, r)(1-r)^τ`, `τ = m+1-1/p+β-α`,
/// along `grid.ladder`, with a growth fit over the ladder levels `fit_levels`.
pub fn condition_value(
    g: &CoeffFn,
    hyp: &TheoremHypothesis,
    grid: &QuadGrid,
    fit_levels: (usize, usize),
) -> Result<ConditionValue> {
    hyp.validate()?;
    condition_profile(g, hyp.m, hyp.t, hyp.tau(), grid, fit_levels)
}

pub(crate) fn ratio_between(c: &MultiplierSeq, f: &CoeffFn, target: &SpaceSpec, source_norm: f64, grid: &QuadGrid) -> Result<Ratio> {
    let num = space_norm(&c.hadamard(f)?, target, grid)?.value;
    Ok(Ratio::new(num, source_norm))
}

/// `‖M_c f‖_target / ‖f‖_source`.
pub fn operator_ratio(c: &MultiplierSeq, f: &CoeffFn, hyp: &TheoremHypothesis, grid: &QuadGrid) -> Result<Ratio> {
    hyp.validate()?;
    let den = space_norm(f, &hyp.source_spec()?, grid)?.value;
    ratio_between(c, f, &hyp.target_spec()?, den, grid)
}

/// `(1 - w z)^{-(m+1)}` with `w = (ρ, …, ρ)`.
pub fn test_kernel(dim: usize, rho: f64, m: usize) -> Result<CoeffFn> {
    bergman_kernel(&vec![Complex64::new(rho, 0.0); dim], m as f64, Truncation::auto())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NecessityPoint {
    /// `|w_j|` of the test kernel.
    pub w: f64,
    pub ratio: Ratio,
}

/// Ratios along the test-kernel ladder and their growth fit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NecessityProbe {
    pub points: Vec<NecessityPoint>,
    /// `None` when every ratio vanishes.
    pub fit: Option<FitResult>,
}

impl NecessityProbe {
    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }

    /// Largest ratio over the first one; 1 when all vanish.
    pub fn variation(&self) -> f64 {
        let vals: Vec<f64> = self.points.iter().filter_map(|p| p.ratio.value()).collect();
        match vals.first() {
            Some(&first) if first > 0.0 => vals.iter().fold(first, |a, &b| a.max(b)) / first,
            _ if vals.iter().all(|&v| v == 0.0) => 1.0,
            _ => f64::INFINITY,
        }
    }
}

/// Test kernels of one necessity ladder with their source norms, shared by
/// every multiplier probed against the same source space.
#[derive(Debug, Clone)]
pub(crate) struct KernelLadder {
    pub ws: Vec<f64>,
    pub fs: Vec<CoeffFn>,
    pub source_norms: Vec<f64>,
}

impl KernelLadder {
    pub fn new(dim: usize, m: usize, levels: (usize, usize), source: &SpaceSpec, grid: &QuadGrid) -> Result<Self> {
        let ws: Vec<f64> = (levels.0..=levels.1).map(|l| 1.0 - 0.5f64.powi(l as i32)).collect();
        let mut fs = Vec::with_capacity(ws.len());
        let mut source_norms = Vec::with_capacity(ws.len());
        for &w in &ws {
            let f = test_kernel(dim, w, m)?;
            source_norms.push(space_norm(&f, source, grid)?.value);
            fs.push(f);
        }
        Ok(Self { ws, fs, source_norms })
    }

    pub fn probe(&self, c: &MultiplierSeq, target: &SpaceSpec, grid: &QuadGrid) -> Result<NecessityProbe> {
        let mut points = Vec::with_capacity(self.ws.len());
        for ((&w, f), &den) in self.ws.iter().zip(&self.fs).zip(&self.source_norms) {
            points.push(NecessityPoint {
                w,
                ratio: ratio_between(c, f, target, den, grid)?,
            });
        }
        let samples: Vec<(f64, f64)> = points.iter().filter_map(|p| p.ratio.value().map(|v| (p.w, v))).collect();
        let fit = if samples.iter().all(|&(_, v)| v == 0.0) && samples.len() == points.len() {
            None
        } else {
            Some(fit_exponent(&samples, None)?)
        };
        Ok(NecessityProbe { points, fit })
    }
}

/// Growth of `‖M_c f_w‖_target / ‖f_w‖_source` as `w → 1` along the ladder
/// levels `levels`, with `f_w = (1 - w z)^{-(m+1)}` (so that `D^m` of the
/// multiplier's generating function is what the ratio sees).
pub fn necessity_probe(
    c: &MultiplierSeq,
    hyp: &TheoremHypothesis,
    levels: (usize, usize),
    grid: &QuadGrid,
) -> Result<NecessityProbe> {
    hyp.validate()?;
    KernelLadder::new(c.dim(), hyp.m, levels, &hyp.source_spec()?, grid)?.probe(c, &hyp.target_spec()?, grid)
}
