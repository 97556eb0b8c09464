use serde::Serialize;

use crate::error::{Error, Result};

/// Least-squares line through `(-log(1-r), log value)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute deviation from the line in log–log coordinates.
    pub residual: f64,
    pub window: FitWindow,
}

/// Radii actually used by a fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitWindow {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

pub const MIN_FIT_POINTS: usize = 4;

/// Fits `value ~ C (1-r)^{-slope}` to the samples whose radius lies in
/// `window` (inclusive; `None` uses all of them).
pub fn fit_exponent(samples: &[(f64, f64)], window: Option<(f64, f64)>) -> Result<FitResult> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .copied()
        .filter(|&(r, _)| window.is_none_or(|(lo, hi)| r >= lo && r <= hi))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::TooFewSamples {
            needed: MIN_FIT_POINTS,
            got: pts.len(),
        });
    }
    for w in pts.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(Error::Parameter(format!(
                "fit radii must increase strictly, got {} then {}",
                w[0].0, w[1].0
            )));
        }
    }
    let mut xy = Vec::with_capacity(pts.len());
    for &(r, v) in &pts {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::Parameter(format!("fit radius {r} outside [0, 1)")));
        }
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::NonPositiveSample { radius: r, value: v });
        }
        xy.push((-(-r).ln_1p(), v.ln()));
    }
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xy
        .iter()
        .map(|&(x, y)| (y - intercept - slope * x).abs())
        .fold(0.0, f64::max);
    Ok(FitResult {
        slope,
        intercept,
        residual,
        window: FitWindow {
            r_min: pts[0].0,
            r_max: pts[pts.len() - 1].0,
            points: pts.len(),
        },
    })
}

/// Radii `1 - 2^{-ℓ}` for `ℓ = start..=end`.
pub fn ladder_window(start: usize, end: usize) -> Vec<f64> {
    crate::quadrature::Ladder::window(start, end)
}
