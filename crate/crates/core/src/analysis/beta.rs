use crate::analysis::{fit_exponent, FitResult};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_endpoint_weighted, Tolerance};

/// `∫_0^1 (1-R)^α (1-Rr)^{-λ} dR`.
pub fn beta_integral(r: f64, alpha: f64, lambda: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Parameter(format!("r must lie in [0, 1), got {r}")));
    }
    if !(alpha > -1.0) {
        return Err(Error::Parameter(format!("alpha > -1 required, got alpha = {alpha}")));
    }
    // in u = 1-R the integrand is u^α (δ + r u)^{-λ}, δ = 1-r: panels [0, δ], [δ, 2δ], ...
    let delta = 1.0 - r;
    let g = |u: f64| (delta + r * u).powf(-lambda);
    let head = delta.min(1.0);
    let mut total = head.powf(alpha + 1.0)
        * integrate_endpoint_weighted(|x| g(head * (1.0 - x)), alpha, Tolerance::default())?.value;
    let mut lo = head;
    while lo < 1.0 {
        let hi = (2.0 * lo).min(1.0);
        total += integrate(|u| u.powf(alpha) * g(u), lo, hi, Tolerance::default())?.value;
        lo = hi;
    }
    Ok(total)
}

/// Power-law fit of [`beta_integral`] over the radii `ladder`.
pub fn beta_integral_exponent(alpha: f64, lambda: f64, ladder: &[f64]) -> Result<FitResult> {
    if !(lambda > alpha + 1.0) {
        return Err(Error::Parameter(format!(
            "lambda > alpha + 1 required for a power law, got alpha = {alpha}, lambda = {lambda}"
        )));
    }
    let samples = ladder
        .iter()
        .map(|&r| Ok((r, beta_integral(r, alpha, lambda)?)))
        .collect::<Result<Vec<_>>>()?;
    fit_exponent(&samples, None)
}
