use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::analysis::Ratio;
use crate::error::{Error, Result};
use crate::function::{evaluate_torus_grid, CoeffFn};
use crate::norms::{m_p_norm, space_norm, QuadGrid, SpaceSpec};
use crate::par;

/// `∫_{D^n} |f(w)|^s ∏_j (1-|w_j|)^gamma h(|w|) dV(w)` with `dV` the
/// Lebesgue measure, `dV = ∏ 2π R_j dR_j dξ_j` in polar coordinates.
/// `min_depth` forces extra radial grading when `h` is sharp near `R = 1`.
pub(crate) fn volume_integral(
    f: &CoeffFn,
    s: f64,
    gamma: f64,
    h: impl Fn(&[f64]) -> f64 + Sync + Send,
    min_depth: usize,
    grid: &QuadGrid,
) -> Result<f64> {
    if f.is_zero() {
        return Ok(0.0);
    }
    let nodes = grid.radial_nodes_min_depth(gamma, f.degree(), min_depth)?;
    let sizes = grid.torus_sizes(f.degree());
    let terms = par::map(&nodes, |(r, w)| -> Result<f64> {
        let vals = evaluate_torus_grid(f, r, &sizes)?;
        let jac: f64 = r.iter().product();
        Ok(w * jac * h(r) * vals.mean_abs_pow(s))
    });
    let mut sum = 0.0;
    for t in terms {
        sum += t?;
    }
    Ok(sum * TAU.powi(f.dim() as i32))
}

/// The norm on the right of the embedding inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddingSource {
    TriebelF,
    MixedA,
}

fn require(errs: &mut Vec<String>, ok: bool, msg: impl Into<String>) {
    if !ok {
        errs.push(msg.into());
    }
}

fn finish(errs: Vec<String>) -> Result<()> {
    if errs.is_empty() {
        Ok(())
    } else {
        Err(Error::Parameter(errs.join("; ")))
    }
}

/// `(∫ |f|^s (1-|w|)^{s(α+1/p)-2} dV)^{1/s}` over the `F^{p,q}_α` or
/// `A^{p,q}_α` norm of `f`.
pub fn embedding_ratio(
    f: &CoeffFn,
    p: f64,
    q: f64,
    s: f64,
    alpha: f64,
    source: EmbeddingSource,
    grid: &QuadGrid,
) -> Result<Ratio> {
    let mut errs = Vec::new();
    require(
        &mut errs,
        p > 0.0 && q > 0.0 && p.max(q) <= s && s.is_finite(),
        format!("0 < max(p, q) <= s < inf required, got p = {p}, q = {q}, s = {s}"),
    );
    require(&mut errs, alpha > 0.0, format!("alpha > 0 required, got alpha = {alpha}"));
    finish(errs)?;
    let lhs = volume_integral(f, s, s * (alpha + 1.0 / p) - 2.0, |_| 1.0, 0, grid)?.powf(1.0 / s);
    let spec = match source {
        EmbeddingSource::TriebelF => SpaceSpec::triebel_f(p, q, alpha)?,
        EmbeddingSource::MixedA => SpaceSpec::mixed_a(p, q, alpha)?,
    };
    let rhs = space_norm(f, &spec, grid)?.value;
    Ok(Ratio::new(lhs, rhs))
}

/// `M_t(f, r) ∏(1-r_j)^β` over `(∫ |f|^t (1-|z|)^{tβ-1} dV)^{1/t}`.
pub fn mean_growth_ratio(f: &CoeffFn, t: f64, beta: f64, r: &[f64], grid: &QuadGrid) -> Result<Ratio> {
    let mut errs = Vec::new();
    require(&mut errs, t > 0.0 && t.is_finite(), format!("t > 0 required, got t = {t}"));
    require(&mut errs, beta > 0.0, format!("beta > 0 required, got beta = {beta}"));
    finish(errs)?;
    if f.is_zero() {
        return Ok(Ratio::DegenerateZero);
    }
    let weight: f64 = r.iter().map(|&x| (1.0 - x).powf(beta)).product();
    let lhs = m_p_norm(f, r, t, grid)? * weight;
    let rhs = volume_integral(f, t, t * beta - 1.0, |_| 1.0, 0, grid)?.powf(1.0 / t);
    Ok(Ratio::new(lhs, rhs))
}

/// Left side over right side of the DS estimate
/// `∫ |f|^t (1-|w|)^q dV ≤ C (∫ |f|^{vt} (1-|w|)^{2v-2+qv} dV)^{1/v}`.
///
/// With `shift = Some(r)` the weights become `(1-|w|r)^q` on the left and
/// `(1-|w|r)^{qv} (1-|w|)^{2v-2}` on the right.
pub fn ds_ratio(f: &CoeffFn, v: f64, q: f64, t: f64, shift: Option<&[f64]>, grid: &QuadGrid) -> Result<Ratio> {
    let mut errs = Vec::new();
    require(&mut errs, t > 0.0 && t.is_finite(), format!("t > 0 required, got t = {t}"));
    match shift {
        None => {
            require(&mut errs, v > 0.0 && v <= 1.0, format!("0 < v <= 1 required, got v = {v}"));
            require(&mut errs, q > 1.0 / v - 2.0, format!("q > 1/v - 2 required, got q = {q}, v = {v}"));
        }
        Some(r) => {
            require(&mut errs, v > 0.5 && v <= 1.0, format!("1/2 < v <= 1 required, got v = {v}"));
            require(
                &mut errs,
                r.len() == f.dim() && r.iter().all(|x| (0.0..1.0).contains(x)),
                format!("shift radius must lie in [0, 1)^{}, got {r:?}", f.dim()),
            );
        }
    }
    finish(errs)?;
    if f.is_zero() {
        return Ok(Ratio::DegenerateZero);
    }
    let (lhs, rhs) = match shift {
        None => (
            volume_integral(f, t, q, |_| 1.0, 0, grid)?,
            volume_integral(f, v * t, 2.0 * v - 2.0 + q * v, |_| 1.0, 0, grid)?,
        ),
        Some(r) => {
            let shifted = |e: f64| {
                move |rr: &[f64]| -> f64 { rr.iter().zip(r).map(|(&x, &y)| (1.0 - x * y).powf(e)).product() }
            };
            // resolve the scale 1 - r of the shifted weight
            let depth = r
                .iter()
                .filter(|&&y| y > 0.0)
                .map(|&y| (-(1.0 - y).log2()).ceil() as usize + 2)
                .max()
                .unwrap_or(0);
            (
                volume_integral(f, t, 0.0, shifted(q), depth, grid)?,
                volume_integral(f, v * t, 2.0 * v - 2.0, shifted(q * v), depth, grid)?,
            )
        }
    };
    Ok(Ratio::new(lhs, rhs.powf(1.0 / v)))
}
