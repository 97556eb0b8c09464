use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::MultiplierSeq;
use crate::multiplier::probe::{condition_profile, ConditionValue, KernelLadder, NecessityProbe};
use crate::multiplier::ScenarioSettings;
use crate::norms::{QuadGrid, SpaceSpec};

/// Growth-rate condition `sup_r M_p(D^m g, r)(1-r)^τ`, `τ = m+1+s-1/p`,
/// for multipliers from `H^v` into `F^{p,∞}_s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropositionParams {
    pub v: f64,
    pub p: f64,
    pub s: f64,
    pub m: usize,
}

impl PropositionParams {
    pub fn violations(&self) -> Vec<String> {
        let PropositionParams { v, p, s, m } = *self;
        let mut out = Vec::new();
        if !(v > 0.0 && v <= p && p.is_finite()) {
            out.push(format!("0 < v ≤ p required (v = {v}, p = {p})"));
        }
        if !(s > 0.0 && s.is_finite()) {
            out.push(format!("s > 0 required (s = {s})"));
        }
        if !(m as f64 > 1.0 / p - 1.0 - s) {
            out.push(format!("m > 1/p - 1 - s required (m = {m}, 1/p - 1 - s = {})", 1.0 / p - 1.0 - s));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Hypothesis(v))
        }
    }

    pub fn tau(&self) -> f64 {
        self.m as f64 + 1.0 + self.s - 1.0 / self.p
    }

    /// Kernel exponent where `(1 - z)^{-(γ+1)}` crosses the condition: `s`.
    pub fn gamma_star(&self) -> f64 {
        self.s
    }

    /// Predicted ratio-growth slope of the kernel multiplier with exponent
    /// `γ` against the test kernels, per variable.
    pub fn predicted_slope(&self, gamma: f64) -> f64 {
        gamma - self.s - 1.0 / self.p + 1.0 / self.v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropositionReport {
    pub params: PropositionParams,
    pub condition: ConditionValue,
    /// `‖M_c f_w‖_{F^{p,∞}_s} / ‖f_w‖_{H^v}` along the test kernels.
    pub ratios: NecessityProbe,
}

/// Condition profile and ratio probe for the multiplier `c`.
pub fn proposition_probe(
    c: &MultiplierSeq,
    params: &PropositionParams,
    settings: &ScenarioSettings,
    grid: &QuadGrid,
) -> Result<PropositionReport> {
    params.validate()?;
    let bad = settings.violations();
    if !bad.is_empty() {
        return Err(Error::Parameter(bad.join("; ")));
    }
    let r_max = 1.0 - 0.5f64.powi(settings.profile_depth as i32);
    let g = c.generating_function_for_radius(r_max, crate::function::DEFAULT_TAIL_TOL)?;
    let condition = condition_profile(
        &g,
        params.m,
        params.p,
        params.tau(),
        &settings.profile_grid(grid),
        settings.fit_levels,
    )?;
    let source = SpaceSpec::hardy(params.v)?;
    let target = SpaceSpec::limit_f(params.p, params.s)?;
    let ladder = KernelLadder::new(c.dim(), params.m, settings.necessity_levels, &source, grid)?;
    let ratios = ladder.probe(c, &target, grid)?;
    Ok(PropositionReport {
        params: *params,
        condition,
        ratios,
    })
}
