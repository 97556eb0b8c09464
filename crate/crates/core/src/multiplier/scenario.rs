use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::{Ratio, RatioReport};
use crate::error::{Error, Result};
use crate::function::{random_poly, CoefficientLaw, MultiplierSeq};
use crate::multiplier::probe::{condition_profile, ratio_between, ConditionValue, KernelLadder, NecessityProbe};
use crate::multiplier::TheoremHypothesis;
use crate::norms::{space_norm, QuadGrid};
use crate::par;
use crate::quadrature::Ladder;

/// Verdict on one multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentBounded,
    ConsistentUnbounded,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ConsistentBounded => "consistent-bounded",
            Verdict::ConsistentUnbounded => "consistent-unbounded",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Knobs of a multiplier scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSettings {
    pub dim: usize,
    /// Kernel multipliers use `|w| = 1 - 2^{-kernel_level}`.
    pub kernel_level: usize,
    /// The condition profile runs over ladder levels `0..=profile_depth`.
    pub profile_depth: usize,
    pub fit_levels: (usize, usize),
    pub necessity_levels: (usize, usize),
    pub corpus_size: usize,
    pub corpus_degree: usize,
    pub seed: u64,
    pub flat_slope: f64,
    pub max_variation: f64,
    /// Unbounded rows must reach this fraction of the predicted slope.
    pub slope_fraction: f64,
}

impl Default for ScenarioSettings {
    fn default() -> Self {
        Self {
            dim: 1,
            kernel_level: 16,
            profile_depth: 12,
            fit_levels: (4, 12),
            necessity_levels: (4, 10),
            corpus_size: 4,
            corpus_degree: 16,
            seed: 0,
            flat_slope: 0.05,
            max_variation: 3.0,
            slope_fraction: 0.8,
        }
    }
}

impl ScenarioSettings {
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !(1..=crate::MAX_DIM).contains(&self.dim) {
            v.push(format!("dim in 1..={} required (dim = {})", crate::MAX_DIM, self.dim));
        }
        if self.fit_levels.1 > self.profile_depth || self.fit_levels.1 < self.fit_levels.0 + 3 {
            v.push(format!(
                "fit_levels must span at least 4 levels within 0..={} (got {:?})",
                self.profile_depth, self.fit_levels
            ));
        }
        if self.necessity_levels.1 < self.necessity_levels.0 + 3 {
            v.push(format!(
                "necessity_levels must span at least 4 levels (got {:?})",
                self.necessity_levels
            ));
        }
        if self.kernel_level <= self.profile_depth || self.kernel_level > 40 {
            v.push(format!(
                "profile_depth < kernel_level ≤ 40 required (kernel_level = {})",
                self.kernel_level
            ));
        }
        if !(self.flat_slope >= 0.0) || !(self.max_variation > 1.0) || !(self.slope_fraction > 0.0) {
            v.push("flat_slope ≥ 0, max_variation > 1 and slope_fraction > 0 required".into());
        }
        v
    }

    pub fn kernel_radius(&self) -> f64 {
        1.0 - 0.5f64.powi(self.kernel_level as i32)
    }

    /// `grid` with the condition ladder fixed to `0..=profile_depth`.
    pub fn profile_grid(&self, grid: &QuadGrid) -> QuadGrid {
        grid.with_ladder(Ladder::fixed(0, self.profile_depth))
    }

    fn classify(&self, cond: &ConditionValue, nec: &NecessityProbe) -> Verdict {
        let flat = |s: Option<f64>| s.is_none_or(|s| s <= self.flat_slope);
        let k = cond.slope();
        let n = nec.slope();
        if flat(k) && flat(n) && nec.variation() < self.max_variation {
            Verdict::ConsistentBounded
        } else if !flat(k) && !flat(n) {
            Verdict::ConsistentUnbounded
        } else {
            Verdict::Inconclusive
        }
    }
}

/// One multiplier of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct GCase {
    pub id: String,
    /// Kernel exponent when `seq` is `(1 - w z)^{-(γ+1)}`.
    pub gamma: Option<f64>,
    pub seq: MultiplierSeq,
}

/// Kernel multipliers `(1 - w z)^{-(γ+1)}` at `γ = γ* + step·j`, `j = -half..=half`,
/// skipping `γ ≤ -1`.
pub fn kernel_sweep(gamma_star: f64, step: f64, half: usize, settings: &ScenarioSettings) -> Result<Vec<GCase>> {
    let w = vec![Complex64::new(settings.kernel_radius(), 0.0); settings.dim];
    let h = half as i64;
    (-h..=h)
        .map(|j| gamma_star + step * j as f64)
        .filter(|&g| g > -1.0)
        .map(|gamma| {
            Ok(GCase {
                id: format!("kernel[{gamma:+.2}]"),
                gamma: Some(gamma),
                seq: MultiplierSeq::kernel(w.clone(), gamma)?,
            })
        })
        .collect()
}

/// One row of a verdict table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplierVerdict {
    pub id: String,
    pub gamma: Option<f64>,
    /// Predicted growth slope `n(γ - γ*)` for kernel rows.
    pub predicted: Option<f64>,
    pub condition: Option<ConditionValue>,
    pub ratios: Option<RatioReport>,
    pub necessity: Option<NecessityProbe>,
    pub verdict: Verdict,
    /// Errors raised while evaluating this row.
    pub flags: Vec<String>,
}

impl MultiplierVerdict {
    pub fn k(&self) -> Option<f64> {
        self.condition.as_ref().map(|c| c.sup)
    }

    pub fn k_slope(&self) -> Option<f64> {
        self.condition.as_ref().and_then(|c| c.slope())
    }

    pub fn max_ratio(&self) -> Option<f64> {
        self.ratios.as_ref().and_then(|r| r.max)
    }

    pub fn necessity_slope(&self) -> Option<f64> {
        self.necessity.as_ref().and_then(|n| n.slope())
    }
}

/// Acceptance summary of a kernel sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioSummary {
    pub flips: usize,
    /// `γ` on either side of the single flip.
    pub flip_between: Option<(f64, f64)>,
    /// Bounded rows keep their necessity slope flat.
    pub bounded_slopes_ok: bool,
    /// Unbounded rows reach `slope_fraction` of the predicted slope.
    pub unbounded_slopes_ok: bool,
    /// The flip brackets `γ*` within one step.
    pub flip_at_threshold: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioTable {
    pub hypothesis: TheoremHypothesis,
    pub gamma_star: f64,
    pub tau: f64,
    pub rows: Vec<MultiplierVerdict>,
}

impl ScenarioTable {
    /// Gate over the kernel rows: one verdict flip, at the threshold, with
    /// slopes on each side as predicted.
    pub fn summary(&self, settings: &ScenarioSettings) -> ScenarioSummary {
        let rows: Vec<&MultiplierVerdict> = self.rows.iter().filter(|r| r.gamma.is_some()).collect();
        let mut flips = 0;
        let mut flip_between = None;
        for w in rows.windows(2) {
            if w[0].verdict != w[1].verdict {
                flips += 1;
                flip_between = Some((w[0].gamma.unwrap_or(f64::NAN), w[1].gamma.unwrap_or(f64::NAN)));
            }
        }
        let no_inconclusive = rows.iter().all(|r| r.verdict != Verdict::Inconclusive && r.flags.is_empty());
        let bounded_slopes_ok = rows
            .iter()
            .filter(|r| r.verdict == Verdict::ConsistentBounded)
            .all(|r| r.necessity_slope().is_none_or(|s| s <= settings.flat_slope));
        let unbounded_slopes_ok = rows.iter().filter(|r| r.verdict == Verdict::ConsistentUnbounded).all(|r| {
            match (r.necessity_slope(), r.predicted) {
                (Some(s), Some(p)) => s >= settings.slope_fraction * p,
                _ => false,
            }
        });
        let g = self.gamma_star;
        let flip_at_threshold = flips == 1
            && flip_between.is_some_and(|(a, b)| a <= g + 1e-12 && g < b && b - a < 0.5)
            && rows
                .iter()
                .all(|r| (r.verdict == Verdict::ConsistentBounded) == (r.gamma.unwrap_or(f64::NAN) <= g + 1e-12));
        ScenarioSummary {
            flips,
            flip_between,
            bounded_slopes_ok,
            unbounded_slopes_ok,
            flip_at_threshold,
            pass: flips == 1 && no_inconclusive && bounded_slopes_ok && unbounded_slopes_ok && flip_at_threshold,
        }
    }
}

/// Evaluates every multiplier in `cases` against `hyp`: the condition
/// profile, operator ratios over a random corpus and the test-kernel ladder,
/// and the necessity fit. Errors in one row mark that row inconclusive.
pub fn theorem_scenario(
    hyp: &TheoremHypothesis,
    cases: &[GCase],
    settings: &ScenarioSettings,
    grid: &QuadGrid,
) -> Result<ScenarioTable> {
    hyp.validate()?;
    let bad = settings.violations();
    if !bad.is_empty() {
        return Err(Error::Parameter(bad.join("; ")));
    }
    grid.validate()?;
    let source = hyp.source_spec()?;
    let target = hyp.target_spec()?;
    let dim = settings.dim;
    let ladder = KernelLadder::new(dim, hyp.m, settings.necessity_levels, &source, grid)?;
    let corpus = (0..settings.corpus_size)
        .map(|i| {
            let f = random_poly(
                settings.seed.wrapping_add(i as u64),
                dim,
                &vec![settings.corpus_degree; dim],
                CoefficientLaw::UnitDisk,
            )?;
            let den = space_norm(&f, &source, grid)?.value;
            Ok((f, den))
        })
        .collect::<Result<Vec<_>>>()?;
    let pgrid = settings.profile_grid(grid);
    let r_max = 1.0 - 0.5f64.powi(settings.profile_depth as i32);

    let rows = par::map(cases, |case| {
        let mut flags = Vec::new();
        let condition = case
            .seq
            .generating_function_for_radius(r_max, crate::function::DEFAULT_TAIL_TOL)
            .and_then(|g| condition_profile(&g, hyp.m, hyp.t, hyp.tau(), &pgrid, settings.fit_levels))
            .map_err(|e| flags.push(format!("condition: {e}")))
            .ok();
        let necessity = ladder
            .probe(&case.seq, &target, grid)
            .map_err(|e| flags.push(format!("necessity: {e}")))
            .ok();
        let ratios = (|| -> Result<RatioReport> {
            let mut cases: Vec<(String, Ratio)> = Vec::new();
            for (i, (f, den)) in corpus.iter().enumerate() {
                cases.push((format!("poly{i}"), ratio_between(&case.seq, f, &target, *den, grid)?));
            }
            if let Some(n) = &necessity {
                for p in &n.points {
                    cases.push((format!("kernel(w={})", p.w), p.ratio));
                }
            }
            Ok(RatioReport::from_cases(cases))
        })()
        .map_err(|e| flags.push(format!("ratios: {e}")))
        .ok();
        if let Some(r) = &ratios {
            if !r.all_finite() {
                flags.push("ratios: unbounded ratio in corpus".into());
            }
        }
        let verdict = match (&condition, &necessity) {
            (Some(c), Some(n)) if flags.is_empty() => settings.classify(c, n),
            _ => Verdict::Inconclusive,
        };
        MultiplierVerdict {
            id: case.id.clone(),
            gamma: case.gamma,
            predicted: case.gamma.map(|g| dim as f64 * (g - hyp.gamma_star())),
            condition,
            ratios,
            necessity,
            verdict,
            flags,
        }
    });
    Ok(ScenarioTable {
        hypothesis: *hyp,
        gamma_star: hyp.gamma_star(),
        tau: hyp.tau(),
        rows,
    })
}
