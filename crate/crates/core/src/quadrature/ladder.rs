use serde::{Deserialize, Serialize};

use crate::par;

/// Geometric boundary ladder `r = 1 - 2^{-ℓ/substeps}`.
///
/// Suprema over `I^n` are taken along this ladder: power-of-`(1-r)` growth
/// shows up as a straight line in `-log(1-r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ladder {
    /// First rung index (0 gives `r = 0`).
    pub start: usize,
    /// Rungs evaluated before convergence is tested.
    pub min_depth: usize,
    /// Hard cap on the rung index.
    pub max_depth: usize,
    /// Rungs per halving of `1 - r`.
    pub substeps: usize,
    /// Relative change of the running supremum that counts as converged.
    pub tol: f64,
}

/// Deepest rung index at which `1 - 2^{-ℓ}` is still below one in `f64`.
pub const MAX_LADDER_LEVEL: usize = 50;

impl Default for Ladder {
    fn default() -> Self {
        Self {
            start: 0,
            min_depth: 12,
            max_depth: 48,
            substeps: 1,
            tol: 1e-6,
        }
    }
}

impl Ladder {
    /// Fixed ladder covering levels `start..=end` exactly.
    pub fn fixed(start: usize, end: usize) -> Self {
        Self {
            start,
            min_depth: end,
            max_depth: end,
            substeps: 1,
            tol: 0.0,
        }
    }

    /// Radius of rung `i` (in substep units).
    pub fn radius(&self, i: usize) -> f64 {
        1.0 - 0.5f64.powf(i as f64 / self.substeps as f64)
    }

    /// Rung indices `start·substeps ..= depth·substeps`.
    pub fn rungs_to(&self, depth: usize) -> impl Iterator<Item = usize> {
        let s = self.substeps.max(1);
        (self.start * s)..=(depth.min(MAX_LADDER_LEVEL) * s)
    }

    pub fn radii_to(&self, depth: usize) -> Vec<f64> {
        self.rungs_to(depth).map(|i| self.radius(i)).collect()
    }

    /// The levels `start..=end` as radii, one per level.
    pub fn window(start: usize, end: usize) -> Vec<f64> {
        (start..=end).map(|l| 1.0 - 0.5f64.powi(l as i32)).collect()
    }
}

/// Outcome of a supremum taken along a ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupStatus {
    Converged,
    /// The running supremum still moved by more than the tolerance at the cap.
    Unconverged,
}

/// Supremum along a ladder together with every sample taken.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderSup {
    pub sup: f64,
    pub argmax: f64,
    /// Deepest whole level evaluated.
    pub depth: usize,
    pub status: SupStatus,
    /// `(r, value)` in ladder order.
    pub samples: Vec<(f64, f64)>,
}

/// Running supremum of `f` along the ladder. Past `min_depth`, the scan stops
/// at the first whole level that changes the supremum by less than `tol`
/// (relative) over the previous level; at `max_depth` it stops unconverged.
///
/// Rungs are evaluated in speculative chunks on the worker pool and folded in
/// ladder order, so the result does not depend on the pool size.
pub fn ladder_sup<E: Send>(
    ladder: &Ladder,
    f: impl Fn(f64) -> Result<f64, E> + Sync + Send,
) -> Result<LadderSup, E> {
    let s = ladder.substeps.max(1);
    let max_depth = ladder.max_depth.min(MAX_LADDER_LEVEL).max(ladder.start);
    let last = max_depth * s;
    let mut out = LadderSup {
        sup: f64::NEG_INFINITY,
        argmax: 0.0,
        depth: ladder.start,
        status: SupStatus::Unconverged,
        samples: Vec::new(),
    };
    let mut level_sup = f64::NEG_INFINITY;
    let mut i = ladder.start * s;
    while i <= last {
        let chunk = par::width().min(last - i + 1);
        let base = i;
        let vals = par::map_range(chunk, |j| f(ladder.radius(base + j)));
        for v in vals {
            let r = ladder.radius(i);
            let v = v?;
            out.samples.push((r, v));
            if v > out.sup {
                out.sup = v;
                out.argmax = r;
            }
            if i.is_multiple_of(s) {
                let level = i / s;
                out.depth = level;
                if level >= ladder.min_depth {
                    let change = if level_sup.is_finite() {
                        (out.sup - level_sup).abs()
                    } else {
                        f64::INFINITY
                    };
                    if change <= ladder.tol * out.sup.abs() {
                        out.status = SupStatus::Converged;
                        return Ok(out);
                    }
                    if level >= max_depth {
                        if ladder.tol == 0.0 && ladder.min_depth >= ladder.max_depth {
                            out.status = SupStatus::Converged;
                        }
                        return Ok(out);
                    }
                }
                level_sup = out.sup;
            }
            i += 1;
        }
    }
    Ok(out)
}
