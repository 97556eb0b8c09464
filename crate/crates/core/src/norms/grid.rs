use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::min_grid_size;
use crate::quadrature::{Ladder, RadialRule};

/// Quadrature recipe: torus sizes, radial rules and the boundary ladder are
/// derived from it per function degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadGrid {
    /// Torus size per variable is at least `oversample · (2N_j + 1)`.
    pub oversample: usize,
    /// Floor on the torus size per variable, indexed by dimension `n - 1`.
    /// Means of `|f|^p` for `p ≠ 2` converge only algebraically in the torus
    /// size when `f` has zeros near the circle, so low-degree functions get
    /// far more points than the aliasing guard asks for.
    pub min_torus: [usize; crate::MAX_DIM],
    /// Gauss points per radial panel.
    pub radial_order: usize,
    /// Radial grading depth; `None` derives it from the degree.
    pub radial_depth: Option<usize>,
    pub ladder: Ladder,
    /// Seeded off-diagonal ladder points added for `n >= 2`.
    pub off_diagonal: usize,
    pub seed: u64,
    /// Relative stopping tolerance of the `M_∞` refinement.
    pub max_tol: f64,
}

impl Default for QuadGrid {
    fn default() -> Self {
        Self {
            oversample: 2,
            min_torus: [4096, 64, 16],
            radial_order: 16,
            radial_depth: None,
            ladder: Ladder::default(),
            off_diagonal: 8,
            seed: 0,
            max_tol: 1e-8,
        }
    }
}

/// Smallest integer `>= n` of the form `2^a 3^b 5^c`.
pub fn fft_size(n: usize) -> usize {
    let mut m = n.max(1);
    loop {
        let mut x = m;
        for p in [2, 3, 5] {
            while x.is_multiple_of(p) {
                x /= p;
            }
        }
        if x == 1 {
            return m;
        }
        m += 1;
    }
}

impl QuadGrid {
    /// The same recipe with torus and radial point counts doubled.
    pub fn refined(&self) -> Self {
        Self {
            oversample: self.oversample * 2,
            min_torus: self.min_torus.map(|m| m * 2),
            radial_order: self.radial_order * 2,
            ..self.clone()
        }
    }

    pub fn with_ladder(&self, ladder: Ladder) -> Self {
        Self {
            ladder,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        if self.oversample == 0 {
            errs.push("oversample >= 1 required".to_string());
        }
        if self.radial_order == 0 {
            errs.push("radial_order >= 1 required".to_string());
        }
        if self.ladder.substeps == 0 {
            errs.push("ladder substeps >= 1 required".to_string());
        }
        if self.ladder.max_depth < self.ladder.start {
            errs.push("ladder max_depth >= start required".to_string());
        }
        if !(self.ladder.tol >= 0.0) {
            errs.push("ladder tol >= 0 required".to_string());
        }
        if !(self.max_tol > 0.0) {
            errs.push("max_tol > 0 required".to_string());
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Parameter(errs.join("; ")))
        }
    }

    /// Torus size for one variable of degree `degree` in dimension `dim`.
    pub fn torus_size(&self, dim: usize, degree: usize) -> usize {
        let floor = self.min_torus[dim.clamp(1, crate::MAX_DIM) - 1];
        fft_size((self.oversample * min_grid_size(degree)).max(floor))
    }

    pub fn torus_sizes(&self, degree: &[usize]) -> Vec<usize> {
        degree.iter().map(|&n| self.torus_size(degree.len(), n)).collect()
    }

    /// Radial rule for the weight `(1-R)^gamma` resolving degree `degree`.
    pub fn radial_rule(&self, gamma: f64, degree: usize) -> Result<RadialRule> {
        let depth = self.radial_depth.unwrap_or_else(|| RadialRule::depth_for_degree(degree));
        RadialRule::new(gamma, self.radial_order, depth)
    }

    /// Tensor radial nodes `(R, weight)` for the weight `∏ (1-R_j)^gamma`.
    pub fn radial_nodes(&self, gamma: f64, degree: &[usize]) -> Result<Vec<(Vec<f64>, f64)>> {
        self.radial_nodes_min_depth(gamma, degree, 0)
    }

    /// As [`QuadGrid::radial_nodes`], grading each axis at least `min_depth` deep.
    pub fn radial_nodes_min_depth(&self, gamma: f64, degree: &[usize], min_depth: usize) -> Result<Vec<(Vec<f64>, f64)>> {
        let rules = degree
            .iter()
            .map(|&n| {
                let depth = self.radial_depth.unwrap_or_else(|| RadialRule::depth_for_degree(n));
                RadialRule::new(gamma, self.radial_order, depth.max(min_depth))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut nodes: Vec<(Vec<f64>, f64)> = vec![(Vec::new(), 1.0)];
        for rule in &rules {
            let mut next = Vec::with_capacity(nodes.len() * rule.len());
            for (r, w) in &nodes {
                for (x, v) in rule.nodes.iter().zip(&rule.weights) {
                    let mut r2 = r.clone();
                    r2.push(*x);
                    next.push((r2, w * v));
                }
            }
            nodes = next;
        }
        Ok(nodes)
    }

    /// Seeded off-diagonal level tuples for dimension `dim`, drawn from
    /// `start..=min_depth`. Every scan reaches `min_depth`, so all scans over
    /// the same grid see the same points. Empty for `dim = 1`.
    pub fn off_diagonal_levels(&self, dim: usize) -> Vec<Vec<usize>> {
        let lo = self.ladder.start;
        let hi = self.ladder.min_depth.min(self.ladder.max_depth).max(lo);
        if dim < 2 || hi == lo {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x6c61_6464_6572);
        let mut out = Vec::with_capacity(self.off_diagonal);
        while out.len() < self.off_diagonal {
            let t: Vec<usize> = (0..dim).map(|_| rng.random_range(lo..=hi)).collect();
            if t.iter().any(|&l| l != t[0]) {
                out.push(t);
            }
        }
        out
    }

    pub fn level_radius(&self, level: usize) -> f64 {
        1.0 - 0.5f64.powi(level as i32)
    }
}
