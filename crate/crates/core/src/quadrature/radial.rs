use crate::error::Result;
use crate::quadrature::gauss::{gauss_jacobi, gauss_legendre};

/// Quadrature on `[0, 1)` for `∫_0^1 (1-R)^γ φ(R) dR`.
///
/// The interval is split at `1 - 2^{-j}`, `j = 1..=depth`. Interior panels
/// use Gauss–Legendre with the weight folded into the weights; the panel
/// touching `R = 1` uses Gauss–Jacobi with the weight built in. With
/// `depth = 0` the rule is a single Gauss–Jacobi rule, exact for
/// `(1-R)^γ` times polynomials of degree `< 2·order`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialRule {
    pub gamma: f64,
    pub order: usize,
    pub depth: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl RadialRule {
    pub fn new(gamma: f64, order: usize, depth: usize) -> Result<Self> {
        let jac = gauss_jacobi(order, gamma, 0.0)?;
        // maps (1-x)^γ on [-1,1] to (1-s)^γ on [0,1]
        let jac_scale = 2f64.powf(-gamma - 1.0);
        let leg = if depth > 0 { Some(gauss_legendre(order)?) } else { None };
        let mut nodes = Vec::with_capacity(order * (depth + 1));
        let mut weights = Vec::with_capacity(order * (depth + 1));
        for j in 0..depth {
            let lo = 1.0 - 0.5f64.powi(j as i32);
            let hi = 1.0 - 0.5f64.powi(j as i32 + 1);
            let panel = leg.as_ref().expect("legendre rule").mapped(lo, hi);
            for (x, w) in panel.nodes.iter().zip(&panel.weights) {
                nodes.push(*x);
                weights.push(w * (1.0 - x).powf(gamma));
            }
        }
        let h = 0.5f64.powi(depth as i32);
        let start = 1.0 - h;
        let scale = h.powf(gamma + 1.0) * jac_scale;
        for (x, w) in jac.nodes.iter().zip(&jac.weights) {
            let s = 0.5 * (1.0 + x);
            nodes.push(start + h * s);
            weights.push(w * scale);
        }
        Ok(Self {
            gamma,
            order,
            depth,
            nodes,
            weights,
        })
    }

    /// Grading depth that resolves features of width `~1/degree` at `R = 1`.
    /// At least 4, since `|f|^p` means are only piecewise smooth in `R` for
    /// `p ≠ 2` (kinks at the moduli of the zeros of `f`).
    pub fn depth_for_degree(degree: usize) -> usize {
        ((degree.max(1) as f64) / 8.0).log2().ceil().max(4.0) as usize
    }

    pub fn for_degree(gamma: f64, order: usize, degree: usize) -> Result<Self> {
        Self::new(gamma, order, Self::depth_for_degree(degree))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}
