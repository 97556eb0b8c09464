use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{evaluate_torus_grid, CoeffFn};
use crate::norms::QuadGrid;
use crate::par;
use crate::quadrature::{gauss_jacobi, integrate_endpoint_weighted, Tolerance};
use crate::special::derivative_factor;

/// Which normalization of the pairing formula to evaluate.
///
/// Both use `(2α)^n ∏ r_j^{-2α} ∫_{[0,r]} ∏ (r_j² - R_j²)^κ R_j ⟨D^γ g(R·), f(r·)⟩ dR`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairingVariant {
    /// `κ = α`, `γ = α + 1`.
    AsStated,
    /// `κ = α - 1`, `γ = α`.
    ProofForm,
}

impl PairingVariant {
    /// `(κ, γ)` for the given `α`.
    pub fn exponents(self, alpha: f64) -> (f64, f64) {
        match self {
            PairingVariant::AsStated => (alpha, alpha + 1.0),
            PairingVariant::ProofForm => (alpha - 1.0, alpha),
        }
    }

    /// Power of `r_j` multiplying each `λ_k`: `2κ + 2 - 2α`.
    pub fn r_exponent(self, _alpha: f64) -> f64 {
        match self {
            PairingVariant::AsStated => 2.0,
            PairingVariant::ProofForm => 0.0,
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("alpha > 0 required, got alpha = {alpha}")))
    }
}

fn check_radius(dim: usize, r: &[f64]) -> Result<()> {
    if r.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: r.len(),
        });
    }
    if let Some((coord, &x)) = r.iter().enumerate().find(|(_, x)| !(0.0..1.0).contains(*x)) {
        return Err(Error::OutsidePolydisc { coord, modulus: x });
    }
    Ok(())
}

fn common_sizes(f: &CoeffFn, g: &CoeffFn, grid: &QuadGrid) -> Result<Vec<usize>> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    Ok(f.degree()
        .iter()
        .zip(g.degree())
        .map(|(&a, &b)| grid.torus_size(f.dim(), a.max(b)))
        .collect())
}

/// Torus mean of `f(r conj ξ) g(r ξ)`.
pub fn lp_pairing_lhs(f: &CoeffFn, g: &CoeffFn, r: &[f64], grid: &QuadGrid) -> Result<Complex64> {
    check_radius(f.dim(), r)?;
    let sizes = common_sizes(f, g, grid)?;
    let fv = evaluate_torus_grid(f, r, &sizes)?;
    let gv = evaluate_torus_grid(g, r, &sizes)?;
    Ok(conj_mean(&fv, &gv))
}

fn conj_mean(fv: &crate::function::TorusValues, gv: &crate::function::TorusValues) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (pos, gz) in gv.values.iter().enumerate() {
        acc += fv.values[fv.conjugate_position(pos)] * gz;
    }
    acc / gv.len() as f64
}

/// `Σ_k a_k b_k ∏ r_j^{2k_j}` over the common support.
pub fn coefficient_pairing(f: &CoeffFn, g: &CoeffFn, r: &[f64]) -> Result<Complex64> {
    coefficient_pairing_with(f, g, r, |_| 1.0)
}

fn coefficient_pairing_with(f: &CoeffFn, g: &CoeffFn, r: &[f64], lambda: impl Fn(&[usize]) -> f64) -> Result<Complex64> {
    check_radius(f.dim(), r)?;
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, a) in f.iter() {
        let ks = k.as_slice();
        if ks.iter().zip(g.degree()).any(|(&kj, &nj)| kj > nj) {
            continue;
        }
        let b = g.coeff(&k);
        let rk: f64 = ks.iter().zip(r).map(|(&kj, &rj)| rj.powi(2 * kj as i32)).product();
        acc += a * b * rk * lambda(ks);
    }
    Ok(acc)
}

/// Per-frequency factors of the pairing formula.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingDiagonal {
    pub variant: PairingVariant,
    pub alpha: f64,
    /// `λ_k` at `r = 1`, `k = 0..=k_max`.
    pub lambda: Vec<f64>,
    /// The full factor is `λ_k r^{r_exponent}` per variable.
    pub r_exponent: f64,
    /// `λ_k = 1` for every listed `k` and no residual power of `r`.
    pub unit: bool,
}

/// `λ_k = 2α d_k^{(γ)} ∫_0^1 (1-u²)^κ u^{k+1} du` by adaptive quadrature.
pub fn pairing_diagonal(alpha: f64, variant: PairingVariant, k_max: usize) -> Result<PairingDiagonal> {
    check_alpha(alpha)?;
    let (kappa, gamma) = variant.exponents(alpha);
    let tol = Tolerance {
        rel: 1e-14,
        ..Tolerance::default()
    };
    let lambda = (0..=k_max)
        .map(|k| {
            let i = integrate_endpoint_weighted(|u| (1.0 + u).powf(kappa) * u.powi(k as i32 + 1), kappa, tol)?;
            Ok(2.0 * alpha * derivative_factor(k, gamma) * i.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    let r_exponent = variant.r_exponent(alpha);
    let unit = r_exponent == 0.0 && lambda.iter().all(|l| (l - 1.0).abs() <= 1e-12);
    Ok(PairingDiagonal {
        variant,
        alpha,
        lambda,
        r_exponent,
        unit,
    })
}

/// The pairing formula's right side by Gauss–Jacobi quadrature in each `R_j`
/// and a torus grid in `ξ`.
pub fn lp_pairing_rhs(
    f: &CoeffFn,
    g: &CoeffFn,
    r: &[f64],
    alpha: f64,
    variant: PairingVariant,
    grid: &QuadGrid,
) -> Result<Complex64> {
    check_alpha(alpha)?;
    check_radius(f.dim(), r)?;
    let sizes = common_sizes(f, g, grid)?;
    let (kappa, gamma) = variant.exponents(alpha);
    let dg = g.frac_derivative(gamma)?;
    let fv = evaluate_torus_grid(f, r, &sizes)?;

    // ∫_0^1 (1-u)^κ h(u) du on Jacobi nodes, h carrying (1+u)^κ u
    let rules = f
        .degree()
        .iter()
        .zip(g.degree())
        .map(|(&a, &b)| {
            let n = (a.max(b) + 2).div_ceil(2) + 24;
            let rule = gauss_jacobi(n, kappa, 0.0)?;
            let scale = 2f64.powf(-kappa - 1.0);
            Ok(rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&x, &w)| {
                    let u = 0.5 * (1.0 + x);
                    (u, w * scale * (1.0 + u).powf(kappa) * u)
                })
                .collect::<Vec<(f64, f64)>>())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut nodes: Vec<(Vec<f64>, f64)> = vec![(Vec::new(), 1.0)];
    for (rule, &rj) in rules.iter().zip(r) {
        let mut next = Vec::with_capacity(nodes.len() * rule.len());
        for (rad, w) in &nodes {
            for &(u, v) in rule {
                let mut rad2 = rad.clone();
                rad2.push(rj * u);
                next.push((rad2, w * v));
            }
        }
        nodes = next;
    }
    let terms = par::map(&nodes, |(rad, w)| -> Result<Complex64> {
        let gv = evaluate_torus_grid(&dg, rad, &sizes)?;
        Ok(conj_mean(&fv, &gv) * *w)
    });
    let mut acc = Complex64::new(0.0, 0.0);
    for t in terms {
        acc += t?;
    }
    let e = variant.r_exponent(alpha);
    let prefactor: f64 = r.iter().map(|&rj| 2.0 * alpha * rj.powf(e)).product();
    Ok(acc * prefactor)
}

/// The right side evaluated as `Σ_k ∏ λ_{k_j} r_j^{e} a_k b_k r^{2k}` with
/// the factors from [`pairing_diagonal`].
pub fn pairing_rhs_diagonal(f: &CoeffFn, g: &CoeffFn, r: &[f64], alpha: f64, variant: PairingVariant) -> Result<Complex64> {
    let k_max = f.max_degree().max(g.max_degree());
    let diag = pairing_diagonal(alpha, variant, k_max)?;
    let sum = coefficient_pairing_with(f, g, r, |k| k.iter().map(|&kj| diag.lambda[kj]).product())?;
    let rp: f64 = r.iter().map(|&rj| rj.powf(diag.r_exponent)).product();
    Ok(sum * rp)
}
