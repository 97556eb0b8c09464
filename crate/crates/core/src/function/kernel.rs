//! Truncated Bergman-kernel test functions `(1 - w z)^{-(β+1)}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::CoeffFn;
use crate::special::ln_derivative_factor;

/// Largest per-variable truncation degree the kernel builder will produce.
pub const MAX_KERNEL_DEGREE: usize = 1 << 20;

/// Default bound on the relative tail `Σ_{k>N} |coeff| x^k / Σ_k |coeff| x^k`.
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

/// How the kernel series is truncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// Smallest degree whose dropped tail stays below `tol` (relative) for
    /// evaluation radii up to `radius`.
    Auto { radius: f64, tol: f64 },
    /// Fixed degree; rejected if the tail bound at `radius` exceeds `tol`.
    Fixed { degree: usize, radius: f64, tol: f64 },
}

impl Truncation {
    pub fn auto() -> Self {
        Truncation::Auto {
            radius: 1.0,
            tol: DEFAULT_TAIL_TOL,
        }
    }

    pub fn auto_at(radius: f64) -> Self {
        Truncation::Auto {
            radius,
            tol: DEFAULT_TAIL_TOL,
        }
    }
}

/// Upper bound on the relative tail of `Σ_k c_k x^k`, `c_k = Γ(k+β+1)/(Γ(β+1)k!)`,
/// after keeping `k ≤ degree`. Uses the ratio bound `c_{k+1}/c_k ≤ q` for `k > degree`.
pub fn kernel_tail_bound(x: f64, beta: f64, degree: usize) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let n = degree as f64;
    let q = if beta >= 0.0 {
        (n + beta + 2.0) / (n + 2.0)
    } else {
        1.0
    };
    if q * x >= 1.0 {
        return f64::INFINITY;
    }
    let ln_next = ln_derivative_factor(degree + 1, beta) + (n + 1.0) * x.ln();
    let ln_total = -(beta + 1.0) * (1.0 - x).ln();
    (ln_next - ln_total).exp() / (1.0 - q * x)
}

/// Smallest degree with `kernel_tail_bound(x, beta, N) ≤ tol`.
pub fn kernel_degree(x: f64, beta: f64, tol: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Parameter(format!(
            "kernel series diverges at |w|·r = {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0);
    }
    // Exponential search then bisection; the bound is eventually decreasing.
    let mut hi = 1usize;
    while kernel_tail_bound(x, beta, hi) > tol {
        hi *= 2;
        if hi > MAX_KERNEL_DEGREE {
            return Err(Error::TruncationTooShort {
                given: MAX_KERNEL_DEGREE,
                required: estimate_degree(x, beta, tol),
                tol,
            });
        }
    }
    let mut lo = hi / 2;
    if kernel_tail_bound(x, beta, lo) <= tol {
        return Ok(lo);
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if kernel_tail_bound(x, beta, mid) <= tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Rough degree estimate used in error messages when the search gives up.
fn estimate_degree(x: f64, beta: f64, tol: f64) -> usize {
    let scale = -x.ln();
    ((-tol.ln() + beta.max(0.0) * 10.0) / scale).ceil() as usize
}

/// `∏_j (1 - w_j z_j)^{-(β+1)}` truncated per `trunc`, with coefficients
/// `∏_j Γ(k_j+β+1)/(Γ(β+1)Γ(k_j+1)) w_j^{k_j}`.
pub fn bergman_kernel(w: &[Complex64], beta: f64, trunc: Truncation) -> Result<CoeffFn> {
    crate::function::coeff::check_dim(w.len())?;
    if !(beta > -1.0) || !beta.is_finite() {
        return Err(Error::Parameter(format!(
            "kernel exponent requires beta > -1, got {beta}"
        )));
    }
    for (coord, wj) in w.iter().enumerate() {
        let modulus = wj.norm();
        if !(modulus < 1.0) {
            return Err(Error::OutsidePolydisc { coord, modulus });
        }
    }
    let dim = w.len();
    let mut degree = Vec::with_capacity(dim);
    for wj in w {
        let (radius, tol) = match trunc {
            Truncation::Auto { radius, tol } | Truncation::Fixed { radius, tol, .. } => (radius, tol),
        };
        let x = wj.norm() * radius;
        let per_axis_tol = tol / dim as f64;
        let n = match trunc {
            Truncation::Auto { .. } => kernel_degree(x, beta, per_axis_tol)?,
            Truncation::Fixed { degree, .. } => {
                if kernel_tail_bound(x, beta, degree) > per_axis_tol {
                    return Err(Error::TruncationTooShort {
                        given: degree,
                        required: kernel_degree(x, beta, per_axis_tol)
                            .unwrap_or_else(|_| estimate_degree(x, beta, per_axis_tol)),
                        tol,
                    });
                }
                degree
            }
        };
        degree.push(n);
    }
    let factors: Vec<Vec<Complex64>> = w
        .iter()
        .zip(&degree)
        .map(|(wj, &n)| kernel_axis_coeffs(*wj, beta, n))
        .collect();
    let ones = CoeffFn::from_dense(&degree, vec![Complex64::new(1.0, 0.0); crate::function::coeff::table_len(&degree)?])?;
    Ok(ones.scale_separable(&factors))
}

/// One-variable kernel coefficients `c_k w^k`, `k = 0..=n`, computed in log
/// space so large `k` neither overflows nor loses the phase.
pub(crate) fn kernel_axis_coeffs(w: Complex64, beta: f64, n: usize) -> Vec<Complex64> {
    let (rho, theta) = w.to_polar();
    (0..=n)
        .map(|k| {
            if k == 0 {
                return Complex64::new(1.0, 0.0);
            }
            if rho == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let ln_mag = ln_derivative_factor(k, beta) + k as f64 * rho.ln();
            Complex64::from_polar(ln_mag.exp(), k as f64 * theta)
        })
        .collect()
}

/// Closed-form `∏_j (1 - w_j z_j)^{-(β+1)}`; used as an independent oracle.
pub fn kernel_closed_form(w: &[Complex64], beta: f64, z: &[Complex64]) -> Complex64 {
    w.iter()
        .zip(z)
        .map(|(wj, zj)| (Complex64::new(1.0, 0.0) - wj * zj).powf(-(beta + 1.0)))
        .product()
}
