//! Gamma-ratio helpers built on log-gamma.

use statrs::function::gamma::ln_gamma;

/// Fractional-derivative symbol `Γ(k+β+1) / (Γ(β+1) Γ(k+1))` for one variable,
/// evaluated as a difference of log-gammas and exponentiated last.
///
/// `β = 0` returns exactly 1 for every `k`.
pub fn derivative_factor(k: usize, beta: f64) -> f64 {
    if beta == 0.0 || k == 0 {
        return 1.0;
    }
    ln_derivative_factor(k, beta).exp()
}

pub fn ln_derivative_factor(k: usize, beta: f64) -> f64 {
    if beta == 0.0 || k == 0 {
        return 0.0;
    }
    let k = k as f64;
    ln_gamma(k + beta + 1.0) - ln_gamma(beta + 1.0) - ln_gamma(k + 1.0)
}

/// Table of `derivative_factor(k, beta)` for `k = 0..=n`.
pub fn derivative_factors(n: usize, beta: f64) -> Vec<f64> {
    (0..=n).map(|k| derivative_factor(k, beta)).collect()
}

/// Euler beta function `B(a, b)` for `a, b > 0`.
pub fn beta(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Recursive product c_k = c_{k-1} (k+β)/k, independent of log-gamma.
    fn recursive(k: usize, beta: f64) -> f64 {
        (1..=k).fold(1.0, |acc, j| acc * (j as f64 + beta) / j as f64)
    }

    #[test]
    fn cube_coefficient_at_beta_one() {
        // Γ(5)/(Γ(2)Γ(4)) = 24/6
        assert_relative_eq!(derivative_factor(3, 1.0), 4.0, max_relative = 1e-13);
    }

    #[test]
    fn zero_order_is_identity() {
        for k in [0, 1, 7, 1000, 10_000] {
            assert_eq!(derivative_factor(k, 0.0), 1.0);
        }
    }

    #[test]
    fn agrees_with_recursive_product() {
        for &beta in &[-0.75, -0.25, 0.5, 1.0, 2.5, 7.0] {
            for k in [1usize, 2, 5, 17, 64, 300] {
                assert_relative_eq!(
                    derivative_factor(k, beta),
                    recursive(k, beta),
                    max_relative = 1e-11
                );
            }
        }
    }

    #[test]
    fn large_arguments_stay_finite_and_monotone() {
        let f = derivative_factors(10_000, 50.0);
        assert!(f.iter().all(|x| x.is_finite()));
        assert!(f.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn beta_function_values() {
        assert_relative_eq!(beta(1.0, 1.0), 1.0, max_relative = 1e-14);
        assert_relative_eq!(beta(2.0, 0.5), 4.0 / 3.0, max_relative = 1e-13);
    }
}
