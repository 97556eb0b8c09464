use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::{evaluate_torus_grid, CoeffFn, TorusValues};
use crate::norms::QuadGrid;

/// Grid maxima refined per call to [`refine_max`].
const REFINE_CANDIDATES: usize = 4;
const GOLDEN: f64 = 0.618_033_988_749_894_8;

pub(crate) fn check_exponent(name: &str, p: f64) -> Result<()> {
    if p > 0.0 && !p.is_nan() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} > 0 required, got {name} = {p}")))
    }
}

/// `|v|^p` with the same special cases as [`TorusValues::mean_abs_pow`].
#[inline]
pub(crate) fn abs_pow(v: Complex64, p: f64) -> f64 {
    if p == 2.0 {
        v.norm_sqr()
    } else if p == 1.0 {
        v.norm()
    } else {
        v.norm().powf(p)
    }
}

/// Integral mean `M_p(f, r)` on the torus grid of `grid`. For `p = ∞` the
/// grid maximum is refined by local golden-section search.
pub fn m_p_norm(f: &CoeffFn, r: &[f64], p: f64, grid: &QuadGrid) -> Result<f64> {
    check_exponent("p", p)?;
    let vals = evaluate_torus_grid(f, r, &grid.torus_sizes(f.degree()))?;
    Ok(mean_from_values(f, r, &vals, p, grid.max_tol))
}

pub(crate) fn mean_from_values(f: &CoeffFn, r: &[f64], vals: &TorusValues, p: f64, tol: f64) -> f64 {
    if p == f64::INFINITY {
        refine_max(f, r, vals, tol)
    } else {
        vals.mean_abs_pow(p).powf(1.0 / p)
    }
}

fn point(r: &[f64], theta: &[f64]) -> Vec<Complex64> {
    r.iter()
        .zip(theta)
        .map(|(&rj, &t)| Complex64::from_polar(rj, TAU * t))
        .collect()
}

fn golden_max(g: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (g(c), g(d));
    while (b - a) > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = g(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// `max_ξ |f(rξ)|`: the largest grid values are polished by coordinate-wise
/// golden-section search within one grid cell, sweeping until the value is
/// stable to `tol` (relative).
pub(crate) fn refine_max(f: &CoeffFn, r: &[f64], vals: &TorusValues, tol: f64) -> f64 {
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&i, &j| vals.values[j].norm().total_cmp(&vals.values[i].norm()).then(i.cmp(&j)));
    let mut best = order.first().map_or(0.0, |&i| vals.values[i].norm());
    for &pos in order.iter().take(REFINE_CANDIDATES) {
        let mut theta = vals.angles(pos);
        let mut value = vals.values[pos].norm();
        for _sweep in 0..8 {
            let before = value;
            for j in 0..theta.len() {
                let h = 1.0 / vals.sizes[j] as f64;
                let center = theta[j];
                let eval = |t: f64| {
                    let mut th = theta.clone();
                    th[j] = t;
                    f.horner(&point(r, &th)).norm()
                };
                let (t, v) = golden_max(eval, center - h, center + h, h * 1e-10);
                if v > value {
                    value = v;
                    theta[j] = t;
                }
            }
            if value - before <= tol * value {
                break;
            }
        }
        best = best.max(value);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{bergman_kernel, random_poly, CoefficientLaw, Truncation};
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn monomial_means_are_radius_powers() {
        let f = CoeffFn::from_sparse(&[(crate::function::MultiIndex(vec![5]), c(1.0))], 1, &[5]).unwrap();
        let g = QuadGrid::default();
        for p in [0.5, 1.0, 2.0, 3.7, f64::INFINITY] {
            assert_relative_eq!(m_p_norm(&f, &[0.7], p, &g).unwrap(), 0.7f64.powi(5), max_relative = 1e-12);
        }
    }

    #[test]
    fn parseval_identity() {
        let g = QuadGrid::default();
        for seed in 0..5 {
            let f = random_poly(seed, 2, &[9, 6], CoefficientLaw::UnitDisk).unwrap();
            let r = [0.8, 0.3];
            let m2 = m_p_norm(&f, &r, 2.0, &g).unwrap();
            assert_relative_eq!(m2 * m2, f.weighted_l2_sq(&r), max_relative = 1e-12);
        }
    }

    #[test]
    fn kernel_maximum_sits_at_one() {
        let g = QuadGrid {
            oversample: 1,
            ..QuadGrid::default()
        };
        let f = bergman_kernel(&[c(0.9)], 1.0, Truncation::auto()).unwrap();
        for r in [0.5, 0.95] {
            let exact = (1.0f64 - 0.9 * r).powi(-2);
            assert_relative_eq!(m_p_norm(&f, &[r], f64::INFINITY, &g).unwrap(), exact, max_relative = 1e-8);
        }
    }

    #[test]
    fn refinement_finds_off_grid_maximum() {
        // |1 + e^{iφ} z| with φ off the grid peaks at 1 + r.
        let phase = Complex64::from_polar(1.0, 0.123);
        let f = CoeffFn::from_dense(&[1], vec![c(1.0), phase]).unwrap();
        let g = QuadGrid {
            min_torus: [3; crate::MAX_DIM],
            oversample: 1,
            ..QuadGrid::default()
        };
        let v = m_p_norm(&f, &[0.6], f64::INFINITY, &g).unwrap();
        assert_relative_eq!(v, 1.6, max_relative = 1e-10);
    }

    #[test]
    fn mean_comparison() {
        let g = QuadGrid::default();
        let f = random_poly(3, 1, &[20], CoefficientLaw::Gaussian).unwrap();
        let ps = [0.5, 1.0, 1.5, 2.0, 4.0, f64::INFINITY];
        let ms: Vec<f64> = ps.iter().map(|&p| m_p_norm(&f, &[0.9], p, &g).unwrap()).collect();
        assert!(ms.windows(2).all(|w| w[0] <= w[1] * (1.0 + 1e-12)), "{ms:?}");
    }

    #[test]
    fn rejects_nonpositive_exponent() {
        let f = CoeffFn::constant(1, c(1.0)).unwrap();
        assert!(m_p_norm(&f, &[0.5], 0.0, &QuadGrid::default()).is_err());
        assert!(m_p_norm(&f, &[0.5], -1.0, &QuadGrid::default()).is_err());
    }
}
