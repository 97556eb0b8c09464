use serde::Serialize;

use crate::error::Result;
use crate::function::{evaluate_torus_grid, CoeffFn};
use crate::norms::means::{abs_pow, check_exponent, m_p_norm, mean_from_values};
use crate::norms::scan::{boundary_weight, scan_sup, SupProfile};
use crate::norms::{QuadGrid, SpaceSpec};
use crate::par;
use crate::quadrature::SupStatus;

/// Value of a (quasi) norm. Supremum families carry the ladder status; an
/// unconverged supremum is a lower bound, not a norm value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormResult {
    pub value: f64,
    pub status: SupStatus,
    /// Ladder depth reached, for supremum families.
    pub depth: Option<usize>,
}

impl NormResult {
    pub fn converged(&self) -> bool {
        self.status == SupStatus::Converged
    }

    fn from_profile(p: &SupProfile) -> Self {
        Self {
            value: p.sup,
            status: p.status,
            depth: Some(p.depth),
        }
    }

    fn integral(value: f64) -> Self {
        Self {
            value,
            status: SupStatus::Converged,
            depth: None,
        }
    }
}

/// The (quasi) norm of `f` in the space `spec`.
pub fn space_norm(f: &CoeffFn, spec: &SpaceSpec, grid: &QuadGrid) -> Result<NormResult> {
    spec.validate()?;
    grid.validate()?;
    let dim = f.dim();
    match *spec {
        SpaceSpec::Hardy { p } => {
            let prof = scan_sup(dim, grid, |r| m_p_norm(f, r, p, grid))?;
            Ok(NormResult::from_profile(&prof))
        }
        SpaceSpec::LimitA { p, s } => {
            let prof = scan_sup(dim, grid, |r| Ok(m_p_norm(f, r, p, grid)? * boundary_weight(r, s)))?;
            Ok(NormResult::from_profile(&prof))
        }
        SpaceSpec::SupD { alpha, beta } => {
            let g = f.frac_derivative(alpha)?;
            let prof = scan_sup(dim, grid, |r| {
                Ok(m_p_norm(&g, r, f64::INFINITY, grid)? * boundary_weight(r, beta))
            })?;
            Ok(NormResult::from_profile(&prof))
        }
        SpaceSpec::MixedA { p, q, alpha } => mixed_a(f, p, q, alpha, grid).map(NormResult::integral),
        SpaceSpec::TriebelF { p, q, alpha } => triebel_f(f, p, q, alpha, grid).map(NormResult::integral),
        SpaceSpec::LimitF { p, s } => limit_f(f, p, s, grid),
    }
}

fn mixed_a(f: &CoeffFn, p: f64, q: f64, alpha: f64, grid: &QuadGrid) -> Result<f64> {
    let nodes = grid.radial_nodes(alpha * q - 1.0, f.degree())?;
    let sizes = grid.torus_sizes(f.degree());
    let terms = par::map(&nodes, |(r, w)| -> Result<f64> {
        let vals = evaluate_torus_grid(f, r, &sizes)?;
        Ok(w * mean_from_values(f, r, &vals, p, grid.max_tol).powf(q))
    });
    let mut sum = 0.0;
    for t in terms {
        sum += t?;
    }
    Ok(sum.powf(1.0 / q))
}

fn triebel_f(f: &CoeffFn, p: f64, q: f64, alpha: f64, grid: &QuadGrid) -> Result<f64> {
    let nodes = grid.radial_nodes(alpha * q - 1.0, f.degree())?;
    let sizes = grid.torus_sizes(f.degree());
    let total: usize = sizes.iter().product();
    let mut inner = vec![0.0; total];
    let batch = 2 * par::width();
    for chunk in nodes.chunks(batch) {
        let parts = par::map(chunk, |(r, w)| -> Result<Vec<f64>> {
            let vals = evaluate_torus_grid(f, r, &sizes)?;
            Ok(vals.values.iter().map(|&v| w * abs_pow(v, q)).collect())
        });
        for part in parts {
            for (acc, x) in inner.iter_mut().zip(part?) {
                *acc += x;
            }
        }
    }
    let e = p / q;
    let mean = inner.iter().map(|&x| x.powf(e)).sum::<f64>() / total as f64;
    Ok(mean.powf(1.0 / p))
}

fn lp_mean(phi: &[f64], p: f64) -> f64 {
    let m = phi.iter().map(|&x| if p == 1.0 { x } else { x.powf(p) }).sum::<f64>() / phi.len() as f64;
    m.powf(1.0 / p)
}

/// `‖φ‖_{L^p}` with `φ(ξ) = sup_r |f(rξ)| (1-r)^s` over the ladder points,
/// accumulated on one torus grid. The scan runs until both `‖φ‖` and the
/// running `sup_r M_p(f, r)(1-r)^s` are stable, so it visits every point the
/// corresponding `A^{p,∞,s}` scan visits.
fn limit_f(f: &CoeffFn, p: f64, s: f64, grid: &QuadGrid) -> Result<NormResult> {
    check_exponent("p", p)?;
    let dim = f.dim();
    let sizes = grid.torus_sizes(f.degree());
    let total: usize = sizes.iter().product();
    let eval = |r: &[f64]| -> Result<(Vec<f64>, f64)> {
        let vals = evaluate_torus_grid(f, r, &sizes)?;
        let w = boundary_weight(r, s);
        let a = vals.mean_abs_pow(p).powf(1.0 / p) * w;
        Ok((vals.values.iter().map(|v| v.norm() * w).collect(), a))
    };
    let ladder = &grid.ladder;
    let sub = ladder.substeps.max(1);
    let max_depth = ladder.max_depth.min(crate::quadrature::MAX_LADDER_LEVEL).max(ladder.start);
    let last = max_depth * sub;

    let mut phi = vec![0.0f64; total];
    let mut a_sup = f64::NEG_INFINITY;
    let (mut prev_norm, mut prev_a) = (f64::NAN, f64::NAN);
    let mut status = SupStatus::Unconverged;
    let mut depth = ladder.start;
    let mut i = ladder.start * sub;
    'scan: while i <= last {
        let n = par::width().min(last - i + 1);
        let base = i;
        let parts = par::map_range(n, |j| {
            let rho = ladder.radius(base + j);
            eval(&vec![rho; dim])
        });
        for part in parts {
            let (vals, a) = part?;
            for (acc, x) in phi.iter_mut().zip(vals) {
                *acc = acc.max(x);
            }
            a_sup = a_sup.max(a);
            if i.is_multiple_of(sub) {
                let level = i / sub;
                depth = level;
                let norm = lp_mean(&phi, p);
                if level >= ladder.min_depth {
                    let stable = |now: f64, before: f64| before.is_finite() && (now - before).abs() <= ladder.tol * now.abs();
                    if stable(norm, prev_norm) && stable(a_sup, prev_a) {
                        status = SupStatus::Converged;
                        break 'scan;
                    }
                    if level >= max_depth {
                        if ladder.tol == 0.0 && ladder.min_depth >= ladder.max_depth {
                            status = SupStatus::Converged;
                        }
                        break 'scan;
                    }
                }
                prev_norm = norm;
                prev_a = a_sup;
            }
            i += 1;
        }
    }
    let extra: Vec<Vec<f64>> = grid
        .off_diagonal_levels(dim)
        .into_iter()
        .filter(|t| t.iter().all(|&l| l <= depth))
        .map(|t| t.iter().map(|&l| grid.level_radius(l)).collect())
        .collect();
    let parts = par::map(&extra, |r| eval(r));
    for part in parts {
        let (vals, _) = part?;
        for (acc, x) in phi.iter_mut().zip(vals) {
            *acc = acc.max(x);
        }
    }
    Ok(NormResult {
        value: lp_mean(&phi, p),
        status,
        depth: Some(depth),
    })
}

/// Profile `r ↦ M_t(D^m f, r) (1-r)^tau` along the ladder and its supremum.
/// For `n >= 2` the diagonal is augmented by seeded off-diagonal points.
pub fn weighted_sup_profile(f: &CoeffFn, m: usize, t: f64, tau: f64, grid: &QuadGrid) -> Result<SupProfile> {
    check_exponent("t", t)?;
    grid.validate()?;
    let g = f.frac_derivative(m as f64)?;
    if g.is_zero() {
        // keep the ladder bookkeeping without evaluating grids
        return scan_sup(f.dim(), grid, |_| Ok(0.0));
    }
    scan_sup(f.dim(), grid, |r| Ok(m_p_norm(&g, r, t, grid)? * boundary_weight(r, tau)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{bergman_kernel, random_poly, CoefficientLaw, MultiIndex, Truncation};
    use crate::quadrature::{integrate_endpoint_weighted, Ladder, Tolerance};
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn one(dim: usize) -> CoeffFn {
        CoeffFn::constant(dim, Complex64::new(1.0, 0.0)).unwrap()
    }

    fn monomial(k: usize) -> CoeffFn {
        CoeffFn::from_sparse(&[(MultiIndex(vec![k]), Complex64::new(1.0, 0.0))], 1, &[k]).unwrap()
    }

    #[test]
    fn constant_in_integral_families() {
        let g = QuadGrid::default();
        for &(p, q, a) in &[(1.0f64, 1.0f64, 0.5f64), (2.0, 0.5, 1.5), (0.7, 3.0, 0.2)] {
            let exact = (a * q).powf(-1.0 / q);
            let ma = space_norm(&one(1), &SpaceSpec::mixed_a(p, q, a).unwrap(), &g).unwrap();
            let tf = space_norm(&one(1), &SpaceSpec::triebel_f(p, q, a).unwrap(), &g).unwrap();
            assert_relative_eq!(ma.value, exact, max_relative = 1e-12);
            assert_relative_eq!(tf.value, exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn hardy_two_is_coefficient_norm() {
        let g = QuadGrid {
            ladder: Ladder {
                tol: 1e-11,
                ..Ladder::default()
            },
            ..QuadGrid::default()
        };
        for seed in 0..3 {
            let f = random_poly(seed, 1, &[12], CoefficientLaw::UnitDisk).unwrap();
            let h = space_norm(&f, &SpaceSpec::hardy(2.0).unwrap(), &g).unwrap();
            assert!(h.converged());
            assert_relative_eq!(h.value, f.l2_norm_sq().sqrt(), max_relative = 1e-8);
        }
    }

    #[test]
    fn monomial_mixed_norm_matches_adaptive_oracle() {
        let g = QuadGrid::default();
        for &(k, p, q, a) in &[(3usize, 1.0, 1.0, 0.5), (10, 2.0, 2.0, 1.0), (40, 0.5, 0.5, 0.3)] {
            let spec = SpaceSpec::mixed_a(p, q, a).unwrap();
            let v = space_norm(&monomial(k), &spec, &g).unwrap().value;
            let kq = k as f64 * q;
            let oracle = integrate_endpoint_weighted(|x| x.powf(kq), a * q - 1.0, Tolerance::default())
                .unwrap()
                .value
                .powf(1.0 / q);
            assert_relative_eq!(v, oracle, max_relative = 1e-10);
        }
    }

    #[test]
    fn diagonal_coincidence_and_minkowski() {
        let g = QuadGrid::default();
        for seed in 0..4 {
            let f = random_poly(seed, 1, &[16], CoefficientLaw::Gaussian).unwrap();
            for &(p, a) in &[(0.5, 0.5), (1.0, 1.0), (3.0, 0.25)] {
                let ma = space_norm(&f, &SpaceSpec::mixed_a(p, p, a).unwrap(), &g).unwrap().value;
                let tf = space_norm(&f, &SpaceSpec::triebel_f(p, p, a).unwrap(), &g).unwrap().value;
                assert_relative_eq!(ma, tf, max_relative = 1e-12);
            }
            let ma = space_norm(&f, &SpaceSpec::mixed_a(1.0, 2.0, 0.5).unwrap(), &g).unwrap().value;
            let tf = space_norm(&f, &SpaceSpec::triebel_f(1.0, 2.0, 0.5).unwrap(), &g).unwrap().value;
            assert!(ma <= tf + 1e-12, "{ma} > {tf}");
        }
    }

    #[test]
    fn two_variable_integral_norms() {
        let g = QuadGrid::default();
        let f = random_poly(9, 2, &[4, 3], CoefficientLaw::UnitDisk).unwrap();
        let ma = space_norm(&f, &SpaceSpec::mixed_a(2.0, 2.0, 0.75).unwrap(), &g).unwrap().value;
        let tf = space_norm(&f, &SpaceSpec::triebel_f(2.0, 2.0, 0.75).unwrap(), &g).unwrap().value;
        // ∫∫ Σ|a_k|² R^{2k} (1-R)^{1/2} dR = Σ|a_k|² ∏ B(2k_j+1, 3/2)
        let exact: f64 = f
            .iter()
            .map(|(k, a)| a.norm_sqr() * k.0.iter().map(|&kj| crate::special::beta(2.0 * kj as f64 + 1.0, 1.5)).product::<f64>())
            .sum::<f64>()
            .sqrt();
        assert_relative_eq!(ma, exact, max_relative = 1e-12);
        assert_relative_eq!(tf, exact, max_relative = 1e-12);
    }

    #[test]
    fn homogeneity_all_families() {
        let g = QuadGrid::default();
        let f = random_poly(4, 1, &[10], CoefficientLaw::UnitDisk).unwrap();
        let lambda = Complex64::new(-1.5, 2.0);
        let specs = [
            SpaceSpec::hardy(1.0).unwrap(),
            SpaceSpec::hardy(f64::INFINITY).unwrap(),
            SpaceSpec::mixed_a(1.0, 0.5, 1.0).unwrap(),
            SpaceSpec::triebel_f(0.5, 2.0, 0.5).unwrap(),
            SpaceSpec::sup_d(1.0, 2.0).unwrap(),
            SpaceSpec::limit_f(1.0, 0.5).unwrap(),
            SpaceSpec::limit_a(2.0, 0.5).unwrap(),
        ];
        for spec in &specs {
            let a = space_norm(&f, spec, &g).unwrap();
            let b = space_norm(&f.scale(lambda), spec, &g).unwrap();
            assert_relative_eq!(b.value, lambda.norm() * a.value, max_relative = 1e-10);
        }
    }

    #[test]
    fn limit_f_dominates_limit_a() {
        let g = QuadGrid::default();
        for seed in 0..3 {
            let f = random_poly(seed, 1, &[20], CoefficientLaw::Gaussian).unwrap();
            for &(p, s) in &[(0.5, 0.25), (1.0, 1.0), (2.0, 0.5)] {
                let a = space_norm(&f, &SpaceSpec::limit_a(p, s).unwrap(), &g).unwrap();
                let lf = space_norm(&f, &SpaceSpec::limit_f(p, s).unwrap(), &g).unwrap();
                assert!(a.converged() && lf.converged());
                assert!(a.value <= lf.value + 1e-12, "{} > {}", a.value, lf.value);
            }
        }
        let f = random_poly(5, 2, &[5, 5], CoefficientLaw::Gaussian).unwrap();
        let a = space_norm(&f, &SpaceSpec::limit_a(1.0, 0.5).unwrap(), &g).unwrap();
        let lf = space_norm(&f, &SpaceSpec::limit_f(1.0, 0.5).unwrap(), &g).unwrap();
        assert!(a.value <= lf.value + 1e-12);
    }

    #[test]
    fn sup_d_without_weight_is_hardy_infinity() {
        let g = QuadGrid::default();
        let f = random_poly(2, 1, &[8], CoefficientLaw::UnitDisk).unwrap();
        let a = space_norm(&f, &SpaceSpec::sup_d(0.0, 0.0).unwrap(), &g).unwrap();
        let b = space_norm(&f, &SpaceSpec::hardy(f64::INFINITY).unwrap(), &g).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn kernel_hardy_norm_closed_form() {
        // ‖(1-Rz)^{-1}‖_{H^2} = (1-R²)^{-1/2}
        let g = QuadGrid {
            oversample: 1,
            ..QuadGrid::default()
        };
        let r = 0.9;
        let f = bergman_kernel(&[Complex64::new(r, 0.0)], 0.0, Truncation::auto()).unwrap();
        let h = space_norm(&f, &SpaceSpec::hardy(2.0).unwrap(), &g).unwrap();
        assert!(h.converged());
        assert_relative_eq!(h.value, (1.0 - r * r).powf(-0.5), max_relative = 1e-5);
    }

    #[test]
    fn profile_examples() {
        let g = QuadGrid::default();
        let zero = CoeffFn::zeros(&[4]).unwrap();
        let p = weighted_sup_profile(&zero, 2, 1.0, 1.0, &g).unwrap();
        assert_eq!(p.sup, 0.0);
        assert!(p.points.iter().all(|x| x.value == 0.0));
        let c = CoeffFn::constant(2, Complex64::new(0.0, -3.0)).unwrap();
        let p = weighted_sup_profile(&c, 3, 1.0, 0.5, &g).unwrap();
        assert_relative_eq!(p.sup, 3.0, max_relative = 1e-15);
        assert_eq!(p.argmax, vec![0.0, 0.0]);
        assert!(p.points.iter().any(|x| !x.diagonal));
    }

    #[test]
    fn rejects_invalid_spec() {
        let bad = SpaceSpec::MixedA { p: 1.0, q: 1.0, alpha: 0.0 };
        assert!(space_norm(&one(1), &bad, &QuadGrid::default()).is_err());
        assert!(weighted_sup_profile(&one(1), 1, 0.0, 1.0, &QuadGrid::default()).is_err());
    }
}
