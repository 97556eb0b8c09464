use num_complex::Complex64;
use polydisc::function::{random_poly, CoeffFn, CoefficientLaw, MultiplierSeq};
use polydisc::norms::{m_p_norm, space_norm, QuadGrid, SpaceSpec};
use proptest::prelude::*;

fn poly(seed: u64, dim: usize, degree: usize) -> CoeffFn {
    random_poly(seed, dim, &vec![degree; dim], CoefficientLaw::Gaussian).unwrap()
}

fn grid() -> QuadGrid {
    QuadGrid {
        min_torus: [256, 32, 16],
        ..QuadGrid::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parseval(seed in any::<u64>(), dim in 1usize..=2, degree in 0usize..12, r in 0.0f64..0.99) {
        let f = poly(seed, dim, degree);
        let rr = vec![r; dim];
        let m2 = m_p_norm(&f, &rr, 2.0, &grid()).unwrap();
        let exact = f.weighted_l2_sq(&rr);
        prop_assert!((m2 * m2 - exact).abs() <= 1e-10 * (1.0 + f.l2_norm_sq()));
    }

    #[test]
    fn means_increase_with_radius(seed in any::<u64>(), degree in 1usize..10, p in 0.5f64..4.0, a in 0.0f64..0.9, d in 0.01f64..0.09) {
        let f = poly(seed, 1, degree);
        let g = grid();
        let lo = m_p_norm(&f, &[a], p, &g).unwrap();
        let hi = m_p_norm(&f, &[a + d], p, &g).unwrap();
        prop_assert!(lo <= hi * (1.0 + 1e-9), "{lo} > {hi}");
    }

    #[test]
    fn means_increase_with_exponent(seed in any::<u64>(), degree in 1usize..10, p in 0.5f64..3.0, dp in 0.1f64..2.0, r in 0.1f64..0.95) {
        let f = poly(seed, 1, degree);
        let g = grid();
        let lo = m_p_norm(&f, &[r], p, &g).unwrap();
        let hi = m_p_norm(&f, &[r], p + dp, &g).unwrap();
        prop_assert!(lo <= hi * (1.0 + 1e-9), "{lo} > {hi}");
    }

    #[test]
    fn norms_are_homogeneous(seed in any::<u64>(), degree in 0usize..8, re in -3.0f64..3.0, im in -3.0f64..3.0, p in 0.5f64..3.0, alpha in 0.25f64..1.5) {
        prop_assume!(re.hypot(im) > 1e-3);
        let f = poly(seed, 1, degree);
        let lam = Complex64::new(re, im);
        let g = grid();
        for spec in [SpaceSpec::hardy(p).unwrap(), SpaceSpec::mixed_a(p, 1.0, alpha).unwrap(), SpaceSpec::triebel_f(p, 1.0, alpha).unwrap()] {
            let a = space_norm(&f.scale(lam), &spec, &g).unwrap().value;
            let b = space_norm(&f, &spec, &g).unwrap().value;
            prop_assert!((a - lam.norm() * b).abs() <= 1e-8 * (1.0 + a), "{spec}: {a} vs {}", lam.norm() * b);
        }
    }

    #[test]
    fn diagonal_families_coincide(seed in any::<u64>(), degree in 0usize..10, p in 0.5f64..3.0, alpha in 0.25f64..1.5) {
        let f = poly(seed, 1, degree);
        let g = grid();
        let a = space_norm(&f, &SpaceSpec::mixed_a(p, p, alpha).unwrap(), &g).unwrap().value;
        let b = space_norm(&f, &SpaceSpec::triebel_f(p, p, alpha).unwrap(), &g).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-8 * (1.0 + b));
    }

    #[test]
    fn mixed_below_triebel_when_t_le_s(seed in any::<u64>(), degree in 0usize..10, t in 0.5f64..2.0, ds in 0.0f64..1.5, beta in 0.25f64..1.5) {
        let f = poly(seed, 1, degree);
        let s = t + ds;
        let g = grid();
        let a = space_norm(&f, &SpaceSpec::mixed_a(t, s, beta).unwrap(), &g).unwrap().value;
        let b = space_norm(&f, &SpaceSpec::triebel_f(t, s, beta).unwrap(), &g).unwrap().value;
        prop_assert!(a <= b * (1.0 + 1e-9) + 1e-12, "{a} > {b}");
    }

    #[test]
    fn identity_multiplier_is_identity(seed in any::<u64>(), dim in 1usize..=3, degree in 0usize..6) {
        let f = poly(seed, dim, degree);
        let g = MultiplierSeq::ones(dim).unwrap().hadamard(&f).unwrap();
        prop_assert_eq!(g, f);
    }

    #[test]
    fn hadamard_is_linear(seed in any::<u64>(), degree in 0usize..10, w in 0.0f64..0.9, gamma in -0.5f64..2.0) {
        let c = MultiplierSeq::kernel(vec![Complex64::new(w, 0.0)], gamma).unwrap();
        let f = poly(seed, 1, degree);
        let h = poly(seed.wrapping_add(1), 1, degree);
        let lhs = c.hadamard(&f.add(&h).unwrap()).unwrap();
        let rhs = c.hadamard(&f).unwrap().add(&c.hadamard(&h).unwrap()).unwrap();
        for (a, b) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }
}

#[test]
fn sequential_path_is_bit_identical() {
    let g = QuadGrid::default();
    let f = poly(11, 2, 6);
    let specs = [
        SpaceSpec::triebel_f(1.0, 1.0, 0.5).unwrap(),
        SpaceSpec::hardy(f64::INFINITY).unwrap(),
        SpaceSpec::limit_f(2.0, 0.5).unwrap(),
    ];
    let run = || specs.map(|s| space_norm(&f, &s, &g).unwrap().value);
    let a = run();
    polydisc::par::force_sequential(true);
    let b = run();
    polydisc::par::force_sequential(false);
    assert_eq!(a.map(f64::to_bits), b.map(f64::to_bits));
}
