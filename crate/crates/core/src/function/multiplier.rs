use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::corpus::{lacunary_level, lacunary_phases};
use crate::function::kernel::{kernel_axis_coeffs, kernel_degree};
use crate::function::CoeffFn;

/// How the coefficients `c_k` of a multiplier are produced.
#[derive(Debug, Clone, PartialEq)]
pub enum MultiplierRule {
    /// Explicit table; indices beyond its degree bounds are zero.
    Explicit(CoeffFn),
    /// `c_k = ∏_j Γ(k_j+β+1)/(Γ(β+1)Γ(k_j+1)) w_j^{k_j}`, the coefficients of
    /// `(1 - w z)^{-(β+1)}`.
    Kernel { w: Vec<Complex64>, beta: f64 },
    /// Seeded unimodular coefficients on the lacunary set, zero elsewhere.
    Lacunary { seed: u64, levels: usize },
    Ones,
    Zero,
}

/// A coefficient multiplier sequence `c = {c_k}`, optionally scaled by a constant.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierSeq {
    dim: usize,
    rule: MultiplierRule,
    scale: Complex64,
}

impl MultiplierSeq {
    pub fn new(dim: usize, rule: MultiplierRule) -> Result<Self> {
        crate::function::coeff::check_dim(dim)?;
        match &rule {
            MultiplierRule::Explicit(table) => {
                if table.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: table.dim(),
                    });
                }
            }
            MultiplierRule::Kernel { w, beta } => {
                if w.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: w.len(),
                    });
                }
                if let Some((coord, wj)) = w.iter().enumerate().find(|(_, wj)| !(wj.norm() < 1.0)) {
                    return Err(Error::OutsidePolydisc {
                        coord,
                        modulus: wj.norm(),
                    });
                }
                if !(*beta > -1.0) {
                    return Err(Error::Parameter(format!(
                        "kernel multiplier requires beta > -1, got {beta}"
                    )));
                }
            }
            MultiplierRule::Lacunary { levels, .. } => {
                if *levels == 0 || *levels > 40 {
                    return Err(Error::Parameter(format!(
                        "lacunary level count must be in 1..=40, got {levels}"
                    )));
                }
            }
            MultiplierRule::Ones | MultiplierRule::Zero => {}
        }
        Ok(Self {
            dim,
            rule,
            scale: Complex64::new(1.0, 0.0),
        })
    }

    pub fn ones(dim: usize) -> Result<Self> {
        Self::new(dim, MultiplierRule::Ones)
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(dim, MultiplierRule::Zero)
    }

    pub fn kernel(w: Vec<Complex64>, beta: f64) -> Result<Self> {
        Self::new(w.len(), MultiplierRule::Kernel { w, beta })
    }

    pub fn explicit(table: CoeffFn) -> Result<Self> {
        Self::new(table.dim(), MultiplierRule::Explicit(table))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rule(&self) -> &MultiplierRule {
        &self.rule
    }

    /// `λ c`.
    pub fn scaled(&self, lambda: Complex64) -> Self {
        Self {
            scale: self.scale * lambda,
            ..self.clone()
        }
    }

    /// Per-axis factors when the sequence is separable.
    fn axis_factors(&self, degree: &[usize]) -> Option<Vec<Vec<Complex64>>> {
        let per_axis: Vec<Vec<Complex64>> = match &self.rule {
            MultiplierRule::Kernel { w, beta } => w
                .iter()
                .zip(degree)
                .map(|(wj, &n)| kernel_axis_coeffs(*wj, *beta, n))
                .collect(),
            MultiplierRule::Lacunary { seed, levels } => {
                let phases = lacunary_phases(*seed, self.dim, *levels);
                degree
                    .iter()
                    .enumerate()
                    .map(|(j, &n)| {
                        (0..=n)
                            .map(|k| match lacunary_level(k, *levels) {
                                Some(l) => phases[j][l],
                                None => Complex64::new(0.0, 0.0),
                            })
                            .collect()
                    })
                    .collect()
            }
            MultiplierRule::Ones => degree.iter().map(|&n| vec![Complex64::new(1.0, 0.0); n + 1]).collect(),
            MultiplierRule::Zero => degree.iter().map(|&n| vec![Complex64::new(0.0, 0.0); n + 1]).collect(),
            MultiplierRule::Explicit(_) => return None,
        };
        Some(per_axis)
    }

    /// The table `c_k` over the given degree bounds, i.e. the generating
    /// function `g(z) = Σ c_k z^k` truncated at `degree`.
    pub fn generating_function(&self, degree: &[usize]) -> Result<CoeffFn> {
        if degree.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: degree.len(),
            });
        }
        let g = match &self.rule {
            MultiplierRule::Explicit(table) => table.resized(degree)?,
            _ => {
                let ones = CoeffFn::from_dense(
                    degree,
                    vec![Complex64::new(1.0, 0.0); crate::function::coeff::table_len(degree)?],
                )?;
                ones.scale_separable(&self.axis_factors(degree).expect("separable rule"))
            }
        };
        Ok(if self.scale == Complex64::new(1.0, 0.0) {
            g
        } else {
            g.scale(self.scale)
        })
    }

    /// Generating function truncated so that evaluation at radii up to
    /// `radius` drops a relative tail below `tol`. Explicit and lacunary
    /// rules have finite support and are returned whole.
    pub fn generating_function_for_radius(&self, radius: f64, tol: f64) -> Result<CoeffFn> {
        let degree: Vec<usize> = match &self.rule {
            MultiplierRule::Explicit(table) => table.degree().to_vec(),
            MultiplierRule::Lacunary { levels, .. } => vec![1usize << (levels - 1); self.dim],
            MultiplierRule::Zero => vec![0; self.dim],
            MultiplierRule::Ones => {
                let n = kernel_degree(radius, 0.0, tol / self.dim as f64)?;
                vec![n; self.dim]
            }
            MultiplierRule::Kernel { w, beta } => w
                .iter()
                .map(|wj| kernel_degree(wj.norm() * radius, *beta, tol / self.dim as f64))
                .collect::<Result<_>>()?,
        };
        self.generating_function(&degree)
    }

    /// `M_c f`: `Σ c_k a_k z^k` on the degree bounds of `f`.
    pub fn hadamard(&self, f: &CoeffFn) -> Result<CoeffFn> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: f.dim(),
            });
        }
        let mut h = match self.axis_factors(f.degree()) {
            Some(factors) => f.scale_separable(&factors),
            None => {
                let MultiplierRule::Explicit(table) = &self.rule else {
                    unreachable!()
                };
                let c = table.resized(f.degree())?;
                let coeffs = f.coeffs().iter().zip(c.coeffs()).map(|(a, b)| a * b).collect();
                CoeffFn::from_dense(f.degree(), coeffs)?
            }
        };
        if self.scale != Complex64::new(1.0, 0.0) {
            h = h.scale(self.scale);
        }
        Ok(h)
    }
}

/// Free-function form of [`MultiplierSeq::hadamard`].
pub fn hadamard(c: &MultiplierSeq, f: &CoeffFn) -> Result<CoeffFn> {
    c.hadamard(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{random_poly, CoefficientLaw, MultiIndex};

    #[test]
    fn ones_and_zero() {
        let f = random_poly(2, 2, &[3, 4], CoefficientLaw::UnitDisk).unwrap();
        assert_eq!(MultiplierSeq::ones(2).unwrap().hadamard(&f).unwrap(), f);
        assert!(MultiplierSeq::zero(2).unwrap().hadamard(&f).unwrap().is_zero());
    }

    #[test]
    fn delta_projects_onto_constant() {
        let f = random_poly(5, 1, &[6], CoefficientLaw::Gaussian).unwrap();
        let delta = CoeffFn::from_sparse(&[(MultiIndex(vec![0]), Complex64::new(1.0, 0.0))], 1, &[0]).unwrap();
        let h = MultiplierSeq::explicit(delta).unwrap().hadamard(&f).unwrap();
        for (k, a) in h.iter() {
            if k.0[0] == 0 {
                assert_eq!(a, f.coeffs()[0]);
            } else {
                assert_eq!(a, Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let f = random_poly(5, 1, &[6], CoefficientLaw::Gaussian).unwrap();
        assert!(matches!(
            MultiplierSeq::ones(2).unwrap().hadamard(&f),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_rule_matches_kernel_function() {
        let w = vec![Complex64::new(0.3, 0.4)];
        let c = MultiplierSeq::kernel(w.clone(), 0.5).unwrap();
        let g = c.generating_function(&[20]).unwrap();
        let k = crate::function::bergman_kernel(
            &w,
            0.5,
            crate::function::Truncation::Fixed {
                degree: 20,
                radius: 0.5,
                tol: 1e-6,
            },
        )
        .unwrap();
        for (a, b) in g.coeffs().iter().zip(k.coeffs()) {
            assert!((a - b).norm() <= 1e-14 * b.norm().max(1e-300));
        }
    }

    #[test]
    fn scaling_is_carried() {
        let f = random_poly(1, 1, &[4], CoefficientLaw::UnitDisk).unwrap();
        let lam = Complex64::new(0.0, 2.0);
        let h = MultiplierSeq::ones(1).unwrap().scaled(lam).hadamard(&f).unwrap();
        assert_eq!(h, f.scale(lam));
    }
}
