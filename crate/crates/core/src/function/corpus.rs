//! Seeded test corpora: random polynomials and lacunary series.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::coeff::{check_dim, table_len};
use crate::function::CoeffFn;

/// Distribution of the random coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientLaw {
    /// Uniform on the closed unit disk.
    #[default]
    UnitDisk,
    /// Standard complex Gaussian (independent N(0, 1/2) real and imaginary parts).
    Gaussian,
}

fn unit_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let x: f64 = rng.random_range(-1.0..=1.0);
        let y: f64 = rng.random_range(-1.0..=1.0);
        if x * x + y * y <= 1.0 {
            return Complex64::new(x, y);
        }
    }
}

/// Dense random polynomial with i.i.d. coefficients drawn from `law`.
pub fn random_poly(seed: u64, dim: usize, degree: &[usize], law: CoefficientLaw) -> Result<CoeffFn> {
    check_dim(dim)?;
    if degree.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: degree.len(),
        });
    }
    let len = table_len(degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..len)
        .map(|_| match law {
            CoefficientLaw::UnitDisk => unit_disk(&mut rng),
            CoefficientLaw::Gaussian => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let x: f64 = rng.sample(StandardNormal);
                let y: f64 = rng.sample(StandardNormal);
                Complex64::new(s * x, s * y)
            }
        })
        .collect();
    CoeffFn::from_dense(degree, coeffs)
}

/// Unimodular phases `phase[j][l]` for axis `j` and level `l`.
pub(crate) fn lacunary_phases(seed: u64, dim: usize, levels: usize) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..dim)
        .map(|_| {
            (0..levels)
                .map(|_| {
                    let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                    Complex64::from_polar(1.0, t)
                })
                .collect()
        })
        .collect()
}

/// Level of `k` in the lacunary set `{1, 2, 4, …, 2^{levels-1}}`, if any.
pub(crate) fn lacunary_level(k: usize, levels: usize) -> Option<usize> {
    if k.is_power_of_two() {
        let l = k.trailing_zeros() as usize;
        (l < levels).then_some(l)
    } else {
        None
    }
}

/// Series supported on multi-indices whose every entry is a power of two
/// `2^l`, `l < levels`, with seeded unimodular coefficients.
pub fn lacunary_series(seed: u64, dim: usize, levels: usize, degree: &[usize]) -> Result<CoeffFn> {
    check_dim(dim)?;
    if degree.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: degree.len(),
        });
    }
    if levels == 0 {
        return Err(Error::Parameter("lacunary series needs at least one level".into()));
    }
    let top = 1usize << (levels - 1);
    if let Some((axis, &n)) = degree.iter().enumerate().find(|(_, &n)| n < top) {
        return Err(Error::Parameter(format!(
            "lacunary level {} needs degree ≥ {top} on axis {axis}, got {n}",
            levels - 1
        )));
    }
    let phases = lacunary_phases(seed, dim, levels);
    let mut f = CoeffFn::zeros(degree)?;
    let coeffs: Vec<Complex64> = (0..f.len())
        .map(|pos| {
            let k = f.index_of(pos);
            let mut c = Complex64::new(1.0, 0.0);
            for (j, &kj) in k.0.iter().enumerate() {
                match lacunary_level(kj, levels) {
                    Some(l) => c *= phases[j][l],
                    None => return Complex64::new(0.0, 0.0),
                }
            }
            c
        })
        .collect();
    f = CoeffFn::from_dense(degree, coeffs)?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_tensor() {
        let a = random_poly(7, 2, &[5, 3], CoefficientLaw::Gaussian).unwrap();
        let b = random_poly(7, 2, &[5, 3], CoefficientLaw::Gaussian).unwrap();
        assert_eq!(a, b);
        let c = random_poly(8, 2, &[5, 3], CoefficientLaw::Gaussian).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn unit_disk_law_support() {
        let f = random_poly(1, 1, &[500], CoefficientLaw::UnitDisk).unwrap();
        assert!(f.coeffs().iter().all(|a| a.norm() <= 1.0));
    }

    #[test]
    fn lacunary_support() {
        let f = lacunary_series(3, 1, 4, &[12]).unwrap();
        for (k, a) in f.iter() {
            let nonzero = a.norm() > 0.0;
            assert_eq!(nonzero, [1, 2, 4, 8].contains(&k.0[0]), "k = {:?}", k);
        }
        assert!(lacunary_series(3, 1, 5, &[12]).is_err());
    }

    #[test]
    fn lacunary_is_deterministic() {
        assert_eq!(
            lacunary_series(11, 2, 3, &[4, 4]).unwrap(),
            lacunary_series(11, 2, 3, &[4, 4]).unwrap()
        );
    }
}
