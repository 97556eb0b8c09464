use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::derivative_factors;
use crate::{MAX_DIM, MAX_ENTRIES};

/// A multi-index `k ∈ Z_+^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        check_dim(entries.len())?;
        Ok(Self(entries))
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl From<&[usize]> for MultiIndex {
    fn from(k: &[usize]) -> Self {
        Self(k.to_vec())
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::Dimension(dim))
    } else {
        Ok(())
    }
}

pub(crate) fn table_len(degree: &[usize]) -> Result<usize> {
    let mut len: usize = 1;
    for &n in degree {
        len = len
            .checked_mul(n + 1)
            .filter(|&l| l <= MAX_ENTRIES)
            .ok_or(Error::TooLarge(usize::MAX))?;
    }
    Ok(len)
}

/// Truncated power series `Σ_{k ≤ N} a_k z^k` on the polydisc.
///
/// Coefficients are stored densely in row-major order: the last variable
/// varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffFn {
    degree: Vec<usize>,
    coeffs: Vec<Complex64>,
}

impl CoeffFn {
    pub fn zeros(degree: &[usize]) -> Result<Self> {
        check_dim(degree.len())?;
        let len = table_len(degree)?;
        Ok(Self {
            degree: degree.to_vec(),
            coeffs: vec![Complex64::new(0.0, 0.0); len],
        })
    }

    /// Builds from a dense row-major table.
    pub fn from_dense(degree: &[usize], coeffs: Vec<Complex64>) -> Result<Self> {
        check_dim(degree.len())?;
        let len = table_len(degree)?;
        if coeffs.len() != len {
            return Err(Error::Parameter(format!(
                "dense table has {} entries, degree bounds {:?} need {}",
                coeffs.len(),
                degree,
                len
            )));
        }
        let f = Self {
            degree: degree.to_vec(),
            coeffs,
        };
        if let Some(pos) = f.coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(f.index_of(pos).0));
        }
        Ok(f)
    }

    /// Dense tensor with the listed entries set and everything else zero.
    /// Repeated indices overwrite earlier ones.
    pub fn from_sparse(
        entries: &[(MultiIndex, Complex64)],
        dim: usize,
        degree: &[usize],
    ) -> Result<Self> {
        check_dim(dim)?;
        if degree.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: degree.len(),
            });
        }
        let mut f = Self::zeros(degree)?;
        for (k, a) in entries {
            if k.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: k.dim(),
                });
            }
            if k.0.iter().zip(degree).any(|(ki, ni)| ki > ni) {
                return Err(Error::IndexOutOfBounds {
                    index: k.0.clone(),
                    degree: degree.to_vec(),
                });
            }
            if !a.is_finite() {
                return Err(Error::NonFinite(k.0.clone()));
            }
            let pos = f.offset(&k.0);
            f.coeffs[pos] = *a;
        }
        Ok(f)
    }

    pub fn constant(dim: usize, value: Complex64) -> Result<Self> {
        Self::from_sparse(&[(MultiIndex::zero(dim), value)], dim, &vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.degree.len()
    }

    pub fn degree(&self) -> &[usize] {
        &self.degree
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub(crate) fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.dim()];
        for j in (0..self.dim().saturating_sub(1)).rev() {
            s[j] = s[j + 1] * (self.degree[j + 1] + 1);
        }
        s
    }

    fn offset(&self, k: &[usize]) -> usize {
        let strides = self.strides();
        k.iter().zip(&strides).map(|(ki, si)| ki * si).sum()
    }

    /// Multi-index of a linear position in the table.
    pub fn index_of(&self, mut pos: usize) -> MultiIndex {
        let mut k = vec![0; self.dim()];
        for j in (0..self.dim()).rev() {
            let n = self.degree[j] + 1;
            k[j] = pos % n;
            pos /= n;
        }
        MultiIndex(k)
    }

    pub fn coeff(&self, k: &MultiIndex) -> Complex64 {
        if k.dim() != self.dim() || k.0.iter().zip(&self.degree).any(|(a, b)| a > b) {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[self.offset(&k.0)]
    }

    /// Iterates `(multi-index, coefficient)` over the whole table.
    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(pos, &a)| (self.index_of(pos), a))
    }

    /// `Σ |a_k|²`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ |a_k|² r^{2k}`.
    pub fn weighted_l2_sq(&self, r: &[f64]) -> f64 {
        let powers = self.axis_powers(r);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(pos, c)| {
                let w = self.radial_weight(pos, &powers);
                c.norm_sqr() * w * w
            })
            .sum()
    }

    /// Per-axis tables `r_j^k`, `k = 0..=N_j`.
    pub(crate) fn axis_powers(&self, r: &[f64]) -> Vec<Vec<f64>> {
        self.degree
            .iter()
            .zip(r)
            .map(|(&n, &rj)| (0..=n).map(|k| rj.powi(k as i32)).collect())
            .collect()
    }

    pub(crate) fn radial_weight(&self, mut pos: usize, powers: &[Vec<f64>]) -> f64 {
        let mut w = 1.0;
        for j in (0..self.dim()).rev() {
            let n = self.degree[j] + 1;
            w *= powers[j][pos % n];
            pos /= n;
        }
        w
    }

    /// Applies a separable diagonal operator `a_k ↦ a_k ∏_j d_j[k_j]`.
    pub(crate) fn scale_separable(&self, factors: &[Vec<Complex64>]) -> CoeffFn {
        let dim = self.dim();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mut pos, &a)| {
                let mut c = a;
                for j in (0..dim).rev() {
                    let n = self.degree[j] + 1;
                    c *= factors[j][pos % n];
                    pos /= n;
                }
                c
            })
            .collect();
        CoeffFn {
            degree: self.degree.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, lambda: Complex64) -> CoeffFn {
        CoeffFn {
            degree: self.degree.clone(),
            coeffs: self.coeffs.iter().map(|&a| a * lambda).collect(),
        }
    }

    /// Coefficient-wise sum; the result carries the larger degree on each axis.
    pub fn add(&self, other: &CoeffFn) -> Result<CoeffFn> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let degree: Vec<usize> = self
            .degree
            .iter()
            .zip(&other.degree)
            .map(|(a, b)| *a.max(b))
            .collect();
        let mut out = self.resized(&degree)?;
        for (k, b) in other.iter() {
            let pos = out.offset(&k.0);
            out.coeffs[pos] += b;
        }
        Ok(out)
    }

    /// Same function on different degree bounds: entries beyond the new
    /// bounds are dropped, new entries are zero.
    pub fn resized(&self, degree: &[usize]) -> Result<CoeffFn> {
        if degree.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: degree.len(),
            });
        }
        let mut out = CoeffFn::zeros(degree)?;
        for (k, a) in self.iter() {
            if k.0.iter().zip(degree).all(|(ki, ni)| ki <= ni) {
                let pos = out.offset(&k.0);
                out.coeffs[pos] = a;
            }
        }
        Ok(out)
    }

    /// Evaluates `Σ a_k z^k` by nested per-variable Horner; the innermost
    /// loop runs over the last (fastest-varying) variable.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: z.len(),
            });
        }
        for (coord, zj) in z.iter().enumerate() {
            let modulus = zj.norm();
            if !(modulus < 1.0) {
                return Err(Error::OutsidePolydisc { coord, modulus });
            }
        }
        Ok(self.horner(z))
    }

    /// Horner evaluation without the polydisc check. Used on the closed
    /// polydisc by the sup refinement, where the series is a polynomial.
    pub(crate) fn horner(&self, z: &[Complex64]) -> Complex64 {
        horner_rec(&self.coeffs, &self.degree, z)
    }

    /// `D^β f`: multiplies `a_k` by `∏_j Γ(k_j+β+1)/(Γ(β+1)Γ(k_j+1))`.
    pub fn frac_derivative(&self, beta: f64) -> Result<CoeffFn> {
        if !(beta > -1.0) || !beta.is_finite() {
            return Err(Error::Parameter(format!(
                "fractional derivative order must satisfy beta > -1, got {beta}"
            )));
        }
        if beta == 0.0 {
            return Ok(self.clone());
        }
        let factors: Vec<Vec<Complex64>> = self
            .degree
            .iter()
            .map(|&n| {
                derivative_factors(n, beta)
                    .into_iter()
                    .map(|x| Complex64::new(x, 0.0))
                    .collect()
            })
            .collect();
        Ok(self.scale_separable(&factors))
    }
}

fn horner_rec(coeffs: &[Complex64], degree: &[usize], z: &[Complex64]) -> Complex64 {
    let n = degree[0] + 1;
    if degree.len() == 1 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in coeffs.iter().rev() {
            acc = acc * z[0] + a;
        }
        return acc;
    }
    let block = coeffs.len() / n;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in (0..n).rev() {
        let inner = horner_rec(&coeffs[i * block..(i + 1) * block], &degree[1..], &z[1..]);
        acc = acc * z[0] + inner;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_one() {
        let f = CoeffFn::from_sparse(&[(MultiIndex(vec![0]), c(1.0, 0.0))], 1, &[4]).unwrap();
        assert_eq!(f.len(), 5);
        assert_eq!(f.evaluate(&[c(0.5, 0.0)]).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn empty_input_is_zero() {
        let f = CoeffFn::from_sparse(&[], 2, &[2, 2]).unwrap();
        assert_eq!(f.len(), 9);
        assert!(f.is_zero());
    }

    #[test]
    fn direct_placement() {
        let f = CoeffFn::from_sparse(
            &[
                (MultiIndex(vec![1, 0]), c(2.0, 1.0)),
                (MultiIndex(vec![0, 1]), c(-1.0, 0.0)),
            ],
            2,
            &[1, 1],
        )
        .unwrap();
        let z = [c(0.3, -0.2), c(0.1, 0.4)];
        let expect = c(2.0, 1.0) * z[0] - z[1];
        let got = f.evaluate(&z).unwrap();
        assert_abs_diff_eq!((got - expect).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn out_of_bounds_index_is_named() {
        let err = CoeffFn::from_sparse(&[(MultiIndex(vec![5]), c(1.0, 0.0))], 1, &[4]).unwrap_err();
        match err {
            Error::IndexOutOfBounds { index, .. } => assert_eq!(index, vec![5]),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(matches!(
            CoeffFn::from_sparse(&[(MultiIndex(vec![0, 0]), c(1.0, 0.0))], 1, &[4]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            CoeffFn::from_sparse(&[], 2, &[4]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(CoeffFn::zeros(&[1, 1, 1, 1]), Err(Error::Dimension(4))));
    }

    #[test]
    fn monomial_product() {
        let f = CoeffFn::from_sparse(&[(MultiIndex(vec![1, 1]), c(1.0, 0.0))], 2, &[1, 1]).unwrap();
        let v = f.evaluate(&[c(0.5, 0.0), c(0.2, 0.0)]).unwrap();
        assert_abs_diff_eq!(v.re, 0.1, epsilon = 1e-16);
        assert_abs_diff_eq!(v.im, 0.0);
    }

    #[test]
    fn truncated_geometric_series() {
        // 1/(1-0.5z) truncated at 64; the dropped tail at z=0.5 is 0.25^65/(1-0.25).
        let entries: Vec<_> = (0..=64)
            .map(|k| (MultiIndex(vec![k]), c(0.5f64.powi(k as i32), 0.0)))
            .collect();
        let f = CoeffFn::from_sparse(&entries, 1, &[64]).unwrap();
        let v = f.evaluate(&[c(0.5, 0.0)]).unwrap();
        assert!((v.re - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn boundary_points_rejected() {
        let f = CoeffFn::zeros(&[2, 2]).unwrap();
        assert!(matches!(
            f.evaluate(&[c(0.0, 0.0), c(0.6, 0.8)]),
            Err(Error::OutsidePolydisc { coord: 1, .. })
        ));
    }

    #[test]
    fn frac_derivative_rules() {
        let f = CoeffFn::from_sparse(
            &[(MultiIndex(vec![3]), c(1.0, 0.0)), (MultiIndex(vec![0]), c(2.0, 0.0))],
            1,
            &[3],
        )
        .unwrap();
        assert_eq!(f.frac_derivative(0.0).unwrap(), f);
        let d = f.frac_derivative(1.0).unwrap();
        assert_abs_diff_eq!(d.coeff(&MultiIndex(vec![3])).re, 4.0, epsilon = 1e-12);
        assert_eq!(d.coeff(&MultiIndex(vec![0])), c(2.0, 0.0));
        assert!(f.frac_derivative(-1.0).is_err());

        let k = CoeffFn::constant(2, c(3.0, -1.0)).unwrap();
        assert_eq!(k.frac_derivative(0.5).unwrap(), k);
    }

    #[test]
    fn index_roundtrip() {
        let f = CoeffFn::zeros(&[2, 3, 1]).unwrap();
        for pos in 0..f.len() {
            assert_eq!(f.offset(&f.index_of(pos).0), pos);
        }
    }
}
