//! Evaluation on tensor grids of roots of unity.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::function::CoeffFn;

type PlanCache = Mutex<HashMap<usize, Arc<dyn Fft<f64>>>>;

fn inverse_plan(len: usize) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<PlanCache> = OnceLock::new();
    let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = plans.lock().expect("fft plan cache poisoned");
    guard
        .entry(len)
        .or_insert_with(|| FftPlanner::new().plan_fft_inverse(len))
        .clone()
}

/// Values `f(r ξ)` on the grid `ξ_j = e^{2πi m_j / M_j}`, row-major with the
/// last variable fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusValues {
    pub sizes: Vec<usize>,
    pub values: Vec<Complex64>,
}

impl TorusValues {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Linear position of the grid point `conj(ξ)` for the point at `pos`.
    pub fn conjugate_position(&self, mut pos: usize) -> usize {
        let mut out = 0;
        let mut stride = 1;
        for &m in self.sizes.iter().rev() {
            let i = pos % m;
            pos /= m;
            out += ((m - i) % m) * stride;
            stride *= m;
        }
        out
    }

    /// Grid angles (in units of full turns) of the point at `pos`.
    pub fn angles(&self, mut pos: usize) -> Vec<f64> {
        let mut a = vec![0.0; self.sizes.len()];
        for (j, &m) in self.sizes.iter().enumerate().rev() {
            a[j] = (pos % m) as f64 / m as f64;
            pos /= m;
        }
        a
    }

    /// Normalized mean of `|f|^p` over the grid, summed in index order.
    pub fn mean_abs_pow(&self, p: f64) -> f64 {
        let n = self.values.len() as f64;
        if p == 2.0 {
            self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / n
        } else if p == 1.0 {
            self.values.iter().map(|v| v.norm()).sum::<f64>() / n
        } else {
            self.values.iter().map(|v| v.norm().powf(p)).sum::<f64>() / n
        }
    }

    pub fn max_abs(&self) -> (usize, f64) {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.norm()))
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc })
    }
}

/// Smallest grid size accepted for degree `n` (the aliasing guard).
pub fn min_grid_size(n: usize) -> usize {
    2 * n + 1
}

/// Evaluates `f(r ξ)` at every point of the tensor grid of `m_j`-th roots of
/// unity using one inverse FFT per axis.
pub fn evaluate_torus_grid(f: &CoeffFn, r: &[f64], m: &[usize]) -> Result<TorusValues> {
    let dim = f.dim();
    if r.len() != dim || m.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: if r.len() != dim { r.len() } else { m.len() },
        });
    }
    for (axis, (&mj, &nj)) in m.iter().zip(f.degree()).enumerate() {
        if mj < min_grid_size(nj) {
            return Err(Error::Aliasing {
                axis,
                size: mj,
                degree: nj,
            });
        }
    }
    for (coord, &rj) in r.iter().enumerate() {
        if !(0.0..1.0).contains(&rj) {
            return Err(Error::OutsidePolydisc { coord, modulus: rj });
        }
    }
    let total: usize = m.iter().product();
    if total > crate::MAX_GRID_POINTS {
        return Err(Error::TooLarge(total));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); total];

    // scatter a_k r^k into the zero-padded grid
    let powers = f.axis_powers(r);
    let mut grid_strides = vec![1usize; dim];
    for j in (0..dim.saturating_sub(1)).rev() {
        grid_strides[j] = grid_strides[j + 1] * m[j + 1];
    }
    for (pos, a) in f.coeffs().iter().enumerate() {
        let mut rem = pos;
        let mut target = 0;
        let mut w = 1.0;
        for j in (0..dim).rev() {
            let n = f.degree()[j] + 1;
            let kj = rem % n;
            rem /= n;
            target += kj * grid_strides[j];
            w *= powers[j][kj];
        }
        buf[target] = a * w;
    }

    for axis in 0..dim {
        transform_axis(&mut buf, m, axis);
    }
    Ok(TorusValues {
        sizes: m.to_vec(),
        values: buf,
    })
}

fn transform_axis(buf: &mut [Complex64], sizes: &[usize], axis: usize) {
    let len = sizes[axis];
    if len == 1 {
        return;
    }
    let fft = inverse_plan(len);
    let inner: usize = sizes[axis + 1..].iter().product();
    if inner == 1 {
        fft.process(buf);
        return;
    }
    let outer: usize = sizes[..axis].iter().product();
    let mut line = vec![Complex64::new(0.0, 0.0); len];
    for o in 0..outer {
        let base = o * len * inner;
        for i in 0..inner {
            for (t, slot) in line.iter_mut().enumerate() {
                *slot = buf[base + t * inner + i];
            }
            fft.process(&mut line);
            for (t, v) in line.iter().enumerate() {
                buf[base + t * inner + i] = *v;
            }
        }
    }
}
