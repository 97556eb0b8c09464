//! Globally adaptive Gauss–Kronrod (7/15) integration.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-300,
            rel: 1e-12,
            max_intervals: 4000,
        }
    }
}

fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        kron += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// `∫_a^b f`, bisecting the interval with the largest error estimate until
/// the total estimate meets the tolerance. The integrand is never evaluated
/// at the endpoints.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: Tolerance) -> Result<Integral> {
    let (v, e) = kronrod(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value: v, error: e });
    let mut total = v;
    let mut err = e;
    let mut intervals = 1;
    while err > tol.abs.max(tol.rel * total.abs()) {
        if intervals >= tol.max_intervals {
            return Err(Error::Quadrature(format!(
                "adaptive integration on [{a}, {b}] stopped at {intervals} intervals with error {err:e}"
            )));
        }
        let seg = heap.pop().expect("nonempty heap");
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) {
            // interval at machine resolution; accept what we have
            heap.push(seg);
            break;
        }
        let (v1, e1) = kronrod(&f, seg.a, mid);
        let (v2, e2) = kronrod(&f, mid, seg.b);
        total += v1 + v2 - seg.value;
        err += e1 + e2 - seg.error;
        heap.push(Segment { a: seg.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: seg.b, value: v2, error: e2 });
        intervals += 1;
    }
    // re-sum in a fixed order to shed accumulated cancellation
    let mut segs = heap.into_vec();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = segs.iter().map(|s| s.value).sum();
    let error = segs.iter().map(|s| s.error).sum();
    Ok(Integral { value, error, intervals })
}

/// `∫_0^1 (1-x)^alpha h(x) dx` for `alpha > -1`, via `y = (1-x)^{alpha+1}`,
/// which removes the endpoint singularity of the weight.
pub fn integrate_endpoint_weighted(h: impl Fn(f64) -> f64, alpha: f64, tol: Tolerance) -> Result<Integral> {
    if !(alpha > -1.0) {
        return Err(Error::Parameter(format!("weight exponent must exceed -1, got {alpha}")));
    }
    let e = 1.0 / (alpha + 1.0);
    let mut out = integrate(|y| h(1.0 - y.powf(e)), 0.0, 1.0, tol)?;
    out.value *= e;
    out.error *= e;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::beta;
    use approx::assert_relative_eq;

    #[test]
    fn smooth_integrals() {
        let r = integrate(|x| x.exp(), 0.0, 1.0, Tolerance::default()).unwrap();
        assert_relative_eq!(r.value, std::f64::consts::E - 1.0, max_relative = 1e-13);
        let r = integrate(|x| 1.0 / (1.0 + 25.0 * x * x), -1.0, 1.0, Tolerance::default()).unwrap();
        assert_relative_eq!(r.value, 0.4 * 5f64.atan(), max_relative = 1e-12);
    }

    #[test]
    fn weighted_singular_endpoint() {
        for &(a, p) in &[(-0.5, 3.0), (-0.9, 0.5), (2.0, 1.0)] {
            let r = integrate_endpoint_weighted(|x| x.powf(p), a, Tolerance::default()).unwrap();
            assert_relative_eq!(r.value, beta(p + 1.0, a + 1.0), max_relative = 1e-10);
        }
    }

    #[test]
    fn reports_failure() {
        let tol = Tolerance {
            max_intervals: 3,
            ..Tolerance::default()
        };
        assert!(integrate(|x| (50.0 * x).sin().abs(), 0.0, 1.0, tol).is_err());
    }
}
